use thiserror::Error;

use crate::syntax::{FreeVar, FuelExhausted, SortName, Term};

/// Reasons a typing question was answered "no" (or "unknown", for
/// [`TypeError::FuelExhausted`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("the type system is not functional; syntax-directed checking needs functional axioms and rules")]
    NonFunctionalSpec,
    #[error("sort {0} is not declared")]
    UnknownSort(SortName),
    #[error("term has dangling bound variables: {0}")]
    NotLocallyClosed(Term),
    #[error("variable {0} is not declared in the context")]
    UnboundVariable(FreeVar),
    #[error("variable {0} is declared twice")]
    DuplicateDeclaration(FreeVar),
    #[error("declaration {index} of the context is ill-formed: {reason}")]
    IllFormedContext { index: usize, reason: Box<TypeError> },
    #[error("no axiom for sort {0}")]
    NoAxiom(SortName),
    #[error("sort {0} has more than one axiom")]
    AmbiguousAxiom(SortName),
    #[error("no rule ({0}, {1}, _)")]
    NoRule(SortName, SortName),
    #[error("{term} has type {ty}, which is not a product")]
    NotAFunction { term: Term, ty: Term },
    #[error("argument has type {found} but the function expects {expected}")]
    DomainMismatch { expected: Term, found: Term },
    #[error("binder domain {domain} has type {ty}, which is not a sort")]
    IllegalDomain { domain: Term, ty: Term },
    #[error("binder codomain {codomain} has type {ty}, which is not a sort")]
    IllegalCodomain { codomain: Term, ty: Term },
    #[error("tag of {var} has type {ty}, which is not a sort")]
    TagNotASort { var: FreeVar, ty: Term },
    #[error("side condition violated: eigenvariable {eigen} would remain free after binding")]
    SideConditionViolated { eigen: FreeVar },
    #[error("{term} has type {ty}, which is not a sort")]
    NotASort { term: Term, ty: Term },
    #[error("eigenvariable tag {found} does not match binder domain {expected}")]
    TagMismatch { expected: Term, found: Term },
    #[error("product {found} does not match the abstraction's type {expected}")]
    PiMismatch { expected: Term, found: Term },
    #[error("{from} is not convertible to {to}")]
    NotConvertible { from: Term, to: Term },
    #[error("theorems were checked under different specs")]
    SpecMismatch,
    #[error(transparent)]
    FuelExhausted(#[from] FuelExhausted),
}

impl TypeError {
    /// Undecided (as opposed to rejected).
    pub fn is_fuel_exhausted(&self) -> bool {
        self.fuel().is_some()
    }

    pub fn fuel(&self) -> Option<FuelExhausted> {
        match self {
            TypeError::FuelExhausted(f) => Some(*f),
            TypeError::IllFormedContext { reason, .. } => reason.fuel(),
            _ => None,
        }
    }
}

/// Failures of the conversions between the two presentations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondError {
    #[error("free variable {0} is not declared in the context")]
    UndeclaredFreeVariable(FreeVar),
    #[error("judgment is not derivable: {0}")]
    NotDerivable(String),
    #[error("tag-occurrence relation is cyclic")]
    CyclicTags,
    #[error(transparent)]
    FuelExhausted(#[from] FuelExhausted),
}

impl CorrespondError {
    /// Maps a checker failure onto the conversion error space.
    pub(crate) fn from_check(err: TypeError) -> Self {
        match err.fuel() {
            Some(f) => CorrespondError::FuelExhausted(f),
            None => CorrespondError::NotDerivable(err.to_string()),
        }
    }
}
