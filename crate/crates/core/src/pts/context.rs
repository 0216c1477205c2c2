use std::fmt;

use crate::error::TypeError;
use crate::syntax::{FreeVar, Term, VarSet};

/// One declaration `x : A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decl {
    pub var: FreeVar,
    pub ty: Term,
}

impl Decl {
    pub fn new(var: FreeVar, ty: Term) -> Self {
        Decl { var, ty }
    }

    /// `x^A : A`
    pub fn annotated(var: FreeVar) -> Self {
        let ty = var.tag().clone();
        Decl { var, ty }
    }

    pub fn is_annotated(&self) -> bool {
        *self.var.tag() == self.ty
    }
}

/// An ordered pseudo-context with pairwise distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Context {
    decls: Vec<Decl>,
}

impl Context {
    pub fn empty() -> Self {
        Context::default()
    }

    pub fn new(decls: impl IntoIterator<Item = Decl>) -> Result<Self, TypeError> {
        let mut ctx = Context::empty();
        for d in decls {
            ctx.push(d)?;
        }
        Ok(ctx)
    }

    /// Appends a declaration; the variable must be new and the type locally
    /// closed.
    pub fn push(&mut self, decl: Decl) -> Result<(), TypeError> {
        if self.contains(&decl.var) {
            return Err(TypeError::DuplicateDeclaration(decl.var));
        }
        if !decl.ty.is_locally_closed() {
            return Err(TypeError::NotLocallyClosed(decl.ty));
        }
        self.decls.push(decl);
        Ok(())
    }

    pub(crate) fn extended(&self, var: FreeVar, ty: Term) -> Context {
        debug_assert!(!self.contains(&var));
        let mut decls = Vec::with_capacity(self.decls.len() + 1);
        decls.extend_from_slice(&self.decls);
        decls.push(Decl { var, ty });
        Context { decls }
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Decl> {
        self.decls.iter()
    }

    pub fn contains(&self, var: &FreeVar) -> bool {
        self.decls.iter().any(|d| &d.var == var)
    }

    /// `type_Γ(x)`
    pub fn lookup(&self, var: &FreeVar) -> Option<&Term> {
        self.decls.iter().find(|d| &d.var == var).map(|d| &d.ty)
    }

    pub fn dom(&self) -> VarSet {
        self.decls.iter().map(|d| d.var.clone()).collect()
    }

    /// The first `len` declarations.
    pub fn prefix(&self, len: usize) -> Context {
        Context { decls: self.decls[..len].to_vec() }
    }

    /// This context with the declaration of `var` removed.
    pub fn without(&self, var: &FreeVar) -> Context {
        Context { decls: self.decls.iter().filter(|d| &d.var != var).cloned().collect() }
    }

    /// Keeps only the declarations of variables in `keep`, in order.
    pub fn restrict(&self, keep: &VarSet) -> Context {
        Context { decls: self.decls.iter().filter(|d| keep.contains(&d.var)).cloned().collect() }
    }

    /// Every declaration has the form `x^B : B`.
    pub fn is_type_annotated(&self) -> bool {
        self.decls.iter().all(Decl::is_annotated)
    }
}

impl FromIterator<Decl> for Context {
    /// Panics on duplicate variables.
    fn from_iter<I: IntoIterator<Item = Decl>>(iter: I) -> Self {
        Context::new(iter).expect("duplicate declaration")
    }
}

impl<'a> IntoIterator for &'a Context {
    type Item = &'a Decl;
    type IntoIter = std::slice::Iter<'a, Decl>;

    fn into_iter(self) -> Self::IntoIter {
        self.decls.iter()
    }
}

/// `Γ ||| Δ`: shared variables have structurally identical types.
pub fn compatible(g: &Context, d: &Context) -> bool {
    g.iter().all(|decl| d.lookup(&decl.var).is_none_or(|ty| *ty == decl.ty))
}

/// `Γ ⋉ Δ = Γ, (Δ \ Γ)`.
pub fn merge(g: &Context, d: &Context) -> Context {
    let mut decls = g.decls.clone();
    decls.extend(d.iter().filter(|decl| !g.contains(&decl.var)).cloned());
    Context { decls }
}

/// `Γ ⊢ M : A`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContextfulJudgment {
    pub ctx: Context,
    pub subject: Term,
    pub ty: Term,
}

impl ContextfulJudgment {
    pub fn new(ctx: Context, subject: Term, ty: Term) -> Self {
        ContextfulJudgment { ctx, subject, ty }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", Term::Free(self.var.clone()), self.ty)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.decls.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ContextfulJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.ctx.is_empty() {
            write!(f, "{} ", self.ctx)?;
        }
        write!(f, "|- {} : {}", self.subject, self.ty)
    }
}
