//! A Pure Type System kernel with two presentations of typing.
//!
//! * [`pts`]: the traditional contextful judgments `Γ ⊢ M : A`.
//! * [`ginf`]: context-free judgments `M : A`, where every free variable
//!   carries its type as a tag (`x^A`) and binder rules carry a freshness
//!   side condition instead of a context discipline.
//!
//! [`correspond`] converts derivable judgments between the two,
//! [`kernel`] is an LCF-style facade over the context-free rules, and
//! [`oracle`] is an independent enumerator and derivation search used to
//! cross-check everything else at small sizes.

pub mod correspond;
pub mod error;
pub mod frontend;
pub mod ginf;
pub mod kernel;
pub mod oracle;
pub mod pts;
pub mod spec;
pub mod syntax;

pub use error::TypeError;
pub use spec::PtsSpec;
pub use syntax::{FreeVar, Name, SortName, Term, VarSet, DEFAULT_FUEL};
