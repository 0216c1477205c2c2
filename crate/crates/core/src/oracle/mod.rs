//! An independent source of truth for small terms.
//!
//! Exhaustive enumeration plus declarative derivation search in both
//! presentations, with its own substitution and normalizer. It is slow and
//! naive on purpose; its job is to disagree with the checkers when they
//! are wrong.

mod derive;
mod enumerate;
mod naive;
pub mod random;
mod report;

use thiserror::Error;

pub use derive::{derive_ginf, derive_pts, GinfSearch, PtsSearch};
pub use enumerate::{enumerate_terms, EnumBudget};
pub use report::{annotated_contexts, context_pool, correspondence_report, CorrespondenceReport, Violation, ViolationKind};

/// The search gave up; neither "derivable" nor "not derivable".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BudgetExhausted {
    #[error("normalization ran out of fuel")]
    Fuel,
    #[error("derivation search too deep")]
    Depth,
}
