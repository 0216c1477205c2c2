//! Pseudo-terms, binding, substitution, reduction, and the free-variable
//! analyses.

mod names;
mod reduce;
mod subst;
mod term;
mod vars;

pub use names::{is_name_char, is_sort_char, Name, NameError, SortName, UNIT_SORT};
pub use reduce::{beta_eq, beta_step, normalize, whnf, FuelExhausted, DEFAULT_FUEL};
pub use subst::{close, open, subst_free};
pub use term::{FreeVar, Term};
pub use vars::{fresh_var, fv, hfv, hfv2, hfvt, tags, VarSet};

