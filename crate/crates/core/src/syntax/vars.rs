//! Free-variable analyses.

use std::collections::BTreeSet;

use super::names::Name;
use super::term::{FreeVar, Term};

pub type VarSet = BTreeSet<FreeVar>;

/// Free variables occurring outside all tags.
pub fn fv(term: &Term) -> VarSet {
    let mut out = VarSet::new();
    collect_fv(term, &mut out);
    out
}

fn collect_fv(term: &Term, out: &mut VarSet) {
    match term {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => {
            out.insert(v.clone());
        }
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            collect_fv(a, out);
            collect_fv(b, out);
        }
    }
}

/// Hereditarily free variables: every free variable together with,
/// recursively, the hereditarily free variables of its tag.
pub fn hfv(term: &Term) -> VarSet {
    let mut out = VarSet::new();
    collect_hfv(term, &mut out);
    out
}

/// `hfv(a) ∪ hfv(b)`.
pub fn hfv2(a: &Term, b: &Term) -> VarSet {
    let mut out = VarSet::new();
    collect_hfv(a, &mut out);
    collect_hfv(b, &mut out);
    out
}

pub(crate) fn collect_hfv(term: &Term, out: &mut VarSet) {
    match term {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => {
            // A variable already present had its tag collected with it.
            if out.insert(v.clone()) {
                collect_hfv(v.tag(), out);
            }
        }
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            collect_hfv(a, out);
            collect_hfv(b, out);
        }
    }
}

/// Hereditarily free variables of the tags of the free variables.
pub fn hfvt(term: &Term) -> VarSet {
    let mut out = VarSet::new();
    collect_hfvt(term, &mut out);
    out
}

fn collect_hfvt(term: &Term, out: &mut VarSet) {
    match term {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => collect_hfv(v.tag(), out),
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            collect_hfvt(a, out);
            collect_hfvt(b, out);
        }
    }
}

/// Every tag term occurring anywhere in `term`, including tags of tags.
pub fn tags(term: &Term) -> BTreeSet<Term> {
    hfv(term).into_iter().map(|v| v.tag().clone()).collect()
}

/// The first `prefix{i}` (i = 0, 1, ...) which, tagged with `tag`, is not
/// in `avoid`.
pub fn fresh_var(prefix: &str, tag: &Term, avoid: &VarSet) -> FreeVar {
    let mut candidate = FreeVar::new(Name::indexed(prefix, 0), tag.clone());
    let mut i = 0;
    while avoid.contains(&candidate) {
        i += 1;
        candidate = candidate.with_name(Name::indexed(prefix, i));
    }
    candidate
}
