//! Leftmost-outermost beta reduction. Redexes inside tags are never
//! contracted: a tag is part of a variable's identity.

use thiserror::Error;

use super::term::Term;

/// Reduction steps allowed per normalization when nothing else is said.
pub const DEFAULT_FUEL: u64 = 10_000;

/// Normalization did not finish within the step budget. This is an
/// "unknown" outcome, not a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("fuel exhausted after {0} reduction steps")]
pub struct FuelExhausted(pub u64);

/// One leftmost-outermost beta step, or `None` if the term is normal
/// (outside tags).
pub fn beta_step(term: &Term) -> Option<Term> {
    match term {
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => None,
        Term::App(f, a) => {
            if let Term::Lam(_, body) = &**f {
                return Some(body.open(a));
            }
            if let Some(f2) = beta_step(f) {
                return Some(Term::App(f2.into(), a.clone()));
            }
            beta_step(a).map(|a2| Term::App(f.clone(), a2.into()))
        }
        Term::Pi(a, b) => match beta_step(a) {
            Some(a2) => Some(Term::Pi(a2.into(), b.clone())),
            None => beta_step(b).map(|b2| Term::Pi(a.clone(), b2.into())),
        },
        Term::Lam(a, b) => match beta_step(a) {
            Some(a2) => Some(Term::Lam(a2.into(), b.clone())),
            None => beta_step(b).map(|b2| Term::Lam(a.clone(), b2.into())),
        },
    }
}

struct Budget {
    limit: u64,
    left: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, left: limit }
    }

    fn spend(&mut self) -> Result<(), FuelExhausted> {
        if self.left == 0 {
            return Err(FuelExhausted(self.limit));
        }
        self.left -= 1;
        Ok(())
    }
}

fn whnf_in(term: &Term, budget: &mut Budget) -> Result<Term, FuelExhausted> {
    let mut current = term.clone();
    loop {
        let (head, args) = current.spine();
        let Term::Lam(_, body) = head else {
            return Ok(current);
        };
        let Some((first, rest)) = args.split_first() else {
            return Ok(current);
        };
        budget.spend()?;
        let contracted = body.open(first);
        current = Term::apps(contracted, rest.iter().map(|t| (*t).clone()));
    }
}

fn nf_in(term: &Term, budget: &mut Budget) -> Result<Term, FuelExhausted> {
    let head_normal = whnf_in(term, budget)?;
    Ok(match &head_normal {
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => head_normal,
        Term::Pi(a, b) => {
            let a = nf_in(a, budget)?;
            Term::pi(a, nf_in(b, budget)?)
        }
        Term::Lam(a, b) => {
            let a = nf_in(a, budget)?;
            Term::lam(a, nf_in(b, budget)?)
        }
        Term::App(..) => {
            let (head, args) = head_normal.spine();
            let mut out = nf_in(head, budget)?;
            for arg in args {
                out = Term::app(out, nf_in(arg, budget)?);
            }
            out
        }
    })
}

/// Weak head normal form by contracting head redexes.
pub fn whnf(term: &Term, fuel: u64) -> Result<Term, FuelExhausted> {
    whnf_in(term, &mut Budget::new(fuel))
}

/// Full beta normal form along the leftmost-outermost strategy; performs
/// exactly the contractions `beta_step` would, in the same order.
pub fn normalize(term: &Term, fuel: u64) -> Result<Term, FuelExhausted> {
    nf_in(term, &mut Budget::new(fuel))
}

/// Beta equality, decided by normalizing both sides with `fuel` steps each
/// and comparing structurally (variable identity includes tags).
pub fn beta_eq(a: &Term, b: &Term, fuel: u64) -> Result<bool, FuelExhausted> {
    if a == b {
        return Ok(true);
    }
    let na = normalize(a, fuel)?;
    let nb = normalize(b, fuel)?;
    Ok(na == nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Name, SortName};

    fn star() -> Term {
        Term::sort(SortName::from_static("*"))
    }
    fn big_b() -> Term {
        Term::var(Name::from_static("B"), star())
    }
    /// (\A:*. A) B^*
    fn id_b() -> Term {
        Term::app(Term::lam(star(), Term::bound(0)), big_b())
    }

    #[test]
    fn step_contracts_redex() {
        assert_eq!(beta_step(&id_b()), Some(big_b()));
        assert_eq!(beta_step(&star()), None);
    }

    #[test]
    fn no_reduction_inside_tags() {
        let x = Term::var(Name::from_static("x"), id_b());
        assert_eq!(beta_step(&x), None);
        assert_eq!(normalize(&x, 100), Ok(x.clone()));
    }

    #[test]
    fn beta_eq_examples() {
        assert_eq!(beta_eq(&id_b(), &big_b(), 100), Ok(true));
        let x1 = Term::var(Name::from_static("x"), id_b());
        let x2 = Term::var(Name::from_static("x"), big_b());
        assert_eq!(beta_eq(&x1, &x2, 100), Ok(false));
        let normal = Term::lam(star(), Term::bound(0));
        assert_eq!(beta_eq(&normal, &normal, 1), Ok(true));
    }

    fn omega() -> Term {
        let w = Term::lam(star(), Term::app(Term::bound(0), Term::bound(0)));
        Term::app(w.clone(), w)
    }

    #[test]
    fn fuel_exhaustion_is_distinct() {
        assert_eq!(normalize(&omega(), 50), Err(FuelExhausted(50)));
        assert_eq!(beta_eq(&omega(), &star(), 50), Err(FuelExhausted(50)));
        // Identical terms are equal without reducing.
        assert_eq!(beta_eq(&omega(), &omega(), 1), Ok(true));
    }

    #[test]
    fn leftmost_outermost_finds_normal_form() {
        // (\x:*. *) omega reduces to * in one outermost step.
        let t = Term::app(Term::lam(star(), star()), omega());
        assert_eq!(normalize(&t, 1), Ok(star()));
        assert_eq!(beta_step(&t), Some(star()));
    }

    #[test]
    fn normalizes_under_binders() {
        // \y:*. (\x:*. x) y  -->  \y:*. y
        let t = Term::lam(star(), Term::app(Term::lam(star(), Term::bound(0)), Term::bound(0)));
        assert_eq!(normalize(&t, 10), Ok(Term::lam(star(), Term::bound(0))));
    }

    #[test]
    fn fuel_counts_steps() {
        let two = Term::app(Term::lam(star(), Term::bound(0)), id_b());
        assert_eq!(normalize(&two, 2), Ok(big_b()));
        assert_eq!(normalize(&two, 1), Err(FuelExhausted(1)));
    }
}
