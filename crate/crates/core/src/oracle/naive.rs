//! The oracle's own term operations, written independently of
//! [`crate::syntax`] so that a bug there cannot hide itself.
//!
//! Only locally closed terms reach these functions, and binders are always
//! entered by opening with a free variable, so no index ever needs
//! shifting.

use std::collections::BTreeSet;

use crate::syntax::{FreeVar, Name, Term};

use super::BudgetExhausted;

/// Replaces index `k` (the binder being opened) by `with`.
pub fn inst(t: &Term, k: u32, with: &Term) -> Term {
    match t {
        Term::Bound(i) if *i == k => with.clone(),
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::Pi(a, b) => Term::pi(inst(a, k, with), inst(b, k + 1, with)),
        Term::Lam(a, b) => Term::lam(inst(a, k, with), inst(b, k + 1, with)),
        Term::App(f, a) => Term::app(inst(f, k, with), inst(a, k, with)),
    }
}

/// Replaces occurrences of `x` (outside tags) by index `k`.
pub fn abstr(t: &Term, x: &FreeVar, k: u32) -> Term {
    match t {
        Term::Free(v) if v == x => Term::Bound(k),
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::Pi(a, b) => Term::pi(abstr(a, x, k), abstr(b, x, k + 1)),
        Term::Lam(a, b) => Term::lam(abstr(a, x, k), abstr(b, x, k + 1)),
        Term::App(f, a) => Term::app(abstr(f, x, k), abstr(a, x, k)),
    }
}

/// Free variables outside tags.
pub fn free_vars(t: &Term, out: &mut BTreeSet<FreeVar>) {
    match t {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => {
            out.insert(v.clone());
        }
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            free_vars(a, out);
            free_vars(b, out);
        }
    }
}

/// Free variables, including those of every tag, recursively.
pub fn hereditary(t: &Term, out: &mut BTreeSet<FreeVar>) {
    match t {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => {
            if out.insert(v.clone()) {
                hereditary(v.tag(), out);
            }
        }
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            hereditary(a, out);
            hereditary(b, out);
        }
    }
}

pub fn hereditary_set(t: &Term) -> BTreeSet<FreeVar> {
    let mut out = BTreeSet::new();
    hereditary(t, &mut out);
    out
}

/// All variable names appearing anywhere in `t`, tags included.
fn names(t: &Term, out: &mut BTreeSet<Name>) {
    match t {
        Term::Sort(_) | Term::Bound(_) => {}
        Term::Free(v) => {
            out.insert(v.name().clone());
            names(v.tag(), out);
        }
        Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
            names(a, out);
            names(b, out);
        }
    }
}

/// `v0^tag, v1^tag, ...`: the first not in `avoid`.
pub fn fresh(tag: &Term, avoid: &BTreeSet<FreeVar>) -> FreeVar {
    (0..)
        .map(|i| FreeVar::new(Name::indexed("v", i), tag.clone()))
        .find(|v| !avoid.contains(v))
        .expect("unbounded supply")
}

/// Normal form by normal-order reduction; each contraction costs one unit
/// of `fuel`.
pub fn nf(t: &Term, fuel: &mut u64) -> Result<Term, BudgetExhausted> {
    let head = whnf(t, fuel)?;
    match &head {
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => Ok(head),
        Term::App(f, a) => Ok(Term::app(nf(f, fuel)?, nf(a, fuel)?)),
        Term::Pi(a, b) | Term::Lam(a, b) => {
            let dom = nf(a, fuel)?;
            // A name that appears nowhere in the body cannot be captured.
            let mut used = BTreeSet::new();
            names(b, &mut used);
            let z = (0..)
                .map(|i| Name::indexed("nf", i))
                .find(|n| !used.contains(n))
                .map(|n| FreeVar::new(n, Term::unit()))
                .expect("unbounded supply");
            let body = abstr(&nf(&inst(b, 0, &Term::Free(z.clone())), fuel)?, &z, 0);
            Ok(if matches!(head, Term::Pi(..)) { Term::pi(dom, body) } else { Term::lam(dom, body) })
        }
    }
}

fn whnf(t: &Term, fuel: &mut u64) -> Result<Term, BudgetExhausted> {
    let mut cur = t.clone();
    loop {
        let (head, args) = unwind(&cur);
        match (head, args.split_first()) {
            (Term::Lam(_, body), Some((arg, rest))) => {
                if *fuel == 0 {
                    return Err(BudgetExhausted::Fuel);
                }
                *fuel -= 1;
                let reduced = inst(body, 0, arg);
                cur = rest.iter().fold(reduced, |f, a| Term::app(f, (*a).clone()));
            }
            _ => return Ok(cur),
        }
    }
}

fn unwind(t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Term::App(f, a) = head {
        args.push(&**a);
        head = f;
    }
    args.reverse();
    (head, args)
}
