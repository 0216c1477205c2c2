#![allow(dead_code)]

use proptest::prelude::*;

use ginf_core::oracle::{enumerate_terms, EnumBudget};
use ginf_core::{FreeVar, Name, PtsSpec, SortName, Term};

pub fn star() -> Term {
    Term::sort(SortName::from_static("*"))
}

pub fn boxs() -> Term {
    Term::sort(SortName::from_static("#"))
}

pub fn var(name: &'static str, tag: Term) -> FreeVar {
    FreeVar::new(Name::from_static(name), tag)
}

fn sort() -> impl Strategy<Value = Term> {
    prop_oneof![Just(star()), Just(boxs())]
}

fn name() -> impl Strategy<Value = Name> {
    prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Name::from_static)
}

/// Locally closed tags, including redexes and nested tags.
pub fn arb_tag() -> BoxedStrategy<Term> {
    let leaf = prop_oneof![sort(), (name(), sort()).prop_map(|(n, s)| Term::var(n, s))];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (name(), inner.clone()).prop_map(|(n, t)| Term::var(n, t)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::arrow(a, b)),
            (sort(), inner).prop_map(|(s, t)| Term::app(Term::lam(s, Term::bound(0)), t)),
        ]
    })
    .boxed()
}

/// Replaces indices that would dangle at `depth` binders.
pub fn fix_indices(t: &Term, depth: u32) -> Term {
    match t {
        Term::Bound(i) if *i >= depth => {
            if depth == 0 {
                star()
            } else {
                Term::bound(i % depth)
            }
        }
        Term::Sort(_) | Term::Bound(_) | Term::Free(_) => t.clone(),
        Term::Pi(a, b) => Term::pi(fix_indices(a, depth), fix_indices(b, depth + 1)),
        Term::Lam(a, b) => Term::lam(fix_indices(a, depth), fix_indices(b, depth + 1)),
        Term::App(f, a) => Term::app(fix_indices(f, depth), fix_indices(a, depth)),
    }
}

fn raw_term() -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        2 => sort(),
        3 => (0u32..3).prop_map(Term::bound),
        3 => (name(), arb_tag()).prop_map(|(n, t)| Term::var(n, t)),
    ];
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::pi(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::lam(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (inner.clone(), inner.clone(), inner).prop_map(|(a, b, n)| Term::app(Term::lam(a, b), n)),
        ]
    })
    .boxed()
}

/// Locally closed pseudo-terms.
pub fn arb_term() -> BoxedStrategy<Term> {
    raw_term().prop_map(|t| fix_indices(&t, 0)).boxed()
}

/// Binder bodies: index 0 may dangle.
pub fn arb_body() -> BoxedStrategy<Term> {
    raw_term().prop_map(|t| fix_indices(&t, 1)).boxed()
}

pub fn arb_var() -> BoxedStrategy<FreeVar> {
    (name(), arb_tag()).prop_map(|(n, t)| FreeVar::new(n, t)).boxed()
}

/// The enumerated terms of `spec` up to `size`, one name per tag.
pub fn enumerated(spec: &PtsSpec, size: usize) -> Vec<Term> {
    enumerate_terms(&EnumBudget::for_spec(spec, size))
}
