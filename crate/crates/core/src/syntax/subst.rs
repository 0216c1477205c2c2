//! Index instantiation, abstraction over free variables, and free-variable
//! substitution. None of these look inside tags.

use std::collections::BTreeMap;

use super::term::{FreeVar, Term};

impl Term {
    /// Adds `by` to every bound index `>= cutoff`.
    pub fn shift(&self, by: u32, cutoff: u32) -> Term {
        if by == 0 {
            return self.clone();
        }
        match self {
            Term::Sort(_) | Term::Free(_) => self.clone(),
            Term::Bound(i) if *i >= cutoff => Term::Bound(i + by),
            Term::Bound(_) => self.clone(),
            Term::Pi(a, b) => Term::pi(a.shift(by, cutoff), b.shift(by, cutoff + 1)),
            Term::Lam(a, b) => Term::lam(a.shift(by, cutoff), b.shift(by, cutoff + 1)),
            Term::App(f, a) => Term::app(f.shift(by, cutoff), a.shift(by, cutoff)),
        }
    }

    /// Replaces index `depth` by `replacement` (lifted under the binders
    /// crossed) and lowers the indices above it by one. This is the
    /// substitution used by beta contraction and may be applied under
    /// binders, where `replacement` can itself have dangling indices.
    pub fn instantiate_at(&self, depth: u32, replacement: &Term) -> Term {
        match self {
            Term::Sort(_) | Term::Free(_) => self.clone(),
            Term::Bound(i) if *i == depth => replacement.shift(depth, 0),
            Term::Bound(i) if *i > depth => Term::Bound(i - 1),
            Term::Bound(_) => self.clone(),
            Term::Pi(a, b) => Term::pi(a.instantiate_at(depth, replacement), b.instantiate_at(depth + 1, replacement)),
            Term::Lam(a, b) => Term::lam(a.instantiate_at(depth, replacement), b.instantiate_at(depth + 1, replacement)),
            Term::App(f, a) => Term::app(f.instantiate_at(depth, replacement), a.instantiate_at(depth, replacement)),
        }
    }

    /// Body instantiation `B[0 := N]` for the body of a binder.
    pub fn open(&self, replacement: &Term) -> Term {
        self.instantiate_at(0, replacement)
    }

    /// Abstracts every occurrence of `target` (outside tags) into a bound
    /// index for a new outermost binder. Occurrences inside other
    /// variables' tags are left alone.
    pub fn close(&self, target: &FreeVar) -> Term {
        self.close_at(target, 0)
    }

    fn close_at(&self, target: &FreeVar, depth: u32) -> Term {
        match self {
            Term::Free(v) if v == target => Term::Bound(depth),
            Term::Sort(_) | Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Pi(a, b) => Term::pi(a.close_at(target, depth), b.close_at(target, depth + 1)),
            Term::Lam(a, b) => Term::lam(a.close_at(target, depth), b.close_at(target, depth + 1)),
            Term::App(f, a) => Term::app(f.close_at(target, depth), a.close_at(target, depth)),
        }
    }

    /// `M[x := N]` for a free variable `x` and a locally closed `N`.
    pub fn subst_free(&self, target: &FreeVar, replacement: &Term) -> Term {
        debug_assert!(replacement.is_locally_closed());
        if !self.mentions(target) {
            return self.clone();
        }
        match self {
            Term::Free(v) if v == target => replacement.clone(),
            Term::Sort(_) | Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Pi(a, b) => Term::pi(a.subst_free(target, replacement), b.subst_free(target, replacement)),
            Term::Lam(a, b) => Term::lam(a.subst_free(target, replacement), b.subst_free(target, replacement)),
            Term::App(f, a) => Term::app(f.subst_free(target, replacement), a.subst_free(target, replacement)),
        }
    }

    /// Simultaneous substitution of free variables by locally closed terms.
    pub fn subst_many(&self, map: &BTreeMap<FreeVar, Term>) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Term::Free(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Sort(_) | Term::Bound(_) => self.clone(),
            Term::Pi(a, b) => Term::pi(a.subst_many(map), b.subst_many(map)),
            Term::Lam(a, b) => Term::lam(a.subst_many(map), b.subst_many(map)),
            Term::App(f, a) => Term::app(f.subst_many(map), a.subst_many(map)),
        }
    }

    /// Whether `target` occurs outside tags.
    pub fn mentions(&self, target: &FreeVar) -> bool {
        match self {
            Term::Free(v) => v == target,
            Term::Sort(_) | Term::Bound(_) => false,
            Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => a.mentions(target) || b.mentions(target),
        }
    }
}

/// `open` as a free function, for symmetry with the other operations.
pub fn open(body: &Term, replacement: &Term) -> Term {
    body.open(replacement)
}

pub fn close(term: &Term, target: &FreeVar) -> Term {
    term.close(target)
}

pub fn subst_free(term: &Term, target: &FreeVar, replacement: &Term) -> Term {
    term.subst_free(target, replacement)
}
