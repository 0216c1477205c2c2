//! Declarative derivation search for both presentations.
//!
//! For each term the search computes its *raw* types: the types it can be
//! given by a derivation whose last rule is not conversion. Any derivable
//! type is β-equal to a raw one, and conversion is applied only where a
//! premise asks for it, towards a raw type or its normal form. Binder
//! rules try every candidate eigenvariable the rule allows: the variables
//! of the binder body tagged with the domain (the side condition must then
//! reject them) and one fresh `v`-variable, which stands for all fresh
//! ones because derivability is invariant under renaming.

use std::collections::{BTreeSet, HashMap};

use crate::pts::{Context, Decl};
use crate::spec::PtsSpec;
use crate::syntax::{FreeVar, SortName, Term};

use super::naive::{abstr, free_vars, fresh, hereditary_set, inst, nf};
use super::BudgetExhausted;

type Outcome<T> = Result<T, BudgetExhausted>;

const MAX_DEPTH: usize = 200;

fn push_new<T: PartialEq>(out: &mut Vec<T>, x: T) {
    if !out.contains(&x) {
        out.push(x);
    }
}

fn axioms_of<'a>(spec: &'a PtsSpec, s1: &'a SortName) -> impl Iterator<Item = SortName> + 'a {
    spec.axioms().iter().filter(move |(a, _)| a == s1).map(|(_, b)| b.clone())
}

fn rules_of<'a>(spec: &'a PtsSpec, s1: &'a SortName, s2: &'a SortName) -> impl Iterator<Item = SortName> + 'a {
    spec.rules().iter().filter(move |(a, b, _)| a == s1 && b == s2).map(|(_, _, c)| c.clone())
}

/// Search in the context-free system.
pub struct GinfSearch<'a> {
    spec: &'a PtsSpec,
    fuel: u64,
    memo: HashMap<Term, Outcome<Vec<Term>>>,
    depth: usize,
}

impl<'a> GinfSearch<'a> {
    pub fn new(spec: &'a PtsSpec, fuel: u64) -> Self {
        GinfSearch { spec, fuel, memo: HashMap::new(), depth: 0 }
    }

    fn nf(&self, t: &Term) -> Outcome<Term> {
        nf(t, &mut self.fuel.clone())
    }

    pub fn raw_types(&mut self, m: &Term) -> Outcome<Vec<Term>> {
        if let Some(r) = self.memo.get(m) {
            return r.clone();
        }
        if self.depth >= MAX_DEPTH {
            return Err(BudgetExhausted::Depth);
        }
        self.depth += 1;
        let r = self.compute(m);
        self.depth -= 1;
        self.memo.insert(m.clone(), r.clone());
        r
    }

    fn compute(&mut self, m: &Term) -> Outcome<Vec<Term>> {
        let mut out = Vec::new();
        match m {
            Term::Sort(s1) => {
                if self.spec.sorts().contains(s1) {
                    out.extend(axioms_of(self.spec, s1).map(Term::Sort));
                }
            }
            Term::Bound(_) => {}
            Term::Free(v) => {
                if !self.sorts_of(v.tag())?.is_empty() {
                    out.push(v.tag().clone());
                }
            }
            Term::Pi(a, b) => {
                let s1s = self.sorts_of(a)?;
                if s1s.is_empty() {
                    return Ok(out);
                }
                for y in self.eigen_candidates(a, b) {
                    for s2 in self.sorts_of(&inst(b, 0, &Term::Free(y)))? {
                        for s1 in &s1s {
                            for s3 in rules_of(self.spec, s1, &s2) {
                                push_new(&mut out, Term::Sort(s3));
                            }
                        }
                    }
                }
            }
            Term::Lam(a, body) => {
                for y in self.eigen_candidates(a, body) {
                    let opened = inst(body, 0, &Term::Free(y.clone()));
                    for raw in self.raw_types(&opened)? {
                        for target in self.conv_targets(raw)? {
                            let codomain = abstr(&target, &y, 0);
                            if hereditary_set(&codomain).contains(&y) {
                                continue;
                            }
                            let pi = Term::pi((**a).clone(), codomain);
                            if !self.sorts_of(&pi)?.is_empty() {
                                push_new(&mut out, pi);
                            }
                        }
                    }
                }
            }
            Term::App(f, n) => {
                for raw in self.raw_types(f)? {
                    for target in self.conv_targets(raw)? {
                        if let Term::Pi(dom, cod) = &target {
                            if self.has_type(n, dom)? {
                                push_new(&mut out, inst(cod, 0, n));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Candidate `y` for opening `body` under domain `a`, already filtered
    /// by the side condition `y ∉ hfv(body)`.
    fn eigen_candidates(&self, a: &Term, body: &Term) -> Vec<FreeVar> {
        let hfv = hereditary_set(body);
        let mut out: Vec<FreeVar> = hfv.iter().filter(|v| v.tag() == a).cloned().collect();
        out.push(fresh(a, &hfv));
        out.retain(|y| !hfv.contains(y));
        out
    }

    fn conv_targets(&mut self, raw: Term) -> Outcome<Vec<Term>> {
        let normal = self.nf(&raw)?;
        if normal == raw || self.sorts_of(&normal)?.is_empty() {
            return Ok(vec![raw]);
        }
        Ok(vec![raw, normal])
    }

    /// `{ s | m : s }`
    pub fn sorts_of(&mut self, m: &Term) -> Outcome<Vec<SortName>> {
        let mut out = Vec::new();
        for raw in self.raw_types(m)? {
            if let Term::Sort(s) = &raw {
                push_new(&mut out, s.clone());
            } else if let Term::Sort(s) = self.nf(&raw)? {
                if !self.raw_types(&Term::Sort(s.clone()))?.is_empty() {
                    push_new(&mut out, s);
                }
            }
        }
        Ok(out)
    }

    /// Whether `m : t` is derivable.
    pub fn has_type(&mut self, m: &Term, t: &Term) -> Outcome<bool> {
        let raws = self.raw_types(m)?;
        if raws.contains(t) {
            return Ok(true);
        }
        let target = self.nf(t)?;
        for raw in raws {
            if self.nf(&raw)? == target {
                return Ok(!self.sorts_of(t)?.is_empty());
            }
        }
        Ok(false)
    }
}

/// Search in the contextful system.
pub struct PtsSearch<'a> {
    spec: &'a PtsSpec,
    fuel: u64,
    memo: HashMap<(Context, Term), Outcome<Vec<Term>>>,
    depth: usize,
}

impl<'a> PtsSearch<'a> {
    pub fn new(spec: &'a PtsSpec, fuel: u64) -> Self {
        PtsSearch { spec, fuel, memo: HashMap::new(), depth: 0 }
    }

    fn nf(&self, t: &Term) -> Outcome<Term> {
        nf(t, &mut self.fuel.clone())
    }

    pub fn raw_types(&mut self, ctx: &Context, m: &Term) -> Outcome<Vec<Term>> {
        let key = (ctx.clone(), m.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        if self.depth >= MAX_DEPTH {
            return Err(BudgetExhausted::Depth);
        }
        self.depth += 1;
        let r = self.compute(ctx, m);
        self.depth -= 1;
        self.memo.insert(key, r.clone());
        r
    }

    fn compute(&mut self, ctx: &Context, m: &Term) -> Outcome<Vec<Term>> {
        let mut out = Vec::new();
        let split = ctx.len().checked_sub(1).map(|k| (ctx.prefix(k), &ctx.decls()[k]));
        // (weak)
        if let Some((prefix, last)) = &split {
            if !self.sorts_of(prefix, &last.ty)?.is_empty() {
                for t in self.raw_types(prefix, m)? {
                    push_new(&mut out, t);
                }
            }
        }
        match m {
            Term::Sort(s1) => {
                if ctx.is_empty() && self.spec.sorts().contains(s1) {
                    out.extend(axioms_of(self.spec, s1).map(Term::Sort));
                }
            }
            Term::Bound(_) => {}
            Term::Free(v) => {
                // (start)
                if let Some((prefix, last)) = &split {
                    if &last.var == v && !self.sorts_of(prefix, &last.ty)?.is_empty() {
                        push_new(&mut out, last.ty.clone());
                    }
                }
            }
            Term::Pi(a, b) => {
                let s1s = self.sorts_of(ctx, a)?;
                if !s1s.is_empty() {
                    let y = self.fresh_for(ctx, a, b);
                    let inner = extend(ctx, &y, a);
                    for s2 in self.sorts_of(&inner, &inst(b, 0, &Term::Free(y)))? {
                        for s1 in &s1s {
                            for s3 in rules_of(self.spec, s1, &s2) {
                                push_new(&mut out, Term::Sort(s3));
                            }
                        }
                    }
                }
            }
            Term::Lam(a, body) => {
                let y = self.fresh_for(ctx, a, body);
                let inner = extend(ctx, &y, a);
                for raw in self.raw_types(&inner, &inst(body, 0, &Term::Free(y.clone())))? {
                    for target in self.conv_targets(&inner, raw)? {
                        let pi = Term::pi((**a).clone(), abstr(&target, &y, 0));
                        if !self.sorts_of(ctx, &pi)?.is_empty() {
                            push_new(&mut out, pi);
                        }
                    }
                }
            }
            Term::App(f, n) => {
                for raw in self.raw_types(ctx, f)? {
                    for target in self.conv_targets(ctx, raw)? {
                        if let Term::Pi(dom, cod) = &target {
                            if self.has_type(ctx, n, dom)? {
                                push_new(&mut out, inst(cod, 0, n));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// A variable not declared in `ctx` and not free in the binder.
    /// Tags mean nothing here, so which tag it carries is irrelevant.
    fn fresh_for(&self, ctx: &Context, a: &Term, body: &Term) -> FreeVar {
        let mut avoid: BTreeSet<FreeVar> = ctx.iter().map(|d| d.var.clone()).collect();
        free_vars(body, &mut avoid);
        fresh(a, &avoid)
    }

    fn conv_targets(&mut self, ctx: &Context, raw: Term) -> Outcome<Vec<Term>> {
        let normal = self.nf(&raw)?;
        if normal == raw || self.sorts_of(ctx, &normal)?.is_empty() {
            return Ok(vec![raw]);
        }
        Ok(vec![raw, normal])
    }

    pub fn sorts_of(&mut self, ctx: &Context, m: &Term) -> Outcome<Vec<SortName>> {
        let mut out = Vec::new();
        for raw in self.raw_types(ctx, m)? {
            if let Term::Sort(s) = &raw {
                push_new(&mut out, s.clone());
            } else if let Term::Sort(s) = self.nf(&raw)? {
                if !self.raw_types(ctx, &Term::Sort(s.clone()))?.is_empty() {
                    push_new(&mut out, s);
                }
            }
        }
        Ok(out)
    }

    /// Whether `ctx ⊢ m : t` is derivable.
    pub fn has_type(&mut self, ctx: &Context, m: &Term, t: &Term) -> Outcome<bool> {
        let raws = self.raw_types(ctx, m)?;
        if raws.contains(t) {
            return Ok(true);
        }
        let target = self.nf(t)?;
        for raw in raws {
            if self.nf(&raw)? == target {
                return Ok(!self.sorts_of(ctx, t)?.is_empty());
            }
        }
        Ok(false)
    }

    /// Whether every declaration's type is a type in the preceding prefix.
    pub fn well_formed(&mut self, ctx: &Context) -> Outcome<bool> {
        for k in 0..ctx.len() {
            if self.sorts_of(&ctx.prefix(k), &ctx.decls()[k].ty)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn extend(ctx: &Context, y: &FreeVar, a: &Term) -> Context {
    let mut decls = ctx.decls().to_vec();
    decls.push(Decl::new(y.clone(), a.clone()));
    Context::new(decls).expect("fresh variable")
}

/// Some type of `m` in the context-free system, if one is derivable.
pub fn derive_ginf(spec: &PtsSpec, m: &Term, fuel: u64) -> Outcome<Option<Term>> {
    Ok(GinfSearch::new(spec, fuel).raw_types(m)?.into_iter().next())
}

/// Some type of `m` under `ctx`, if one is derivable.
pub fn derive_pts(spec: &PtsSpec, ctx: &Context, m: &Term, fuel: u64) -> Outcome<Option<Term>> {
    Ok(PtsSearch::new(spec, fuel).raw_types(ctx, m)?.into_iter().next())
}
