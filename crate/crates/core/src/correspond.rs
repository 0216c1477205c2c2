//! Moving derivable judgments between the two presentations.
//!
//! A contextful judgment is first renamed into a type-annotated one, where
//! each declaration reads `x^B : B`; dropping its context gives a derivable
//! context-free judgment. Conversely a context-free judgment `M : A` is
//! derivable under the context of exactly the variables in `hfv(M, A)`,
//! declared at their tags, in any order where a variable precedes the
//! variables whose tags mention it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::CorrespondError;
use crate::ginf::{accepts as ginf_accepts, GinfJudgment};
use crate::pts::{accepts as pts_accepts, Context, ContextfulJudgment, Decl};
use crate::spec::PtsSpec;
use crate::syntax::{fv, hfv, FreeVar, Name, Term, VarSet};

/// A contextful judgment whose declarations are all `x^B : B` and whose
/// subject and type mention only declared variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotatedJudgment(ContextfulJudgment);

impl AnnotatedJudgment {
    /// Checks the shape invariants (not derivability).
    pub fn new(j: ContextfulJudgment) -> Result<Self, CorrespondError> {
        if let Some(d) = j.ctx.iter().find(|d| !d.is_annotated()) {
            return Err(CorrespondError::NotDerivable(format!("declaration {d} is not type-annotated")));
        }
        first_undeclared(&j).map_or(Ok(AnnotatedJudgment(j)), |v| Err(CorrespondError::UndeclaredFreeVariable(v)))
    }

    pub fn judgment(&self) -> &ContextfulJudgment {
        &self.0
    }

    pub fn ctx(&self) -> &Context {
        &self.0.ctx
    }

    pub fn subject(&self) -> &Term {
        &self.0.subject
    }

    pub fn ty(&self) -> &Term {
        &self.0.ty
    }

    pub fn into_inner(self) -> ContextfulJudgment {
        self.0
    }
}

impl fmt::Display for AnnotatedJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn first_undeclared(j: &ContextfulJudgment) -> Option<FreeVar> {
    let dom = j.ctx.dom();
    let mut seen = fv(&j.subject);
    seen.extend(fv(&j.ty));
    for d in &j.ctx {
        seen.extend(fv(&d.ty));
    }
    seen.into_iter().find(|v| !dom.contains(v))
}

/// Renames the context variables to `x1^{B1}, x2^{B2}, ...`, each tagged
/// with its (renamed) declared type.
///
/// The renaming is one simultaneous substitution, so variables that
/// already use the standard names cannot be captured.
pub fn annotate(j: &ContextfulJudgment) -> Result<AnnotatedJudgment, CorrespondError> {
    if let Some(v) = first_undeclared(j) {
        return Err(CorrespondError::UndeclaredFreeVariable(v));
    }
    let mut renaming = BTreeMap::new();
    let mut decls = Vec::with_capacity(j.ctx.len());
    for (i, d) in j.ctx.iter().enumerate() {
        let ty = d.ty.subst_many(&renaming);
        let var = FreeVar::new(Name::indexed("x", i + 1), ty);
        renaming.insert(d.var.clone(), Term::Free(var.clone()));
        decls.push(Decl::annotated(var));
    }
    let ctx = Context::new(decls).expect("standard names are distinct");
    Ok(AnnotatedJudgment(ContextfulJudgment::new(ctx, j.subject.subst_many(&renaming), j.ty.subst_many(&renaming))))
}

/// Drops the context of a derivable annotated judgment.
pub fn to_ginf(j: &AnnotatedJudgment, spec: &PtsSpec, fuel: u64) -> Result<GinfJudgment, CorrespondError> {
    match pts_accepts(spec, &j.0, fuel) {
        Ok(true) => Ok(GinfJudgment::new(j.0.subject.clone(), j.0.ty.clone())),
        Ok(false) => Err(CorrespondError::NotDerivable(j.to_string())),
        Err(e) => Err(CorrespondError::from_check(e)),
    }
}

/// The variables of `hfv(M, A)` in order of first occurrence, scanning the
/// subject then the type left to right and visiting each tag before the
/// variable carrying it.
pub fn first_occurrences(j: &GinfJudgment) -> Vec<FreeVar> {
    fn walk(t: &Term, seen: &mut BTreeSet<FreeVar>, out: &mut Vec<FreeVar>) {
        match t {
            Term::Sort(_) | Term::Bound(_) => {}
            Term::Free(v) => {
                if !seen.contains(v) {
                    walk(v.tag(), seen, out);
                    if seen.insert(v.clone()) {
                        out.push(v.clone());
                    }
                }
            }
            Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => {
                walk(a, seen, out);
                walk(b, seen, out);
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    walk(&j.subject, &mut seen, &mut out);
    walk(&j.ty, &mut seen, &mut out);
    out
}

/// Orders `vars` so that `x` precedes `y` whenever `x ∈ hfv(tag of y)`,
/// keeping the given order among unconstrained variables.
pub fn tag_order(vars: &[FreeVar]) -> Result<Vec<FreeVar>, CorrespondError> {
    let members: VarSet = vars.iter().cloned().collect();
    let deps: Vec<VarSet> = vars.iter().map(|v| hfv(v.tag()).intersection(&members).cloned().collect()).collect();
    let mut placed = VarSet::new();
    let mut out = Vec::with_capacity(vars.len());
    while out.len() < vars.len() {
        let next = (0..vars.len()).find(|&i| !placed.contains(&vars[i]) && deps[i].is_subset(&placed));
        let Some(i) = next else {
            return Err(CorrespondError::CyclicTags);
        };
        placed.insert(vars[i].clone());
        out.push(vars[i].clone());
    }
    Ok(out)
}

/// Builds the annotated context of a derivable context-free judgment and
/// re-checks the result in the contextful system.
pub fn synthesize_context(j: &GinfJudgment, spec: &PtsSpec, fuel: u64) -> Result<AnnotatedJudgment, CorrespondError> {
    match ginf_accepts(spec, j, fuel) {
        Ok(true) => {}
        Ok(false) => return Err(CorrespondError::NotDerivable(j.to_string())),
        Err(e) => return Err(CorrespondError::from_check(e)),
    }
    let order = tag_order(&first_occurrences(j))?;
    let ctx = Context::new(order.into_iter().map(Decl::annotated)).expect("hfv has no duplicates");
    let out = ContextfulJudgment::new(ctx, j.subject.clone(), j.ty.clone());
    match pts_accepts(spec, &out, fuel) {
        Ok(true) => Ok(AnnotatedJudgment(out)),
        Ok(false) => Err(CorrespondError::NotDerivable(format!("synthesized {out} does not check"))),
        Err(e) => Err(CorrespondError::from_check(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{hfv2, SortName, DEFAULT_FUEL};

    fn star() -> Term {
        Term::sort(SortName::from_static("*"))
    }
    fn boxs() -> Term {
        Term::sort(SortName::from_static("#"))
    }
    fn v(name: &'static str, tag: Term) -> FreeVar {
        FreeVar::new(Name::from_static(name), tag)
    }

    /// `Ȧ:*, a^{*}:Ȧ ⊢ (λx:Ȧ. x) a^{*} : Ȧ` with untagged context variables.
    fn readable() -> ContextfulJudgment {
        let big_a = v("A", Term::unit());
        let a = v("a", star());
        let ctx = Context::new([Decl::new(big_a.clone(), star()), Decl::new(a.clone(), Term::free(big_a.clone()))]).unwrap();
        let term = Term::app(Term::lam(Term::free(big_a.clone()), Term::bound(0)), Term::free(a));
        ContextfulJudgment::new(ctx, term, Term::free(big_a))
    }

    fn standard() -> ContextfulJudgment {
        let x1 = v("x1", star());
        let x2 = v("x2", Term::free(x1.clone()));
        let ctx = Context::new([Decl::annotated(x1.clone()), Decl::annotated(x2.clone())]).unwrap();
        let term = Term::app(Term::lam(Term::free(x1.clone()), Term::bound(0)), Term::free(x2));
        ContextfulJudgment::new(ctx, term, Term::free(x1))
    }

    #[test]
    fn annotate_worked_example() {
        assert_eq!(annotate(&readable()).unwrap().into_inner(), standard());
    }

    #[test]
    fn annotate_is_idempotent() {
        let once = annotate(&readable()).unwrap();
        assert_eq!(annotate(once.judgment()).unwrap(), once);
    }

    #[test]
    fn annotate_empty_context() {
        let j = ContextfulJudgment::new(Context::empty(), star(), boxs());
        assert_eq!(annotate(&j).unwrap().into_inner(), j);
    }

    #[test]
    fn annotate_swaps_colliding_names() {
        // Standard names taken in reverse: x2^* : *, x1^* : x2^*.
        let x2 = v("x2", star());
        let x1 = v("x1", star());
        let ctx = Context::new([Decl::new(x2.clone(), star()), Decl::new(x1.clone(), Term::free(x2.clone()))]).unwrap();
        let j = ContextfulJudgment::new(ctx, Term::free(x1), Term::free(x2));
        let out = annotate(&j).unwrap();
        let n1 = v("x1", star());
        let n2 = v("x2", Term::free(n1.clone()));
        assert_eq!(out.subject(), &Term::free(n2));
        assert_eq!(out.ty(), &Term::free(n1));
        assert!(pts_accepts(&PtsSpec::coc(), out.judgment(), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn annotate_undeclared() {
        let mut j = readable();
        let z = v("z", star());
        j.subject = Term::free(z.clone());
        assert_eq!(annotate(&j), Err(CorrespondError::UndeclaredFreeVariable(z)));
    }

    #[test]
    fn to_ginf_worked_example() {
        let spec = PtsSpec::coc();
        let j = AnnotatedJudgment::new(standard()).unwrap();
        let g = to_ginf(&j, &spec, DEFAULT_FUEL).unwrap();
        assert_eq!(g, GinfJudgment::new(standard().subject, standard().ty));
        assert_eq!(crate::ginf::ginf_check(&spec, &g, DEFAULT_FUEL), Ok(true));
    }

    #[test]
    fn to_ginf_rejects_underivable() {
        let mut j = standard();
        j.ty = star();
        let j = AnnotatedJudgment::new(j).unwrap();
        assert!(matches!(to_ginf(&j, &PtsSpec::coc(), DEFAULT_FUEL), Err(CorrespondError::NotDerivable(_))));
    }

    #[test]
    fn synthesize_readable_names() {
        let big_a = v("A", star());
        let a = v("a", Term::free(big_a.clone()));
        let term = Term::app(Term::lam(Term::free(big_a.clone()), Term::bound(0)), Term::free(a.clone()));
        let g = GinfJudgment::new(term, Term::free(big_a.clone()));
        let out = synthesize_context(&g, &PtsSpec::coc(), DEFAULT_FUEL).unwrap();
        assert_eq!(out.ctx().decls(), &[Decl::annotated(big_a), Decl::annotated(a)]);
    }

    #[test]
    fn synthesize_trivial() {
        let spec = PtsSpec::coc();
        let out = synthesize_context(&GinfJudgment::new(star(), boxs()), &spec, DEFAULT_FUEL).unwrap();
        assert!(out.ctx().is_empty());
        let x0 = v("x0", star());
        let out = synthesize_context(&GinfJudgment::new(Term::free(x0.clone()), star()), &spec, DEFAULT_FUEL).unwrap();
        assert_eq!(out.ctx().decls(), &[Decl::annotated(x0)]);
    }

    #[test]
    fn synthesized_domain_is_hfv() {
        let spec = PtsSpec::coc();
        let big_a = v("A", star());
        let p = v("P", Term::arrow(Term::free(big_a.clone()), star()));
        let a = v("a", Term::free(big_a.clone()));
        let h = v("h", Term::app(Term::free(p), Term::free(a)));
        let g = GinfJudgment::new(Term::free(h.clone()), h.tag().clone());
        let out = synthesize_context(&g, &spec, DEFAULT_FUEL).unwrap();
        assert_eq!(out.ctx().dom(), hfv2(&g.subject, &g.ty));
        assert_eq!(out.ctx().decls()[0].var, big_a);
    }

    #[test]
    fn tag_order_moves_dependencies_first() {
        let big_a = v("A", star());
        let a = v("a", Term::free(big_a.clone()));
        assert_eq!(tag_order(&[a.clone(), big_a.clone()]), Ok(vec![big_a, a]));
    }

    #[test]
    fn round_trip_from_contextful() {
        let spec = PtsSpec::coc();
        let annotated = annotate(&readable()).unwrap();
        let g = to_ginf(&annotated, &spec, DEFAULT_FUEL).unwrap();
        assert_eq!(synthesize_context(&g, &spec, DEFAULT_FUEL).unwrap(), annotated);
    }
}
