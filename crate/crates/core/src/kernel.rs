//! An LCF-style kernel over the context-free rules.
//!
//! A [`Thm`] can only be produced by the functions in this module, each of
//! which checks one typing rule. There is no global state: a theorem
//! carries the spec it was proved under, and nothing else.

use std::sync::Arc;

use crate::error::TypeError;
use crate::ginf::GinfJudgment;
use crate::spec::PtsSpec;
use crate::syntax::{beta_eq, hfv, whnf, FreeVar, Name, SortName, Term};

/// A derivable context-free judgment.
#[derive(Debug, Clone)]
pub struct Thm {
    judgment: GinfJudgment,
    spec: Arc<PtsSpec>,
}

impl Thm {
    pub fn judgment(&self) -> &GinfJudgment {
        &self.judgment
    }

    pub fn subject(&self) -> &Term {
        &self.judgment.subject
    }

    pub fn ty(&self) -> &Term {
        &self.judgment.ty
    }

    pub fn spec(&self) -> &Arc<PtsSpec> {
        &self.spec
    }

    fn sort(&self) -> Result<&SortName, TypeError> {
        self.ty().as_sort().ok_or_else(|| TypeError::NotASort { term: self.subject().clone(), ty: self.ty().clone() })
    }

    fn derive(&self, subject: Term, ty: Term) -> Thm {
        Thm { judgment: GinfJudgment::new(subject, ty), spec: Arc::clone(&self.spec) }
    }
}

fn same_spec(a: &Thm, b: &Thm) -> Result<(), TypeError> {
    if Arc::ptr_eq(&a.spec, &b.spec) || a.spec == b.spec {
        Ok(())
    } else {
        Err(TypeError::SpecMismatch)
    }
}

fn escapes(eigen: &FreeVar, closed: &Term) -> Result<(), TypeError> {
    if hfv(closed).contains(eigen) {
        return Err(TypeError::SideConditionViolated { eigen: eigen.clone() });
    }
    Ok(())
}

/// `s1 : s2` for the axiom `(s1, s2)`.
pub fn mk_sort(spec: &Arc<PtsSpec>, s1: &SortName) -> Result<Thm, TypeError> {
    if !spec.has_sort(s1) {
        return Err(TypeError::UnknownSort(s1.clone()));
    }
    let targets = spec.axiom(s1);
    let mut it = targets.into_iter();
    match (it.next(), it.next()) {
        (None, _) => Err(TypeError::NoAxiom(s1.clone())),
        (Some(s2), None) => {
            Ok(Thm { judgment: GinfJudgment::new(Term::Sort(s1.clone()), Term::Sort(s2)), spec: Arc::clone(spec) })
        }
        (Some(_), Some(_)) => Err(TypeError::AmbiguousAxiom(s1.clone())),
    }
}

/// From `A : s`, `name^A : A`.
pub fn mk_var(t: &Thm, name: Name) -> Result<Thm, TypeError> {
    t.sort()?;
    let a = t.subject().clone();
    Ok(t.derive(Term::var(name, a.clone()), a))
}

/// From `A : s1` and `B : s2`, `Πx:A. B[eigen := x] : s3`.
pub fn mk_pi(t_dom: &Thm, t_cod: &Thm, eigen: &FreeVar) -> Result<Thm, TypeError> {
    same_spec(t_dom, t_cod)?;
    let s1 = t_dom.sort()?;
    let s2 = t_cod.sort()?;
    if eigen.tag() != t_dom.subject() {
        return Err(TypeError::TagMismatch { expected: t_dom.subject().clone(), found: eigen.tag().clone() });
    }
    let s3 = t_dom.spec.rule_fn(s1, s2).ok_or_else(|| TypeError::NoRule(s1.clone(), s2.clone()))?;
    let codomain = t_cod.subject().close(eigen);
    escapes(eigen, &codomain)?;
    Ok(t_dom.derive(Term::pi(t_dom.subject().clone(), codomain), Term::Sort(s3)))
}

/// From `M : B` and `Πx:A. B[eigen := x] : s`, `λx:A. M[eigen := x]`.
pub fn mk_lam(t_body: &Thm, t_pi: &Thm, eigen: &FreeVar) -> Result<Thm, TypeError> {
    same_spec(t_body, t_pi)?;
    t_pi.sort()?;
    let Term::Pi(domain, _) = t_pi.subject() else {
        return Err(pi_mismatch(t_pi, t_body, eigen));
    };
    if eigen.tag() != &**domain {
        return Err(TypeError::TagMismatch { expected: (**domain).clone(), found: eigen.tag().clone() });
    }
    let body = t_body.subject().close(eigen);
    let codomain = t_body.ty().close(eigen);
    escapes(eigen, &body)?;
    escapes(eigen, &codomain)?;
    let expected = Term::pi((**domain).clone(), codomain);
    if &expected != t_pi.subject() {
        return Err(TypeError::PiMismatch { expected: t_pi.subject().clone(), found: expected });
    }
    Ok(t_body.derive(Term::lam((**domain).clone(), body), expected))
}

fn pi_mismatch(t_pi: &Thm, t_body: &Thm, eigen: &FreeVar) -> TypeError {
    TypeError::PiMismatch {
        expected: t_pi.subject().clone(),
        found: Term::pi(eigen.tag().clone(), t_body.ty().close(eigen)),
    }
}

/// From `M : Πx:A. B` (up to weak head reduction) and `N : A'` with
/// `A =β A'`, `M N : B[x := N]`.
pub fn mk_app(t_fun: &Thm, t_arg: &Thm, fuel: u64) -> Result<Thm, TypeError> {
    same_spec(t_fun, t_arg)?;
    let Term::Pi(domain, codomain) = whnf(t_fun.ty(), fuel)? else {
        return Err(TypeError::NotAFunction { term: t_fun.subject().clone(), ty: t_fun.ty().clone() });
    };
    if !beta_eq(&domain, t_arg.ty(), fuel)? {
        return Err(TypeError::DomainMismatch { expected: (*domain).clone(), found: t_arg.ty().clone() });
    }
    Ok(t_fun.derive(Term::app(t_fun.subject().clone(), t_arg.subject().clone()), codomain.open(t_arg.subject())))
}

/// From `M : A` and `B : s` with `A =β B`, `M : B`.
pub fn mk_conv(t: &Thm, t_type: &Thm, fuel: u64) -> Result<Thm, TypeError> {
    same_spec(t, t_type)?;
    t_type.sort()?;
    if !beta_eq(t.ty(), t_type.subject(), fuel)? {
        return Err(TypeError::NotConvertible { from: t.ty().clone(), to: t_type.subject().clone() });
    }
    Ok(t.derive(t.subject().clone(), t_type.subject().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ginf::ginf_check;
    use crate::syntax::DEFAULT_FUEL;

    fn star() -> SortName {
        SortName::from_static("*")
    }
    fn boxs() -> SortName {
        SortName::from_static("#")
    }
    fn coc() -> Arc<PtsSpec> {
        Arc::new(PtsSpec::coc())
    }
    fn n(s: &'static str) -> Name {
        Name::from_static(s)
    }
    fn sound(t: &Thm) {
        assert_eq!(ginf_check(t.spec(), t.judgment(), DEFAULT_FUEL), Ok(true), "{}", t.judgment());
    }

    /// `A^* : *` and `a^{A^*} : A^*`.
    fn a_and_big_a(spec: &Arc<PtsSpec>) -> (Thm, Thm) {
        let big_a = mk_var(&mk_sort(spec, &star()).unwrap(), n("A")).unwrap();
        let a = mk_var(&big_a, n("a")).unwrap();
        (big_a, a)
    }

    #[test]
    fn sorts() {
        let spec = coc();
        let t = mk_sort(&spec, &star()).unwrap();
        assert_eq!(t.ty(), &Term::Sort(boxs()));
        assert_eq!(mk_sort(&spec, &boxs()).unwrap_err(), TypeError::NoAxiom(boxs()));

        let ambiguous = Arc::new(
            PtsSpec::new([star(), boxs()], [(star(), boxs()), (star(), star())], []).unwrap(),
        );
        assert_eq!(mk_sort(&ambiguous, &star()).unwrap_err(), TypeError::AmbiguousAxiom(star()));
    }

    #[test]
    fn vars() {
        let spec = coc();
        let (big_a, a) = a_and_big_a(&spec);
        assert_eq!(a.subject(), &Term::var(n("a"), big_a.subject().clone()));
        assert_eq!(a.ty(), big_a.subject());
        assert!(matches!(mk_var(&a, n("b")), Err(TypeError::NotASort { .. })));
        sound(&a);
    }

    #[test]
    fn identity_and_application() {
        let spec = coc();
        let (big_a, a) = a_and_big_a(&spec);
        let a_var = a.subject().as_free().unwrap().clone();
        let arrow = mk_pi(&big_a, &big_a, &a_var).unwrap();
        assert_eq!(arrow.subject(), &Term::arrow(big_a.subject().clone(), big_a.subject().clone()));
        assert_eq!(arrow.ty(), &Term::Sort(star()));

        let id = mk_lam(&a, &arrow, &a_var).unwrap();
        assert_eq!(id.subject(), &Term::lam(big_a.subject().clone(), Term::bound(0)));
        let applied = mk_app(&id, &a, DEFAULT_FUEL).unwrap();
        assert_eq!(applied.ty(), big_a.subject());
        for t in [&arrow, &id, &applied] {
            sound(t);
        }
        assert!(matches!(mk_app(&a, &a, DEFAULT_FUEL), Err(TypeError::NotAFunction { .. })));
    }

    #[test]
    fn pi_over_kinds() {
        let spec = coc();
        let s = mk_sort(&spec, &star()).unwrap();
        let x0 = FreeVar::new(n("x0"), Term::Sort(star()));
        let t = mk_pi(&s, &s, &x0).unwrap();
        assert_eq!(t.ty(), &Term::Sort(boxs()));
        sound(&t);
        let stlc = Arc::new(PtsSpec::stlc());
        let s = mk_sort(&stlc, &star()).unwrap();
        assert_eq!(mk_pi(&s, &s, &x0).unwrap_err(), TypeError::NoRule(boxs(), boxs()));
    }

    #[test]
    fn constant_function() {
        let spec = coc();
        let (big_a, a) = a_and_big_a(&spec);
        let y = FreeVar::new(n("y"), big_a.subject().clone());
        let arrow = mk_pi(&big_a, &big_a, &y).unwrap();
        let k = mk_lam(&a, &arrow, &y).unwrap();
        assert_eq!(k.subject(), &Term::lam(big_a.subject().clone(), a.subject().clone()));
        sound(&k);
    }

    #[test]
    fn escaping_eigenvariable() {
        // P : A -> *, h : P a. Binding a in a term mentioning h leaves a free.
        let spec = coc();
        let (big_a, a) = a_and_big_a(&spec);
        let a_var = a.subject().as_free().unwrap().clone();
        let s = mk_sort(&spec, &star()).unwrap();
        let pred = mk_pi(&big_a, &s, &FreeVar::new(n("z"), big_a.subject().clone())).unwrap();
        let p = mk_var(&pred, n("P")).unwrap();
        let pa = mk_app(&p, &a, DEFAULT_FUEL).unwrap();
        let h = mk_var(&pa, n("h")).unwrap();
        // Binding a in P a itself is fine.
        let pi_ty = mk_pi(&big_a, &pa, &a_var).unwrap();
        assert_eq!(mk_lam(&h, &pi_ty, &a_var).unwrap_err(), TypeError::SideConditionViolated { eigen: a_var.clone() });
    }

    #[test]
    fn conversion() {
        let spec = coc();
        let s = mk_sort(&spec, &star()).unwrap();
        let b = mk_var(&s, n("B")).unwrap();
        let redex_ty = Term::app(Term::lam(Term::Sort(star()), Term::bound(0)), b.subject().clone());
        // Build x : (λA:*. A) B via the identity on * applied to B.
        let big_a = FreeVar::new(n("A"), Term::Sort(star()));
        let a_thm = mk_var(&s, n("A")).unwrap();
        let star_to_star = mk_pi(&s, &s, &big_a).unwrap();
        let id_star = mk_lam(&a_thm, &star_to_star, &big_a).unwrap();
        let redex = mk_app(&id_star, &b, DEFAULT_FUEL).unwrap();
        assert_eq!(redex.subject(), &redex_ty);
        let x = mk_var(&redex, n("x")).unwrap();
        let x_at_b = mk_conv(&x, &b, DEFAULT_FUEL).unwrap();
        assert_eq!(x_at_b.ty(), b.subject());
        sound(&x_at_b);
        assert_eq!(mk_conv(&b, &b, DEFAULT_FUEL).unwrap_err(), TypeError::NotConvertible {
            from: Term::Sort(star()),
            to: b.subject().clone()
        });
        let same = mk_conv(&b, &s, DEFAULT_FUEL).unwrap();
        assert_eq!(same.judgment(), b.judgment());
    }

    #[test]
    fn app_with_reducible_domain() {
        // f : (λA:*. A) B -> B accepts b : B.
        let spec = coc();
        let s = mk_sort(&spec, &star()).unwrap();
        let b = mk_var(&s, n("B")).unwrap();
        let big_a = FreeVar::new(n("A"), Term::Sort(star()));
        let id_star = mk_lam(&mk_var(&s, n("A")).unwrap(), &mk_pi(&s, &s, &big_a).unwrap(), &big_a).unwrap();
        let redex = mk_app(&id_star, &b, DEFAULT_FUEL).unwrap();
        let f_ty = mk_pi(&redex, &b, &FreeVar::new(n("u"), redex.subject().clone())).unwrap();
        let f = mk_var(&f_ty, n("f")).unwrap();
        let arg = mk_var(&b, n("b")).unwrap();
        let out = mk_app(&f, &arg, DEFAULT_FUEL).unwrap();
        assert_eq!(out.ty(), b.subject());
        sound(&out);
    }

    #[test]
    fn spec_mismatch() {
        let t1 = mk_sort(&coc(), &star()).unwrap();
        let t2 = mk_sort(&Arc::new(PtsSpec::stlc()), &star()).unwrap();
        let x = FreeVar::new(n("x"), Term::Sort(star()));
        assert_eq!(mk_pi(&t1, &t2, &x).unwrap_err(), TypeError::SpecMismatch);
        // Equal specs in different allocations are fine.
        let t3 = mk_sort(&coc(), &star()).unwrap();
        assert!(mk_pi(&t1, &t3, &x).is_ok());
    }

    #[test]
    fn tag_mismatch() {
        let spec = coc();
        let (big_a, _) = a_and_big_a(&spec);
        let wrong = FreeVar::new(n("y"), Term::Sort(star()));
        assert!(matches!(mk_pi(&big_a, &big_a, &wrong), Err(TypeError::TagMismatch { .. })));
    }
}
