//! Context-free typing: judgments `M : A` with no context.
//!
//! Every free variable carries its type as its tag, so the variable rule
//! only has to check that the tag is a type. Binders are checked in the
//! exists-fresh style: the body is opened with an eigenvariable `y^A` that
//! does not occur hereditarily in the binder, and the result is closed
//! again. Because a tag is never rewritten by closing, any variable whose
//! tag mentions the eigenvariable keeps it free; such an escape is a
//! side-condition violation.

use std::cell::RefCell;
use std::collections::HashSet;
use std::fmt;

use crate::error::TypeError;
use crate::spec::PtsSpec;
use crate::syntax::{beta_eq, fresh_var, hfv, hfv2, whnf, FreeVar, SortName, Term, VarSet};

/// `M : A`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GinfJudgment {
    pub subject: Term,
    pub ty: Term,
}

impl GinfJudgment {
    pub fn new(subject: Term, ty: Term) -> Self {
        GinfJudgment { subject, ty }
    }
}

impl fmt::Display for GinfJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.subject, self.ty)
    }
}

/// Picks the eigenvariable for a binder: the first of `x0, x1, ...`
/// tagged with `domain` that is not in `avoid`, and opens `body` with it.
pub fn eigen_open(domain: &Term, body: &Term, avoid: &VarSet) -> (FreeVar, Term) {
    eigen_open_with("x", domain, body, avoid)
}

fn eigen_open_with(prefix: &str, domain: &Term, body: &Term, avoid: &VarSet) -> (FreeVar, Term) {
    let y = fresh_var(prefix, domain, avoid);
    let opened = body.open(&Term::Free(y.clone()));
    (y, opened)
}

#[derive(Clone, Copy)]
enum Binder {
    Pi,
    Lam,
}

/// A context-free checker for one spec.
///
/// Holds a cache of variables whose tags have already been checked; create
/// one per task rather than sharing it across threads.
pub struct GinfChecker<'a> {
    spec: &'a PtsSpec,
    fuel: u64,
    prefix: String,
    checked_tags: RefCell<HashSet<FreeVar>>,
}

impl<'a> GinfChecker<'a> {
    pub fn new(spec: &'a PtsSpec, fuel: u64) -> Result<Self, TypeError> {
        if !spec.is_functional() {
            return Err(TypeError::NonFunctionalSpec);
        }
        Ok(GinfChecker { spec, fuel, prefix: "x".to_string(), checked_tags: RefCell::new(HashSet::new()) })
    }

    /// Uses `prefix0, prefix1, ...` for eigenvariables instead of `x0, ...`.
    pub fn with_fresh_prefix(mut self, prefix: &str) -> Self {
        assert!(crate::syntax::Name::new(prefix).is_ok(), "invalid eigenvariable prefix");
        self.prefix = prefix.to_string();
        self
    }

    pub fn infer(&self, m: &Term) -> Result<Term, TypeError> {
        match m {
            Term::Sort(s) => {
                if !self.spec.has_sort(s) {
                    return Err(TypeError::UnknownSort(s.clone()));
                }
                self.spec.axiom_fn(s).map(Term::Sort).ok_or_else(|| TypeError::NoAxiom(s.clone()))
            }
            Term::Bound(_) => Err(TypeError::NotLocallyClosed(m.clone())),
            Term::Free(v) => {
                self.check_tag(v)?;
                Ok(v.tag().clone())
            }
            Term::Pi(a, b) => {
                let s1 = self.sort_of(a)?.map_err(|ty| TypeError::IllegalDomain { domain: (**a).clone(), ty })?;
                let (_, body) = eigen_open_with(&self.prefix, a, b, &hfv2(a, b));
                let s2 = self
                    .sort_of(&body)
                    .and_then(|r| r.map_err(|ty| TypeError::IllegalCodomain { codomain: body.clone(), ty }))
                    .map_err(|e| self.explain(a, b, e, Binder::Pi))?;
                self.spec.rule_fn(&s1, &s2).map(Term::Sort).ok_or(TypeError::NoRule(s1, s2))
            }
            Term::Lam(a, m_body) => {
                let (y, body) = eigen_open_with(&self.prefix, a, m_body, &hfv2(a, m_body));
                let body_ty = self.infer(&body).map_err(|e| self.explain(a, m_body, e, Binder::Lam))?;
                let codomain = body_ty.close(&y);
                if hfv(&codomain).contains(&y) {
                    return Err(TypeError::SideConditionViolated { eigen: y });
                }
                let pi = Term::pi((**a).clone(), codomain);
                self.sort_of(&pi)?.map_err(|ty| TypeError::NotASort { term: pi.clone(), ty })?;
                Ok(pi)
            }
            Term::App(f, n) => {
                let f_ty = self.infer(f)?;
                let Term::Pi(dom, cod) = whnf(&f_ty, self.fuel)? else {
                    return Err(TypeError::NotAFunction { term: (**f).clone(), ty: f_ty });
                };
                let n_ty = self.infer(n)?;
                if !beta_eq(&dom, &n_ty, self.fuel)? {
                    return Err(TypeError::DomainMismatch { expected: (*dom).clone(), found: n_ty });
                }
                Ok(cod.open(n))
            }
        }
    }

    /// `Ok(Ok(s))` if `t : s`; `Ok(Err(ty))` if `t : ty` with `ty` not a sort.
    fn sort_of(&self, t: &Term) -> Result<Result<SortName, Term>, TypeError> {
        let ty = self.infer(t)?;
        if let Term::Sort(s) = &ty {
            return Ok(Ok(s.clone()));
        }
        match whnf(&ty, self.fuel)? {
            Term::Sort(s) => Ok(Ok(s)),
            _ => Ok(Err(ty)),
        }
    }

    fn check_tag(&self, v: &FreeVar) -> Result<(), TypeError> {
        if self.checked_tags.borrow().contains(v) {
            return Ok(());
        }
        self.sort_of(v.tag())?.map_err(|ty| TypeError::TagNotASort { var: v.clone(), ty })?;
        self.checked_tags.borrow_mut().insert(v.clone());
        Ok(())
    }

    /// Refines a failure under a binder. If the binder body only checks
    /// when opened with a variable that already occurs in it (typically
    /// inside another variable's tag), the term is the result of binding a
    /// variable that something else still depends on: report that variable
    /// as violating the side condition instead of the downstream mismatch.
    fn explain(&self, domain: &Term, body: &Term, err: TypeError, binder: Binder) -> TypeError {
        if err.is_fuel_exhausted() || matches!(err, TypeError::SideConditionViolated { .. }) {
            return err;
        }
        for z in hfv(body).into_iter().filter(|z| z.tag() == domain) {
            let opened = body.open(&Term::Free(z.clone()));
            let checks = match binder {
                Binder::Pi => matches!(self.sort_of(&opened), Ok(Ok(_))),
                Binder::Lam => self.infer(&opened).is_ok(),
            };
            if checks {
                return TypeError::SideConditionViolated { eigen: z };
            }
        }
        err
    }

    /// Decides `M : A`; see [`crate::pts::check_judgment`] for the meaning
    /// of `Ok(false)` versus `Err`.
    pub fn check(&self, j: &GinfJudgment) -> Result<bool, TypeError> {
        let inferred = self.infer(&j.subject)?;
        if inferred == j.ty {
            return Ok(true);
        }
        if !beta_eq(&inferred, &j.ty, self.fuel)? {
            return Ok(false);
        }
        match self.sort_of(&j.ty) {
            Ok(Ok(_)) => Ok(true),
            Ok(Err(_)) => Ok(false),
            Err(e) if e.is_fuel_exhausted() => Err(e),
            Err(_) => Ok(false),
        }
    }
}

pub fn ginf_infer(spec: &PtsSpec, m: &Term, fuel: u64) -> Result<Term, TypeError> {
    GinfChecker::new(spec, fuel)?.infer(m)
}

pub fn ginf_check(spec: &PtsSpec, j: &GinfJudgment, fuel: u64) -> Result<bool, TypeError> {
    GinfChecker::new(spec, fuel)?.check(j)
}

/// [`ginf_check`] collapsed to accept/reject, keeping fuel exhaustion.
pub(crate) fn accepts(spec: &PtsSpec, j: &GinfJudgment, fuel: u64) -> Result<bool, TypeError> {
    match ginf_check(spec, j, fuel) {
        Ok(b) => Ok(b),
        Err(e) if e.is_fuel_exhausted() => Err(e),
        Err(_) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Name, DEFAULT_FUEL};

    fn star() -> Term {
        Term::sort(SortName::from_static("*"))
    }
    fn boxs() -> Term {
        Term::sort(SortName::from_static("#"))
    }
    fn v(name: &'static str, tag: Term) -> FreeVar {
        FreeVar::new(Name::from_static(name), tag)
    }

    #[test]
    fn sort_axiom() {
        assert_eq!(ginf_infer(&PtsSpec::coc(), &star(), DEFAULT_FUEL), Ok(boxs()));
    }

    #[test]
    fn worked_example() {
        let big_a = Term::var(Name::from_static("A"), star());
        let a = Term::var(Name::from_static("a"), big_a.clone());
        let term = Term::app(Term::lam(big_a.clone(), Term::bound(0)), a);
        assert_eq!(ginf_infer(&PtsSpec::coc(), &term, DEFAULT_FUEL), Ok(big_a));
    }

    #[test]
    fn polymorphic_identity() {
        let id = Term::lam(star(), Term::lam(Term::bound(0), Term::bound(0)));
        let ty = Term::pi(star(), Term::pi(Term::bound(0), Term::bound(1)));
        assert_eq!(ginf_check(&PtsSpec::system_f(), &GinfJudgment::new(id, ty), DEFAULT_FUEL), Ok(true));
    }

    #[test]
    fn eigen_open_names() {
        let tag_a = Term::var(Name::from_static("A"), star());
        let body = Term::bound(0);
        let (y, opened) = eigen_open(&tag_a, &body, &VarSet::new());
        assert_eq!(y.name().as_str(), "x0");
        assert_eq!(opened, Term::Free(y.clone()));

        let taken = VarSet::from([v("x0", tag_a.clone())]);
        assert_eq!(eigen_open(&tag_a, &body, &taken).0.name().as_str(), "x1");

        let other_tag = VarSet::from([v("x0", boxs())]);
        assert_eq!(eigen_open(&tag_a, &body, &other_tag).0.name().as_str(), "x0");
    }

    #[test]
    fn untagged_variable_is_not_typable() {
        let x = Term::var(Name::from_static("x"), Term::unit());
        assert!(ginf_infer(&PtsSpec::coc(), &x, DEFAULT_FUEL).is_err());
    }

    #[test]
    fn tag_must_be_a_type() {
        // a^{A^*} is a term, so b^{a^{A^*}} has a tag that is not a type.
        let big_a = Term::var(Name::from_static("A"), star());
        let a = Term::var(Name::from_static("a"), big_a);
        let b = Term::var(Name::from_static("b"), a);
        assert!(matches!(ginf_infer(&PtsSpec::coc(), &b, DEFAULT_FUEL), Err(TypeError::TagNotASort { .. })));
    }

    #[test]
    fn lam_side_condition_escape() {
        // \x:A^*. (\k:P x. k) h  with  h : P a.  The body only checks with
        // x := a, and h's tag would keep a free.
        let big_a = Term::var(Name::from_static("A"), star());
        let a = v("a", big_a.clone());
        let p = Term::var(Name::from_static("P"), Term::arrow(big_a.clone(), star()));
        let h = Term::var(Name::from_static("h"), Term::app(p.clone(), Term::Free(a.clone())));
        let body = Term::app(Term::lam(Term::app(p, Term::bound(0)), Term::bound(0)), h);
        let lam = Term::lam(big_a, body);
        assert_eq!(
            ginf_infer(&PtsSpec::lambda_p(), &lam, DEFAULT_FUEL),
            Err(TypeError::SideConditionViolated { eigen: a })
        );
    }

    #[test]
    fn binding_a_variable_another_tag_depends_on() {
        use crate::frontend::{parse_term, ParseEnv};
        let parse = |s: &str| parse_term(s, &ParseEnv::new()).unwrap();
        let spec = PtsSpec::coc();
        let q = "Q^{!x:A^*. P^{A^* -> *} x -> *}";
        let h = "h^{P^{A^* -> *} a^{A^*}}";
        let premise = parse(&format!("{q} a^{{A^*}} {h}"));
        assert_eq!(ginf_infer(&spec, &premise, DEFAULT_FUEL), Ok(star()));
        assert_eq!(ginf_infer(&spec, &parse("A^*"), DEFAULT_FUEL), Ok(star()));
        let conclusion = parse(&format!("!y:A^*. {q} y {h}"));
        let a = v("a", parse("A^*"));
        assert_eq!(
            ginf_check(&spec, &GinfJudgment::new(conclusion, star()), DEFAULT_FUEL),
            Err(TypeError::SideConditionViolated { eigen: a })
        );
    }

    #[test]
    fn inhabitation() {
        let big_a = Term::var(Name::from_static("A"), star());
        let spec = PtsSpec::coc();
        for ty in [star(), big_a.clone(), Term::arrow(big_a.clone(), big_a)] {
            let x = Term::var(Name::from_static("x0"), ty.clone());
            assert_eq!(ginf_check(&spec, &GinfJudgment::new(x, ty), DEFAULT_FUEL), Ok(true));
        }
    }

    #[test]
    fn fresh_prefix_does_not_change_results() {
        let spec = PtsSpec::coc();
        let id = Term::lam(star(), Term::lam(Term::bound(0), Term::bound(0)));
        let a = GinfChecker::new(&spec, DEFAULT_FUEL).unwrap().infer(&id).unwrap();
        let b = GinfChecker::new(&spec, DEFAULT_FUEL).unwrap().with_fresh_prefix("y").infer(&id).unwrap();
        assert_eq!(a, b);
    }
}
