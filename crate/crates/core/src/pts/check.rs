//! Syntax-directed checking of contextful judgments. Weakening is folded
//! into context lookup and conversion into the beta-equality tests at
//! application, abstraction and the final judgment comparison.

use crate::error::TypeError;
use crate::spec::PtsSpec;
use crate::syntax::{beta_eq, fresh_var, hfv2, whnf, FreeVar, SortName, Term, VarSet};

use super::context::{Context, ContextfulJudgment};

/// Which premise a sort was demanded for; selects the error variant.
#[derive(Clone, Copy)]
enum Role {
    Domain,
    Codomain,
    Other,
}

struct Checker<'a> {
    spec: &'a PtsSpec,
    fuel: u64,
}

impl Checker<'_> {
    fn infer(&self, ctx: &Context, m: &Term) -> Result<Term, TypeError> {
        match m {
            Term::Sort(s) => {
                if !self.spec.has_sort(s) {
                    return Err(TypeError::UnknownSort(s.clone()));
                }
                self.spec.axiom_fn(s).map(Term::Sort).ok_or_else(|| TypeError::NoAxiom(s.clone()))
            }
            Term::Bound(_) => Err(TypeError::NotLocallyClosed(m.clone())),
            Term::Free(v) => ctx.lookup(v).cloned().ok_or_else(|| TypeError::UnboundVariable(v.clone())),
            Term::Pi(a, b) => {
                let s1 = self.sort_of(ctx, a, Role::Domain)?;
                let y = self.eigen(ctx, a, b);
                let inner = ctx.extended(y.clone(), (**a).clone());
                let s2 = self.sort_of(&inner, &b.open(&Term::Free(y)), Role::Codomain)?;
                self.spec
                    .rule_fn(&s1, &s2)
                    .map(Term::Sort)
                    .ok_or(TypeError::NoRule(s1, s2))
            }
            Term::Lam(a, body) => {
                let y = self.eigen(ctx, a, body);
                let inner = ctx.extended(y.clone(), (**a).clone());
                let body_ty = self.infer(&inner, &body.open(&Term::Free(y.clone())))?;
                let pi = Term::pi((**a).clone(), body_ty.close(&y));
                self.sort_of(ctx, &pi, Role::Other)?;
                Ok(pi)
            }
            Term::App(f, n) => {
                let f_ty = self.infer(ctx, f)?;
                let Term::Pi(dom, cod) = whnf(&f_ty, self.fuel)? else {
                    return Err(TypeError::NotAFunction { term: (**f).clone(), ty: f_ty });
                };
                let n_ty = self.infer(ctx, n)?;
                if !beta_eq(&dom, &n_ty, self.fuel)? {
                    return Err(TypeError::DomainMismatch { expected: (*dom).clone(), found: n_ty });
                }
                Ok(cod.open(n))
            }
        }
    }

    fn sort_of(&self, ctx: &Context, t: &Term, role: Role) -> Result<SortName, TypeError> {
        let ty = self.infer(ctx, t)?;
        if let Term::Sort(s) = &ty {
            return Ok(s.clone());
        }
        if let Term::Sort(s) = whnf(&ty, self.fuel)? {
            return Ok(s);
        }
        let t = t.clone();
        Err(match role {
            Role::Domain => TypeError::IllegalDomain { domain: t, ty },
            Role::Codomain => TypeError::IllegalCodomain { codomain: t, ty },
            Role::Other => TypeError::NotASort { term: t, ty },
        })
    }

    /// A variable tagged with the binder domain that is neither declared
    /// nor mentioned anywhere in the binder.
    fn eigen(&self, ctx: &Context, domain: &Term, body: &Term) -> FreeVar {
        let mut avoid: VarSet = hfv2(domain, body);
        avoid.extend(ctx.dom());
        fresh_var("x", domain, &avoid)
    }

    fn check_context(&self, ctx: &Context) -> Result<(), TypeError> {
        for (index, decl) in ctx.iter().enumerate() {
            let prefix = ctx.prefix(index);
            self.sort_of(&prefix, &decl.ty, Role::Other)
                .map_err(|reason| TypeError::IllFormedContext { index, reason: Box::new(reason) })?;
        }
        Ok(())
    }

    fn check(&self, j: &ContextfulJudgment) -> Result<bool, TypeError> {
        self.check_context(&j.ctx)?;
        let inferred = self.infer(&j.ctx, &j.subject)?;
        if inferred == j.ty {
            return Ok(true);
        }
        if !beta_eq(&inferred, &j.ty, self.fuel)? {
            return Ok(false);
        }
        match self.sort_of(&j.ctx, &j.ty, Role::Other) {
            Ok(_) => Ok(true),
            Err(e) if e.is_fuel_exhausted() => Err(e),
            Err(_) => Ok(false),
        }
    }
}

fn checker(spec: &PtsSpec, fuel: u64) -> Result<Checker<'_>, TypeError> {
    if !spec.is_functional() {
        return Err(TypeError::NonFunctionalSpec);
    }
    Ok(Checker { spec, fuel })
}

/// The type of `m` under `ctx`, assuming `ctx` is well-formed (see
/// [`check_context`]). The result is the natural type, principal up to
/// beta equality.
pub fn infer_type(spec: &PtsSpec, ctx: &Context, m: &Term, fuel: u64) -> Result<Term, TypeError> {
    checker(spec, fuel)?.infer(ctx, m)
}

/// Checks `ctx` is a context, reporting the first ill-formed declaration.
pub fn check_context(spec: &PtsSpec, ctx: &Context, fuel: u64) -> Result<(), TypeError> {
    checker(spec, fuel)?.check_context(ctx)
}

/// `Ok(false)` for an ill-formed context; errors only for exhausted fuel or
/// a non-functional spec.
pub fn wf_context(spec: &PtsSpec, ctx: &Context, fuel: u64) -> Result<bool, TypeError> {
    match check_context(spec, ctx, fuel) {
        Ok(()) => Ok(true),
        Err(e) if e.is_fuel_exhausted() || e == TypeError::NonFunctionalSpec => Err(e),
        Err(_) => Ok(false),
    }
}

/// Decides `Γ ⊢ M : A`.
///
/// `Ok(false)` means the subject's type is not convertible to `A` (or `A`
/// is not a legal conversion target); `Err` carries the reason the context
/// or subject failed to check, with fuel exhaustion kept distinct.
pub fn check_judgment(spec: &PtsSpec, j: &ContextfulJudgment, fuel: u64) -> Result<bool, TypeError> {
    checker(spec, fuel)?.check(j)
}

/// [`check_judgment`] collapsed to accept/reject, keeping fuel exhaustion.
pub(crate) fn accepts(spec: &PtsSpec, j: &ContextfulJudgment, fuel: u64) -> Result<bool, TypeError> {
    match check_judgment(spec, j, fuel) {
        Ok(b) => Ok(b),
        Err(e) if e.is_fuel_exhausted() => Err(e),
        Err(_) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pts::Decl;
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

    /// A^* : *, a^{A^*} : A^*  and  (\x:A^*. x) a^{A^*}
    fn example() -> (Context, Term, Term) {
        let big_a = v("A", star());
        let a = v("a", Term::free(big_a.clone()));
        let ctx: Context = [Decl::annotated(big_a.clone()), Decl::annotated(a.clone())].into_iter().collect();
        let term = Term::app(Term::lam(Term::free(big_a.clone()), Term::bound(0)), Term::free(a));
        (ctx, term, Term::free(big_a))
    }

    #[test]
    fn sort_has_its_axiom() {
        let t = infer_type(&PtsSpec::coc(), &Context::empty(), &star(), DEFAULT_FUEL);
        assert_eq!(t, Ok(boxs()));
        assert_eq!(
            infer_type(&PtsSpec::coc(), &Context::empty(), &boxs(), DEFAULT_FUEL),
            Err(TypeError::NoAxiom(SortName::from_static("#")))
        );
    }

    #[test]
    fn worked_example() {
        let (ctx, term, ty) = example();
        assert_eq!(infer_type(&PtsSpec::coc(), &ctx, &term, DEFAULT_FUEL), Ok(ty.clone()));
        let j = ContextfulJudgment::new(ctx.clone(), term, ty);
        assert_eq!(check_judgment(&PtsSpec::coc(), &j, DEFAULT_FUEL), Ok(true));
        assert_eq!(wf_context(&PtsSpec::coc(), &ctx, DEFAULT_FUEL), Ok(true));
    }

    #[test]
    fn polymorphic_identity() {
        let id = Term::lam(star(), Term::lam(Term::bound(0), Term::bound(0)));
        let expected = Term::pi(star(), Term::pi(Term::bound(0), Term::bound(1)));
        assert_eq!(infer_type(&PtsSpec::system_f(), &Context::empty(), &id, DEFAULT_FUEL), Ok(expected));
        // Needs (#, *, *).
        assert!(matches!(
            infer_type(&PtsSpec::stlc(), &Context::empty(), &id, DEFAULT_FUEL),
            Err(TypeError::NoRule(..))
        ));
    }

    #[test]
    fn judgment_examples() {
        let spec = PtsSpec::coc();
        let j = |s: Term, t: Term| ContextfulJudgment::new(Context::empty(), s, t);
        assert_eq!(check_judgment(&spec, &j(star(), boxs()), DEFAULT_FUEL), Ok(true));
        assert_eq!(check_judgment(&spec, &j(star(), star()), DEFAULT_FUEL), Ok(false));
    }

    #[test]
    fn conversion_at_judgment() {
        let (ctx, term, ty) = example();
        // (\T:*. T) A^*  is beta-equal to A^*.
        let redex = Term::app(Term::lam(star(), Term::bound(0)), ty.clone());
        let j = ContextfulJudgment::new(ctx.clone(), term.clone(), redex);
        assert_eq!(check_judgment(&PtsSpec::coc(), &j, DEFAULT_FUEL), Ok(true));
        // In stlc the redex itself is not typable (needs # -> * abstraction).
        assert_eq!(check_judgment(&PtsSpec::stlc(), &j, DEFAULT_FUEL), Ok(false));
    }

    #[test]
    fn wf_context_examples() {
        let spec = PtsSpec::coc();
        assert_eq!(wf_context(&spec, &Context::empty(), DEFAULT_FUEL), Ok(true));
        let big_a = v("A", star());
        let a = v("a", Term::free(big_a.clone()));
        let lonely: Context = [Decl::annotated(a)].into_iter().collect();
        assert_eq!(wf_context(&spec, &lonely, DEFAULT_FUEL), Ok(false));
        assert!(matches!(
            check_context(&spec, &lonely, DEFAULT_FUEL),
            Err(TypeError::IllFormedContext { index: 0, .. })
        ));
    }

    #[test]
    fn unbound_and_mismatch() {
        let spec = PtsSpec::coc();
        let (ctx, _, ty) = example();
        let b = v("b", star());
        assert_eq!(
            infer_type(&spec, &ctx, &Term::free(b.clone()), DEFAULT_FUEL),
            Err(TypeError::UnboundVariable(b))
        );
        // (\x:A^*. x) A^*  -- argument is a type, not an inhabitant.
        let bad = Term::app(Term::lam(ty.clone(), Term::bound(0)), ty.clone());
        assert!(matches!(infer_type(&spec, &ctx, &bad, DEFAULT_FUEL), Err(TypeError::DomainMismatch { .. })));
        let not_fn = Term::app(ty.clone(), ty);
        assert!(matches!(infer_type(&spec, &ctx, &not_fn, DEFAULT_FUEL), Err(TypeError::NotAFunction { .. })));
    }

    #[test]
    fn tags_are_labels_in_contexts() {
        // A declaration whose tag disagrees with its type is still fine.
        let spec = PtsSpec::coc();
        let x = v("x", boxs());
        let ctx: Context = [Decl::new(x.clone(), star())].into_iter().collect();
        assert_eq!(infer_type(&spec, &ctx, &Term::free(x), DEFAULT_FUEL), Ok(star()));
    }

    #[test]
    fn nonfunctional_refused() {
        let s = |n| SortName::new(n).unwrap();
        let spec = PtsSpec::new([s("*"), s("#"), s("D")], [(s("*"), s("#")), (s("*"), s("D"))], []).unwrap();
        assert_eq!(infer_type(&spec, &Context::empty(), &star(), 10), Err(TypeError::NonFunctionalSpec));
    }

    #[test]
    fn fuel_propagates() {
        // The conversion target never normalizes.
        let w = Term::lam(star(), Term::app(Term::bound(0), Term::bound(0)));
        let omega = Term::app(w.clone(), w);
        let j = ContextfulJudgment::new(Context::empty(), star(), omega);
        assert!(matches!(check_judgment(&PtsSpec::coc(), &j, 20), Err(TypeError::FuelExhausted(_))));
    }
}
