use std::sync::Arc;

use super::names::{Name, SortName};

/// A pseudo-term in locally nameless form.
///
/// Binders carry no names: variables bound by `Pi`/`Lam` are de Bruijn
/// indices (`Bound`), so alpha-equivalent terms are identical values.
/// Free variables carry their name together with a tag term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Sort(SortName),
    Bound(u32),
    Free(FreeVar),
    Pi(Arc<Term>, Arc<Term>),
    Lam(Arc<Term>, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
}

/// A tagged free variable `x^A`.
///
/// Identity is the pair (name, tag): `x^A` and `x^B` are different
/// variables whenever `A` and `B` differ structurally. The tag is a label;
/// it is never reduced and never substituted into.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeVar {
    name: Name,
    tag: Arc<Term>,
}

impl FreeVar {
    /// Panics if `tag` has dangling bound indices.
    pub fn new(name: Name, tag: Term) -> Self {
        assert!(tag.is_locally_closed(), "free variable tag must be locally closed");
        FreeVar { name, tag: Arc::new(tag) }
    }

    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn tag(&self) -> &Term {
        &self.tag
    }

    pub fn with_name(&self, name: Name) -> Self {
        FreeVar { name, tag: self.tag.clone() }
    }
}

impl Term {
    pub fn sort(name: SortName) -> Self {
        Term::Sort(name)
    }

    /// The unit tag `_`.
    pub fn unit() -> Self {
        Term::Sort(SortName::unit())
    }

    pub fn bound(index: u32) -> Self {
        Term::Bound(index)
    }

    pub fn free(var: FreeVar) -> Self {
        Term::Free(var)
    }

    pub fn var(name: Name, tag: Term) -> Self {
        Term::Free(FreeVar::new(name, tag))
    }

    pub fn pi(domain: Term, codomain: Term) -> Self {
        Term::Pi(Arc::new(domain), Arc::new(codomain))
    }

    /// Non-dependent function type `domain -> codomain`; `codomain` is
    /// read outside the new binder.
    pub fn arrow(domain: Term, codomain: Term) -> Self {
        Term::pi(domain, codomain.shift(1, 0))
    }

    pub fn lam(domain: Term, body: Term) -> Self {
        Term::Lam(Arc::new(domain), Arc::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Self {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// Left-nested application `head a1 a2 ...`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Self {
        args.into_iter().fold(head, Term::app)
    }

    pub fn as_sort(&self) -> Option<&SortName> {
        match self {
            Term::Sort(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeVar> {
        match self {
            Term::Free(v) => Some(v),
            _ => None,
        }
    }

    /// Node count; tags included, one node for the variable itself.
    pub fn size(&self) -> usize {
        match self {
            Term::Sort(_) | Term::Bound(_) => 1,
            Term::Free(v) => 1 + v.tag().size(),
            Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Nesting depth of tags: 0 for tag-free terms, 1 for `x^*`, 2 for
    /// `x^{y^*}`.
    pub fn tag_depth(&self) -> usize {
        match self {
            Term::Sort(_) | Term::Bound(_) => 0,
            Term::Free(v) => 1 + v.tag().tag_depth(),
            Term::Pi(a, b) | Term::Lam(a, b) | Term::App(a, b) => a.tag_depth().max(b.tag_depth()),
        }
    }

    /// Number of enclosing binders the term needs before it is closed.
    /// Tags are locally closed by construction and are not inspected.
    pub fn dangling_depth(&self) -> u32 {
        match self {
            Term::Sort(_) | Term::Free(_) => 0,
            Term::Bound(i) => i + 1,
            Term::App(f, a) => f.dangling_depth().max(a.dangling_depth()),
            Term::Pi(a, b) | Term::Lam(a, b) => a.dangling_depth().max(b.dangling_depth().saturating_sub(1)),
        }
    }

    pub fn is_locally_closed(&self) -> bool {
        self.dangling_depth() == 0
    }

    /// Whether index `index` (counted from this point) occurs outside tags.
    pub fn has_bound(&self, index: u32) -> bool {
        match self {
            Term::Sort(_) | Term::Free(_) => false,
            Term::Bound(i) => *i == index,
            Term::App(f, a) => f.has_bound(index) || a.has_bound(index),
            Term::Pi(a, b) | Term::Lam(a, b) => a.has_bound(index) || b.has_bound(index + 1),
        }
    }

    /// Splits `f a1 ... an` into `f` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Term {
        Term::sort(SortName::from_static("*"))
    }

    #[test]
    fn size_counts_tags() {
        let a = Term::var(Name::from_static("A"), star());
        assert_eq!(a.size(), 2);
        let x = Term::var(Name::from_static("a"), a.clone());
        assert_eq!(x.size(), 3);
        assert_eq!(Term::app(Term::lam(a.clone(), Term::bound(0)), x).size(), 8);
    }

    #[test]
    fn local_closure() {
        assert!(Term::lam(star(), Term::bound(0)).is_locally_closed());
        assert!(!Term::bound(0).is_locally_closed());
        assert!(!Term::lam(star(), Term::bound(1)).is_locally_closed());
        assert_eq!(Term::pi(Term::bound(0), Term::bound(0)).dangling_depth(), 1);
    }

    #[test]
    #[should_panic]
    fn open_tag_rejected() {
        FreeVar::new(Name::from_static("x"), Term::bound(0));
    }

    #[test]
    fn variable_identity_includes_tag() {
        let a = FreeVar::new(Name::from_static("x"), star());
        let b = FreeVar::new(Name::from_static("x"), Term::sort(SortName::from_static("#")));
        assert_ne!(a, b);
        assert_eq!(a, FreeVar::new(Name::from_static("x"), star()));
    }

    #[test]
    fn arrow_shifts_codomain() {
        let t = Term::lam(star(), Term::arrow(Term::bound(0), Term::bound(0)));
        assert_eq!(t, Term::lam(star(), Term::pi(Term::bound(0), Term::bound(1))));
    }
}
