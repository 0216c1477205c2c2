use std::collections::BTreeSet;
use std::fmt::{self, Write};

use crate::syntax::{hfv, FreeVar, Term};

/// Renders a term in the surface syntax accepted by
/// [`parse_term`](super::parse_term).
///
/// Bound variables get the first of `x0, x1, ...` not used by an enclosing
/// binder or by any free variable of the term. A product whose body does
/// not use its variable prints as an arrow.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Printer::new(t).term(&mut out, t, Prec::Top).expect("writing to a String cannot fail");
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    App,
    Atom,
}

struct Printer {
    taken: BTreeSet<String>,
    scope: Vec<String>,
}

impl Printer {
    fn new(t: &Term) -> Self {
        let taken = hfv(t).iter().map(|v| v.name().as_str().to_string()).collect();
        Printer { taken, scope: Vec::new() }
    }

    fn fresh(&self) -> String {
        (0..)
            .map(|i| format!("x{i}"))
            .find(|n| !self.taken.contains(n) && !self.scope.contains(n))
            .expect("unbounded supply")
    }

    fn term(&mut self, out: &mut String, t: &Term, prec: Prec) -> fmt::Result {
        match t {
            Term::Sort(s) => out.write_str(s.as_str()),
            Term::Bound(i) => match self.scope.len().checked_sub(*i as usize + 1) {
                Some(k) => out.write_str(&self.scope[k]),
                None => write!(out, "%{i}"),
            },
            Term::Free(v) => free_var(out, v),
            Term::App(f, a) => {
                let paren = prec > Prec::App;
                open(out, paren)?;
                self.term(out, f, Prec::App)?;
                out.write_char(' ')?;
                self.term(out, a, Prec::Atom)?;
                close(out, paren)
            }
            Term::Pi(a, b) if !b.has_bound(0) => {
                let paren = prec > Prec::Top;
                open(out, paren)?;
                self.term(out, a, Prec::App)?;
                out.write_str(" -> ")?;
                // Placeholder for the unused binder, so outer indices resolve.
                self.scope.push(String::new());
                let r = self.term(out, b, Prec::Top);
                self.scope.pop();
                r?;
                close(out, paren)
            }
            Term::Pi(a, b) | Term::Lam(a, b) => {
                let paren = prec > Prec::Top;
                open(out, paren)?;
                out.write_str(if matches!(t, Term::Pi(..)) { "!" } else { "\\" })?;
                let name = self.fresh();
                write!(out, "{name}:")?;
                self.term(out, a, Prec::Top)?;
                out.write_str(". ")?;
                self.scope.push(name);
                let r = self.term(out, b, Prec::Top);
                self.scope.pop();
                r?;
                close(out, paren)
            }
        }
    }
}

fn free_var(out: &mut String, v: &FreeVar) -> fmt::Result {
    write!(out, "{}^{{", v.name())?;
    Printer::new(v.tag()).term(out, v.tag(), Prec::Top)?;
    out.write_char('}')
}

fn open(out: &mut String, paren: bool) -> fmt::Result {
    if paren {
        out.write_char('(')?;
    }
    Ok(())
}

fn close(out: &mut String, paren: bool) -> fmt::Result {
    if paren {
        out.write_char(')')?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Display for FreeVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        free_var(&mut out, self)?;
        f.write_str(&out)
    }
}

impl fmt::Debug for FreeVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
