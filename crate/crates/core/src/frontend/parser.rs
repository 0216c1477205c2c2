use std::collections::BTreeSet;

use crate::pts::{Context, Decl};
use crate::spec::PtsSpec;
use crate::syntax::{FreeVar, Name, SortName, Term};

use super::lexer::{lex, Span, Tok, Token};
use super::{ParseError, ParseErrorKind};

/// What bare names may refer to.
///
/// In context-free mode a name that is not bound by an enclosing binder is
/// an error; with a context, it refers to the declared variable of that
/// name. Word-shaped sort names (e.g. `Prop`) are recognised only if
/// listed; symbolic ones (`*`, `#`) always parse as sorts.
#[derive(Debug, Clone)]
pub struct ParseEnv {
    sorts: BTreeSet<SortName>,
    context: Option<Vec<FreeVar>>,
}

impl Default for ParseEnv {
    fn default() -> Self {
        ParseEnv {
            sorts: [SortName::from_static("*"), SortName::from_static("#")].into_iter().collect(),
            context: None,
        }
    }
}

impl ParseEnv {
    /// Context-free mode with the sorts `*` and `#`.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn for_spec(spec: &PtsSpec) -> Self {
        ParseEnv { sorts: spec.sorts().clone(), context: None }
    }

    /// Switches to contextful mode: bare names resolve to `ctx`.
    pub fn with_context(mut self, ctx: &Context) -> Self {
        self.context = Some(ctx.iter().map(|d| d.var.clone()).collect());
        self
    }

    pub fn is_contextful(&self) -> bool {
        self.context.is_some()
    }

    fn resolve(&self, word: &str, span: &Span) -> Result<Term, ParseError> {
        let Some(ctx) = &self.context else {
            return Err(ParseError { kind: ParseErrorKind::UnboundName(word.to_string()), span: span.clone() });
        };
        let mut hits = ctx.iter().filter(|v| v.name().as_str() == word);
        match (hits.next(), hits.next()) {
            (Some(v), None) => Ok(Term::Free(v.clone())),
            (Some(_), Some(_)) => {
                Err(ParseError { kind: ParseErrorKind::AmbiguousName(word.to_string()), span: span.clone() })
            }
            (None, _) => Err(ParseError { kind: ParseErrorKind::UnboundName(word.to_string()), span: span.clone() }),
        }
    }

    fn word_sort(&self, word: &str) -> Option<SortName> {
        if word == "_" {
            return Some(SortName::unit());
        }
        self.sorts.iter().find(|s| s.as_str() == word).cloned()
    }
}

/// A parsed term together with its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceTerm {
    pub text: String,
    pub tokens: Vec<Token>,
    pub term: Term,
}

impl SourceTerm {
    /// From the first token to the last.
    pub fn span(&self) -> Span {
        match (self.tokens.first(), self.tokens.last()) {
            (Some(a), Some(b)) => a.span.start..b.span.end,
            _ => 0..0,
        }
    }
}

pub fn parse_term(text: &str, env: &ParseEnv) -> Result<Term, ParseError> {
    parse_source(text, env).map(|s| s.term)
}

pub fn parse_source(text: &str, env: &ParseEnv) -> Result<SourceTerm, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { toks: &tokens, pos: 0, env, scope: Vec::new(), eof: text.len() };
    let term = p.term()?;
    p.finish()?;
    Ok(SourceTerm { text: text.to_string(), tokens, term })
}

/// Reads one declaration per line: `name^{tag} : type`, `name^s : type` or
/// `name : type`. Types and tags may refer to earlier declarations by bare
/// name. An untagged declaration gets its type as tag when `annotated`,
/// and the unit tag `_` otherwise.
pub fn parse_context(text: &str, env: &ParseEnv, annotated: bool) -> Result<Context, ParseError> {
    let mut ctx = Context::empty();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let base = offset;
        offset += line.len();
        let shift = |e: ParseError| ParseError { kind: e.kind, span: e.span.start + base..e.span.end + base };
        let tokens = lex(line).map_err(shift)?;
        if tokens.is_empty() {
            continue;
        }
        let scoped = ParseEnv { sorts: env.sorts.clone(), context: None }.with_context(&ctx);
        let mut p = Parser { toks: &tokens, pos: 0, env: &scoped, scope: Vec::new(), eof: line.len() };
        let (name, span) = p.name().map_err(shift)?;
        let tag = if p.eat(&Tok::Caret) { Some(p.tag().map_err(shift)?) } else { None };
        p.expect(&Tok::Colon, "`:`").map_err(shift)?;
        let ty = p.term().map_err(shift)?;
        p.finish().map_err(shift)?;
        let tag = tag.unwrap_or_else(|| if annotated { ty.clone() } else { Term::unit() });
        let var = FreeVar::new(name, tag);
        ctx.push(Decl::new(var, ty)).map_err(|e| ParseError {
            kind: ParseErrorKind::Context(e.to_string()),
            span: span.start + base..span.end + base,
        })?;
    }
    Ok(ctx)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    env: &'a ParseEnv,
    scope: Vec<String>,
    eof: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.eof..self.eof, |t| t.span.clone())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::syntax(format!("expected {wanted}, found {t}"), self.span()),
            None => ParseError::syntax(format!("expected {wanted}, found end of input"), self.span()),
        }
    }

    fn expect(&mut self, tok: &Tok, wanted: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(self.unexpected("end of input"));
        }
        Ok(())
    }

    fn name(&mut self) -> Result<(Name, Span), ParseError> {
        let span = self.span();
        let Some(Tok::Word(w)) = self.peek() else {
            return Err(self.unexpected("a name"));
        };
        let name = Name::new(w).map_err(|e| ParseError { kind: ParseErrorKind::BadName(e.to_string()), span: span.clone() })?;
        self.pos += 1;
        Ok((name, span))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if matches!(self.peek(), Some(Tok::Lambda | Tok::Pi)) {
            return self.binder();
        }
        let lhs = self.app()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            return Ok(Term::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn binder(&mut self) -> Result<Term, ParseError> {
        let is_lambda = self.peek() == Some(&Tok::Lambda);
        self.pos += 1;
        let (name, _) = self.name()?;
        self.expect(&Tok::Colon, "`:`")?;
        let domain = self.term()?;
        self.expect(&Tok::Dot, "`.`")?;
        self.scope.push(name.as_str().to_string());
        let body = self.term();
        self.scope.pop();
        let body = body?;
        Ok(if is_lambda { Term::lam(domain, body) } else { Term::pi(domain, body) })
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut head = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::LParen | Tok::Word(_) | Tok::Symbol(_)) => {
                    let arg = self.atom()?;
                    head = Term::app(head, arg);
                }
                Some(Tok::Lambda | Tok::Pi) => {
                    let arg = self.binder()?;
                    return Ok(Term::app(head, arg));
                }
                _ => return Ok(head),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Symbol(s)) => {
                self.pos += 1;
                symbol_sort(&s, span)
            }
            Some(Tok::Word(w)) => {
                if self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Caret) {
                    let (name, _) = self.name()?;
                    self.pos += 1;
                    let tag = self.tag()?;
                    return Ok(Term::var(name, tag));
                }
                self.pos += 1;
                if let Some(i) = self.scope.iter().rev().position(|n| *n == w) {
                    return Ok(Term::bound(i as u32));
                }
                if let Some(s) = self.env.word_sort(&w) {
                    return Ok(Term::Sort(s));
                }
                self.env.resolve(&w, &span)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// After `^`: `{term}` or a single sort token. Tags are closed, so the
    /// enclosing binders are not in scope.
    fn tag(&mut self) -> Result<Term, ParseError> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Tok::LBrace) => {
                self.pos += 1;
                let outer = std::mem::take(&mut self.scope);
                let t = self.term();
                self.scope = outer;
                let t = t?;
                self.expect(&Tok::RBrace, "`}`")?;
                Ok(t)
            }
            Some(Tok::Symbol(s)) => {
                self.pos += 1;
                symbol_sort(&s, span)
            }
            Some(Tok::Word(w)) => match self.env.word_sort(&w) {
                Some(s) => {
                    self.pos += 1;
                    Ok(Term::Sort(s))
                }
                None => Err(ParseError::syntax("a tag other than a single sort needs braces: `^{...}`", span)),
            },
            _ => Err(self.unexpected("a tag")),
        }
    }
}

fn symbol_sort(s: &str, span: Span) -> Result<Term, ParseError> {
    SortName::new(s)
        .map(Term::Sort)
        .map_err(|e| ParseError { kind: ParseErrorKind::BadName(e.to_string()), span })
}
