//! Surface syntax: parsing and printing of terms and contexts.
//!
//! ```text
//! term ::= \x : term . term        λ  (also `λ`)
//!        | !x : term . term        Π  (also `Π`)
//!        | term -> term            non-dependent Π (also `→`)
//!        | term term               application, left-associative
//!        | ( term )
//!        | sort                    `*`, `#` (also `□`), `_` for the unit tag
//!        | name^{term}             tagged free variable; `name^*` for a sort tag
//!        | name                    bound variable, or a context reference
//! ```

mod lexer;
mod parser;
mod printer;

use std::ops::Range;

use thiserror::Error;

pub use lexer::{lex, Span, Tok, Token};
pub use parser::{parse_context, parse_source, parse_term, ParseEnv, SourceTerm};
pub use printer::print_term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnboundName(String),
    AmbiguousName(String),
    BadName(String),
    Context(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at {}..{}", describe(.kind), .span.start, .span.end)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Range<usize>,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(m) => format!("syntax error: {m}"),
        ParseErrorKind::UnboundName(n) => format!("unbound name `{n}`"),
        ParseErrorKind::AmbiguousName(n) => format!("`{n}` names more than one context variable"),
        ParseErrorKind::BadName(m) => format!("bad name: {m}"),
        ParseErrorKind::Context(m) => format!("bad context: {m}"),
    }
}

impl ParseError {
    pub(crate) fn syntax(message: impl Into<String>, span: Range<usize>) -> Self {
        ParseError { kind: ParseErrorKind::Syntax(message.into()), span }
    }

    /// 1-based line and column of the error start in `text`.
    pub fn line_col(&self, text: &str) -> (usize, usize) {
        let before = &text[..self.span.start.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}
