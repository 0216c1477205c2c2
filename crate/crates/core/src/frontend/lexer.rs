use std::fmt;
use std::ops::Range;

use crate::syntax::{is_name_char, is_sort_char};

use super::ParseError;

/// Byte range into the source text.
pub type Span = Range<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Lambda,
    Pi,
    Arrow,
    Colon,
    Dot,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    /// A run of name characters, including a lone `_`.
    Word(String),
    /// A run of symbolic sort characters, e.g. `*`; `□` is read as `#`.
    Symbol(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lambda => f.write_str("`\\`"),
            Tok::Pi => f.write_str("`!`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Symbol(s) => write!(f, "`{s}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits `text` into tokens. `;` starts a comment running to the end of
/// the line.
pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == ';' {
            while chars.next_if(|&(_, c)| c != '\n').is_some() {}
            continue;
        }
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '!' | 'Π' => Some(Tok::Pi),
            '→' => Some(Tok::Arrow),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '□' => Some(Tok::Symbol("#".to_string())),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push(Token { tok, span: start..start + c.len_utf8() });
            continue;
        }
        if text[start..].starts_with("->") {
            chars.next();
            chars.next();
            out.push(Token { tok: Tok::Arrow, span: start..start + 2 });
            continue;
        }
        let mut end = start;
        if is_name_char(c) {
            while let Some((i, c)) = chars.next_if(|&(_, c)| is_name_char(c)) {
                end = i + c.len_utf8();
            }
            out.push(Token { tok: Tok::Word(text[start..end].to_string()), span: start..end });
        } else if is_symbol_char(c) {
            while let Some(&(i, c)) = chars.peek() {
                if !is_symbol_char(c) || text[i..].starts_with("->") {
                    break;
                }
                chars.next();
                end = i + c.len_utf8();
            }
            out.push(Token { tok: Tok::Symbol(text[start..end].to_string()), span: start..end });
        } else {
            return Err(ParseError::syntax(format!("unexpected character {c:?}"), start..start + c.len_utf8()));
        }
    }
    Ok(out)
}

fn is_symbol_char(c: char) -> bool {
    is_sort_char(c) && !is_name_char(c) && c != '□'
}
