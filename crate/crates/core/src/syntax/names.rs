use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("empty name")]
    Empty,
    #[error("invalid character {1:?} in name {0:?}")]
    InvalidChar(String, char),
    #[error("{0:?} is reserved")]
    Reserved(String),
}

/// Name of a free variable: ASCII letters, digits and underscores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(text: &str) -> Result<Self, NameError> {
        if text.is_empty() {
            return Err(NameError::Empty);
        }
        if text == "_" {
            return Err(NameError::Reserved(text.to_string()));
        }
        if let Some(c) = text.chars().find(|c| !is_name_char(*c)) {
            return Err(NameError::InvalidChar(text.to_string(), c));
        }
        Ok(Name(text.into()))
    }

    /// Panics on an invalid name; for literals in code and tests.
    pub fn from_static(text: &'static str) -> Self {
        Self::new(text).expect("invalid static name")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The `index`-th member of the family `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, index: usize) -> Self {
        Self::new(&format!("{prefix}{index}")).expect("indexed name prefix must be a valid name")
    }
}

pub fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Name of a sort constant such as `*` or `#`.
///
/// The reserved sort `_` is the unit tag: the label carried by free
/// variables that were declared without one. It never has an axiom, so
/// such variables can live in a traditional context but are never typable
/// in the context-free system.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortName(Arc<str>);

pub const UNIT_SORT: &str = "_";

impl SortName {
    pub fn new(text: &str) -> Result<Self, NameError> {
        if text.is_empty() {
            return Err(NameError::Empty);
        }
        if text == UNIT_SORT {
            return Err(NameError::Reserved(text.to_string()));
        }
        if let Some(c) = text.chars().find(|c| !is_sort_char(*c)) {
            return Err(NameError::InvalidChar(text.to_string(), c));
        }
        Ok(SortName(text.into()))
    }

    pub fn from_static(text: &'static str) -> Self {
        Self::new(text).expect("invalid static sort name")
    }

    pub fn unit() -> Self {
        SortName(UNIT_SORT.into())
    }

    pub fn is_unit(&self) -> bool {
        &*self.0 == UNIT_SORT
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub fn is_sort_char(c: char) -> bool {
    !(c.is_whitespace()
        || matches!(c, '(' | ')' | '{' | '}' | '^' | ':' | '.' | '\\' | '!' | ';' | ',' | '|' | 'λ' | 'Π' | '→'))
}

impl fmt::Display for SortName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl Serialize for SortName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl fmt::Debug for SortName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
