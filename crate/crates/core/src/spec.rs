//! PTS instances: sorts, axioms and rules, the lambda-cube presets, and
//! the line-oriented spec file format.
//!
//! ```text
//! ; comment
//! sorts: * #
//! axiom: * #
//! rule: * * *
//! preset: coc
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{NameError, SortName};

/// The Pure Type System λ(S, A, R).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PtsSpec {
    sorts: BTreeSet<SortName>,
    axioms: BTreeSet<(SortName, SortName)>,
    rules: BTreeSet<(SortName, SortName, SortName)>,
}

/// The five cube systems shipped with the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// λ→
    Stlc,
    /// λ2 (System F)
    F,
    /// λP
    P,
    /// λω (Fω)
    Omega,
    /// λC, the Calculus of Constructions
    Coc,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Stlc, Preset::F, Preset::P, Preset::Omega, Preset::Coc];

    pub fn keyword(self) -> &'static str {
        match self {
            Preset::Stlc => "stlc",
            Preset::F => "f",
            Preset::P => "p",
            Preset::Omega => "omega",
            Preset::Coc => "coc",
        }
    }

    /// Cube rules as (s1, s2) pairs; each stands for (s1, s2, s2).
    fn cube_rules(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Preset::Stlc => &[("*", "*")],
            Preset::F => &[("*", "*"), ("#", "*")],
            Preset::P => &[("*", "*"), ("*", "#")],
            Preset::Omega => &[("*", "*"), ("#", "*"), ("#", "#")],
            Preset::Coc => &[("*", "*"), ("#", "*"), ("*", "#"), ("#", "#")],
        }
    }
}

impl FromStr for Preset {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.keyword() == s)
            .ok_or_else(|| SpecError::UnknownPreset(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("sort {0} is used but not declared")]
    UndeclaredSort(SortName),
    #[error(transparent)]
    BadName(#[from] NameError),
}

impl PtsSpec {
    /// Builds a spec, checking that axioms and rules only mention
    /// declared sorts.
    pub fn new(
        sorts: impl IntoIterator<Item = SortName>,
        axioms: impl IntoIterator<Item = (SortName, SortName)>,
        rules: impl IntoIterator<Item = (SortName, SortName, SortName)>,
    ) -> Result<Self, SpecError> {
        let spec = PtsSpec {
            sorts: sorts.into_iter().collect(),
            axioms: axioms.into_iter().collect(),
            rules: rules.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), SpecError> {
        let used = self
            .axioms
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.rules.iter().flat_map(|(a, b, c)| [a, b, c]));
        for s in used {
            if !self.sorts.contains(s) {
                return Err(SpecError::UndeclaredSort(s.clone()));
            }
        }
        Ok(())
    }

    pub fn preset(preset: Preset) -> Self {
        let star = SortName::from_static("*");
        let boxs = SortName::from_static("#");
        let rules = preset.cube_rules().iter().map(|(a, b)| {
            let a = SortName::new(a).unwrap();
            let b = SortName::new(b).unwrap();
            (a, b.clone(), b)
        });
        PtsSpec::new([star.clone(), boxs.clone()], [(star, boxs)], rules).expect("presets are well-formed")
    }

    pub fn stlc() -> Self {
        Self::preset(Preset::Stlc)
    }

    pub fn system_f() -> Self {
        Self::preset(Preset::F)
    }

    pub fn lambda_p() -> Self {
        Self::preset(Preset::P)
    }

    pub fn omega() -> Self {
        Self::preset(Preset::Omega)
    }

    pub fn coc() -> Self {
        Self::preset(Preset::Coc)
    }

    pub fn sorts(&self) -> &BTreeSet<SortName> {
        &self.sorts
    }

    pub fn axioms(&self) -> &BTreeSet<(SortName, SortName)> {
        &self.axioms
    }

    pub fn rules(&self) -> &BTreeSet<(SortName, SortName, SortName)> {
        &self.rules
    }

    pub fn has_sort(&self, s: &SortName) -> bool {
        self.sorts.contains(s)
    }

    /// Every `s2` with `(s1, s2)` an axiom.
    pub fn axiom(&self, s1: &SortName) -> BTreeSet<SortName> {
        self.axioms.iter().filter(|(a, _)| a == s1).map(|(_, b)| b.clone()).collect()
    }

    /// Every `s3` with `(s1, s2, s3)` a rule.
    pub fn rule(&self, s1: &SortName, s2: &SortName) -> BTreeSet<SortName> {
        self.rules
            .iter()
            .filter(|(a, b, _)| a == s1 && b == s2)
            .map(|(_, _, c)| c.clone())
            .collect()
    }

    /// Axioms and rules are partial functions of their first (first two)
    /// components.
    pub fn is_functional(&self) -> bool {
        let axiom_keys: BTreeSet<_> = self.axioms.iter().map(|(a, _)| a).collect();
        let rule_keys: BTreeSet<_> = self.rules.iter().map(|(a, b, _)| (a, b)).collect();
        axiom_keys.len() == self.axioms.len() && rule_keys.len() == self.rules.len()
    }

    /// The unique axiom target, if the axiom relation is functional at `s1`.
    pub(crate) fn axiom_fn(&self, s1: &SortName) -> Option<SortName> {
        self.axioms.iter().find(|(a, _)| a == s1).map(|(_, b)| b.clone())
    }

    pub(crate) fn rule_fn(&self, s1: &SortName, s2: &SortName) -> Option<SortName> {
        self.rules
            .iter()
            .find(|(a, b, _)| a == s1 && b == s2)
            .map(|(_, _, c)| c.clone())
    }

    /// Parses the spec file format. Later `preset:` lines replace
    /// everything declared before them.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut spec = PtsSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with(';') {
                continue;
            }
            let syntax = |message: String| SpecError::Syntax { line: line_no, message };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected `key: value`, found {line:?}")))?;
            let words: Vec<&str> = rest.split_whitespace().collect();
            let sorts = || -> Result<Vec<SortName>, SpecError> {
                words.iter().map(|w| SortName::new(w).map_err(SpecError::from)).collect()
            };
            match key.trim() {
                "sorts" => spec.sorts.extend(sorts()?),
                "axiom" => match sorts()?.as_slice() {
                    [a, b] => {
                        spec.axioms.insert((a.clone(), b.clone()));
                    }
                    _ => return Err(syntax("axiom takes two sorts".into())),
                },
                "rule" => match sorts()?.as_slice() {
                    [a, b, c] => {
                        spec.rules.insert((a.clone(), b.clone(), c.clone()));
                    }
                    _ => return Err(syntax("rule takes three sorts".into())),
                },
                "preset" => match words.as_slice() {
                    [name] => spec = PtsSpec::preset(name.parse()?),
                    _ => return Err(syntax("preset takes one name".into())),
                },
                other => return Err(syntax(format!("unknown key {other:?}"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for PtsSpec {
    /// Renders in the spec file format; `parse` reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sorts:")?;
        for s in &self.sorts {
            write!(f, " {s}")?;
        }
        writeln!(f)?;
        for (a, b) in &self.axioms {
            writeln!(f, "axiom: {a} {b}")?;
        }
        for (a, b, c) in &self.rules {
            writeln!(f, "rule: {a} {b} {c}")?;
        }
        Ok(())
    }
}
