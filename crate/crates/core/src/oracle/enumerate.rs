use std::collections::HashMap;

use serde::Serialize;

use crate::spec::PtsSpec;
use crate::syntax::{FreeVar, Name, SortName, Term};

/// Bounds for exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumBudget {
    /// Node count, tags included (see [`Term::size`]).
    pub max_term_size: usize,
    /// Maximum nesting of tags (see [`Term::tag_depth`]).
    pub max_tag_depth: usize,
    pub sort_alphabet: Vec<SortName>,
    /// How many distinct names each tag is paired with: `x`, then `y`, ...
    pub max_names_per_tag: usize,
    pub fuel: u64,
}

const NAME_POOL: [&str; 8] = ["x", "y", "z", "w", "u", "p", "q", "r"];

impl EnumBudget {
    /// The sorts of `spec`, one name per tag, tags nested at most twice.
    pub fn for_spec(spec: &PtsSpec, max_term_size: usize) -> Self {
        EnumBudget {
            max_term_size,
            max_tag_depth: 2,
            sort_alphabet: spec.sorts().iter().cloned().collect(),
            max_names_per_tag: 1,
            fuel: 1_000,
        }
    }

    pub fn names(&self) -> Vec<Name> {
        assert!(self.max_names_per_tag <= NAME_POOL.len(), "at most {} names per tag", NAME_POOL.len());
        NAME_POOL[..self.max_names_per_tag].iter().map(|n| Name::from_static(n)).collect()
    }
}

/// Every locally closed term within `budget`, each once, by increasing
/// size and then in a fixed structural order.
pub fn enumerate_terms(budget: &EnumBudget) -> Vec<Term> {
    let mut e = Enumerator { sorts: &budget.sort_alphabet, names: budget.names(), memo: HashMap::new() };
    (1..=budget.max_term_size).flat_map(|n| e.exact(n, 0, budget.max_tag_depth)).collect()
}

struct Enumerator<'a> {
    sorts: &'a [SortName],
    names: Vec<Name>,
    memo: HashMap<(usize, u32, usize), Vec<Term>>,
}

impl Enumerator<'_> {
    /// Terms of size exactly `n` whose dangling indices are below `depth`,
    /// with tags nested at most `tag_depth` deep.
    fn exact(&mut self, n: usize, depth: u32, tag_depth: usize) -> Vec<Term> {
        if let Some(v) = self.memo.get(&(n, depth, tag_depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.extend(self.sorts.iter().cloned().map(Term::Sort));
            out.extend((0..depth).map(Term::Bound));
        }
        if n >= 2 && tag_depth > 0 {
            for tag in self.exact(n - 1, 0, tag_depth - 1) {
                for name in self.names.clone() {
                    out.push(Term::Free(FreeVar::new(name, tag.clone())));
                }
            }
        }
        if n >= 3 {
            for k in 1..n - 1 {
                let left = self.exact(k, depth, tag_depth);
                let body = self.exact(n - 1 - k, depth + 1, tag_depth);
                let arg = self.exact(n - 1 - k, depth, tag_depth);
                for a in &left {
                    for b in &body {
                        out.push(Term::pi(a.clone(), b.clone()));
                    }
                }
                for a in &left {
                    for b in &body {
                        out.push(Term::lam(a.clone(), b.clone()));
                    }
                }
                for f in &left {
                    for x in &arg {
                        out.push(Term::app(f.clone(), x.clone()));
                    }
                }
            }
        }
        self.memo.insert((n, depth, tag_depth), out.clone());
        out
    }
}
