use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spec::PtsSpec;
use crate::syntax::{FreeVar, Name, SortName, Term};

/// A reproducible generator.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random locally closed pseudo-terms, biased towards redexes and tagged
/// variables.
#[derive(Debug, Clone)]
pub struct TermGen {
    pub sorts: Vec<SortName>,
    pub names: Vec<Name>,
    /// Maximum nesting of term constructors.
    pub max_depth: u32,
    pub max_tag_depth: usize,
}

impl TermGen {
    pub fn for_spec(spec: &PtsSpec) -> Self {
        TermGen {
            sorts: spec.sorts().iter().cloned().collect(),
            names: ["x", "y", "z"].into_iter().map(Name::from_static).collect(),
            max_depth: 5,
            max_tag_depth: 2,
        }
    }

    pub fn term<R: Rng>(&self, rng: &mut R) -> Term {
        self.gen(rng, self.max_depth, 0, self.max_tag_depth)
    }

    fn gen<R: Rng>(&self, rng: &mut R, depth: u32, binders: u32, tag_depth: usize) -> Term {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.leaf(rng, binders, tag_depth);
        }
        match rng.gen_range(0..10) {
            0..=1 => Term::pi(self.gen(rng, depth - 1, binders, tag_depth), self.gen(rng, depth - 1, binders + 1, tag_depth)),
            2..=4 => Term::lam(self.gen(rng, depth - 1, binders, tag_depth), self.gen(rng, depth - 1, binders + 1, tag_depth)),
            5..=7 => Term::app(self.gen(rng, depth - 1, binders, tag_depth), self.gen(rng, depth - 1, binders, tag_depth)),
            _ => {
                let lam = Term::lam(
                    self.gen(rng, depth - 1, binders, tag_depth),
                    self.gen(rng, depth - 1, binders + 1, tag_depth),
                );
                Term::app(lam, self.gen(rng, depth - 1, binders, tag_depth))
            }
        }
    }

    fn leaf<R: Rng>(&self, rng: &mut R, binders: u32, tag_depth: usize) -> Term {
        match rng.gen_range(0..3) {
            1 if binders > 0 => Term::Bound(rng.gen_range(0..binders)),
            2 if tag_depth > 0 => {
                let tag = self.gen(rng, 2, 0, tag_depth - 1);
                let name = self.names[rng.gen_range(0..self.names.len())].clone();
                Term::Free(FreeVar::new(name, tag))
            }
            _ => Term::Sort(self.sorts[rng.gen_range(0..self.sorts.len())].clone()),
        }
    }
}
