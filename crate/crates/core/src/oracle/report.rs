use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::correspond::synthesize_context;
use crate::ginf::{ginf_infer, GinfJudgment};
use crate::pts::{infer_type, Context, Decl};
use crate::spec::PtsSpec;
use crate::syntax::{FreeVar, Name, Term};

use super::derive::{GinfSearch, PtsSearch};
use super::enumerate::{enumerate_terms, EnumBudget};
use super::naive::{hereditary_set, nf};
use super::BudgetExhausted;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A derivable annotated judgment whose context-free form is not.
    AnnotatedToGinf,
    /// A derivable context-free judgment without a matching annotated one.
    GinfToAnnotated,
    /// Typable in one presentation only.
    TypableSets,
    /// The context-free checker disagrees with the search.
    GinfChecker,
    /// The contextful checker disagrees with the search.
    PtsChecker,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub term: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub spec: String,
    pub budget: EnumBudget,
    pub terms: usize,
    /// Terms with a context-free derivation.
    pub ginf_typable: usize,
    /// Terms with a derivation under some enumerated annotated context.
    pub pts_typable: usize,
    /// Well-formed annotated contexts tried, over all terms.
    pub contexts: usize,
    /// Derivable annotated judgments checked against the context-free search.
    pub annotated_judgments: usize,
    /// Contexts synthesized and confirmed.
    pub synthesized: usize,
    /// Whether the algorithmic checkers were compared (needs a functional spec).
    pub checkers_compared: bool,
    pub checker_agreements: usize,
    pub budget_exhausted: Vec<String>,
    pub violations: Vec<Violation>,
}

impl CorrespondenceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn exhausted_fraction(&self) -> f64 {
        if self.terms == 0 {
            0.0
        } else {
            self.budget_exhausted.len() as f64 / self.terms as f64
        }
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "terms enumerated:        {}", self.terms)?;
        writeln!(f, "typable (context-free):  {}", self.ginf_typable)?;
        writeln!(f, "typable (contextful):    {}", self.pts_typable)?;
        writeln!(f, "annotated contexts:      {}", self.contexts)?;
        writeln!(f, "annotated judgments:     {}", self.annotated_judgments)?;
        writeln!(f, "contexts synthesized:    {}", self.synthesized)?;
        if self.checkers_compared {
            writeln!(f, "checker agreements:      {}", self.checker_agreements)?;
        }
        writeln!(f, "budget exhausted:        {}", self.budget_exhausted.len())?;
        writeln!(f, "violations:              {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {:?} {}: {}", v.kind, v.term, v.detail)?;
        }
        Ok(())
    }
}

/// The extra declaration offered to every context: `k^s : s` for the first
/// sort `s` of the alphabet that has an axiom.
fn junk_var(spec: &PtsSpec, budget: &EnumBudget) -> Option<FreeVar> {
    budget
        .sort_alphabet
        .iter()
        .find(|s| spec.axioms().iter().any(|(a, _)| a == *s))
        .map(|s| FreeVar::new(Name::from_static("k"), Term::Sort(s.clone())))
}

/// Every well-formed annotated context over a subset of `pool`, in every
/// order, empty context included.
pub fn annotated_contexts(search: &mut PtsSearch<'_>, pool: &[FreeVar]) -> Result<Vec<Context>, BudgetExhausted> {
    fn go(
        search: &mut PtsSearch<'_>,
        pool: &[FreeVar],
        ctx: &Context,
        out: &mut Vec<Context>,
    ) -> Result<(), BudgetExhausted> {
        out.push(ctx.clone());
        for v in pool {
            if ctx.contains(v) || search.sorts_of(ctx, v.tag())?.is_empty() {
                continue;
            }
            let mut next = ctx.clone();
            next.push(Decl::annotated(v.clone())).expect("not yet declared");
            go(search, pool, &next, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(search, pool, &Context::empty(), &mut out)?;
    Ok(out)
}

/// Cross-checks both correspondence directions, the typable-term sets and
/// (for functional specs) both algorithmic checkers on every enumerated
/// term.
pub fn correspondence_report(spec: &PtsSpec, budget: &EnumBudget) -> CorrespondenceReport {
    let terms = enumerate_terms(budget);
    let mut report = CorrespondenceReport {
        spec: spec.to_string(),
        budget: budget.clone(),
        terms: terms.len(),
        ginf_typable: 0,
        pts_typable: 0,
        contexts: 0,
        annotated_judgments: 0,
        synthesized: 0,
        checkers_compared: spec.is_functional(),
        checker_agreements: 0,
        budget_exhausted: Vec::new(),
        violations: Vec::new(),
    };
    let junk = junk_var(spec, budget);
    let mut ginf = GinfSearch::new(spec, budget.fuel);
    let mut pts = PtsSearch::new(spec, budget.fuel);
    for m in &terms {
        if let Err(e) = check_term(spec, budget, m, junk.as_ref(), &mut ginf, &mut pts, &mut report) {
            report.budget_exhausted.push(format!("{m} ({e})"));
        }
    }
    report
}

fn same_type(a: &Term, b: &Term, fuel: u64) -> Result<bool, BudgetExhausted> {
    Ok(a == b || nf(a, &mut fuel.clone())? == nf(b, &mut fuel.clone())?)
}

fn check_term(
    spec: &PtsSpec,
    budget: &EnumBudget,
    m: &Term,
    junk: Option<&FreeVar>,
    ginf: &mut GinfSearch<'_>,
    pts: &mut PtsSearch<'_>,
    report: &mut CorrespondenceReport,
) -> Result<(), BudgetExhausted> {
    let mut violations = Vec::new();
    let mut violate = |kind, detail: String| violations.push(Violation { kind, term: m.to_string(), detail });
    let fuel = budget.fuel;

    let ginf_types = ginf.raw_types(m)?;
    let mut agreements = 0;
    if report.checkers_compared {
        match (ginf_infer(spec, m, fuel), ginf_types.first()) {
            (Err(e), _) if e.is_fuel_exhausted() => return Err(BudgetExhausted::Fuel),
            (Ok(t), Some(r)) if same_type(&t, r, fuel)? => agreements += 1,
            (Err(_), None) => agreements += 1,
            (got, want) => {
                violate(ViolationKind::GinfChecker, format!("checker {got:?}, search {want:?}"));
            }
        }
    }

    // Context-free to contextful.
    let mut synthesized = 0;
    if let Some(ty) = ginf_types.first() {
        let j = GinfJudgment::new(m.clone(), ty.clone());
        match synthesize_context(&j, spec, fuel) {
            Err(e) => violate(ViolationKind::GinfToAnnotated, format!("{j}: {e}")),
            Ok(aj) => {
                let mut expected = hereditary_set(m);
                expected.extend(hereditary_set(ty));
                if aj.ctx().dom() != expected {
                    violate(ViolationKind::GinfToAnnotated, format!("context {} is not hfv", aj.ctx()));
                } else if !pts.has_type(aj.ctx(), m, ty)? {
                    violate(ViolationKind::GinfToAnnotated, format!("search rejects {aj}"));
                } else {
                    synthesized += 1;
                }
            }
        }
    }

    // Contextful to context-free.
    let mut pool: Vec<FreeVar> = hereditary_set(m).into_iter().collect();
    if let Some(k) = junk {
        if !pool.contains(k) {
            pool.push(k.clone());
        }
    }
    let contexts = annotated_contexts(pts, &pool)?;
    let mut pts_typable = false;
    let mut annotated = 0;
    for ctx in &contexts {
        let types = pts.raw_types(ctx, m)?;
        pts_typable |= !types.is_empty();
        for ty in &types {
            annotated += 1;
            if !ginf.has_type(m, ty)? {
                violate(ViolationKind::AnnotatedToGinf, format!("{ctx} |- {m} : {ty}"));
            }
        }
        if report.checkers_compared {
            match (infer_type(spec, ctx, m, fuel), types.first()) {
                (Err(e), _) if e.is_fuel_exhausted() => return Err(BudgetExhausted::Fuel),
                (Ok(t), Some(r)) if same_type(&t, r, fuel)? => agreements += 1,
                (Err(_), None) => agreements += 1,
                (got, want) => {
                    violate(ViolationKind::PtsChecker, format!("under {ctx}: checker {got:?}, search {want:?}"));
                }
            }
        }
    }

    if pts_typable != !ginf_types.is_empty() {
        violate(
            ViolationKind::TypableSets,
            format!("context-free: {}, contextful: {pts_typable}", !ginf_types.is_empty()),
        );
    }

    // Only a term checked to the end counts.
    report.ginf_typable += usize::from(!ginf_types.is_empty());
    report.pts_typable += usize::from(pts_typable);
    report.contexts += contexts.len();
    report.annotated_judgments += annotated;
    report.synthesized += synthesized;
    report.checker_agreements += agreements;
    report.violations.extend(violations);
    Ok(())
}

/// The variables of `hfv(m)`, for callers building their own contexts.
pub fn context_pool(m: &Term) -> BTreeSet<FreeVar> {
    hereditary_set(m)
}
