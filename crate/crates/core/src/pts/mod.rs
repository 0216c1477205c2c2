//! Traditional contextful Pure Type System checking and the context
//! algebra used by the correspondence.

mod check;
mod context;

pub use check::{check_context, check_judgment, infer_type, wf_context};
pub use context::{compatible, merge, Context, ContextfulJudgment, Decl};

pub(crate) use check::accepts;

use crate::error::CorrespondError;
use crate::spec::PtsSpec;
use crate::syntax::hfv2;

/// Shrinks the context of a derivable type-annotated judgment to exactly
/// the hereditarily free variables of subject and type.
///
/// Declarations outside that set are dropped one at a time from the right,
/// re-checking the judgment after every removal; the returned context is
/// therefore known to derive the judgment rather than assumed to.
pub fn strengthen_to_hfv(spec: &PtsSpec, j: &ContextfulJudgment, fuel: u64) -> Result<Context, CorrespondError> {
    let recheck = |ctx: &Context, stage: &str| -> Result<(), CorrespondError> {
        let candidate = ContextfulJudgment::new(ctx.clone(), j.subject.clone(), j.ty.clone());
        match check_judgment(spec, &candidate, fuel) {
            Ok(true) => Ok(()),
            Ok(false) => Err(CorrespondError::NotDerivable(format!("{stage}: type does not match"))),
            Err(e) => match e.fuel() {
                Some(f) => Err(CorrespondError::FuelExhausted(f)),
                None => Err(CorrespondError::NotDerivable(format!("{stage}: {e}"))),
            },
        }
    };
    recheck(&j.ctx, "input")?;
    let keep = hfv2(&j.subject, &j.ty);
    let mut ctx = j.ctx.clone();
    for decl in j.ctx.iter().rev() {
        if keep.contains(&decl.var) {
            continue;
        }
        ctx = ctx.without(&decl.var);
        recheck(&ctx, &format!("after dropping {}", decl.var.name()))?;
    }
    Ok(ctx)
}
