//! Equality of 3-cells: canonical forms, rewrite moves, and certificates.
//!
//! A 3-cell term flattens to a positioned list of atomic steps acting on
//! whisker layer lists ([`canon::canon3`]). An [`EqualityCertificate`] is a
//! replayable sequence of axiom instances rewriting one flattened side into
//! the other; [`check_certificate`] replays it and [`prove_eq3`] searches
//! for one.

pub mod canon;
pub mod moves;
mod prove;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal2::eq2;
use crate::presentation::Computad;
use crate::terms::{boundary3, ThreeCellTerm, TypeError};

pub use canon::{
    cancel_inverses, canon3, canon3_with_stats, normalize3_strict, readback, replay, CanonStats,
    IchgSide, NAtom, NAtomKind, Normal3, NormalSeg, PosStep,
};
pub use moves::{apply_move, enumerate_moves, AxiomInstance, Direction, MoveCtx, RewriteStep};
pub use prove::{prove_eq3, Budget};

/// A replayable witness that two 3-cell terms denote the same 3-cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityCertificate {
    pub start: ThreeCellTerm,
    pub steps: Vec<RewriteStep>,
    pub end: ThreeCellTerm,
}

/// Errors raised while checking a certificate or searching for one.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Eq3Error {
    #[error("step {step} does not apply: {reason}")]
    Step { step: usize, reason: String },
    #[error("boundary mismatch: {detail}")]
    Boundary { detail: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Replay a certificate: flatten its start, apply every recorded step, and
/// compare the result with the flattened end up to cancellation of formal
/// inverse pairs. Step numbers in errors are 1-based.
pub fn check_certificate(c: &Computad, cert: &EqualityCertificate) -> Result<(), Eq3Error> {
    let (ss, ts) = boundary3(c, &cert.start)?;
    let (se, te) = boundary3(c, &cert.end)?;
    let parallel = |a, b| match eq2(c, a, b) {
        Ok(v) => Ok(v),
        Err(TypeError::BoundaryMismatch { .. }) => Ok(false),
        Err(e) => Err(Eq3Error::from(e)),
    };
    if !parallel(&ss, &se)? || !parallel(&ts, &te)? {
        return Err(Eq3Error::Boundary {
            detail: "certificate endpoints are not parallel".to_string(),
        });
    }
    let start = canon3(c, &cert.start)?;
    let end = canon3(c, &cert.end)?;
    let ctx = MoveCtx::new(c);
    let mut steps = start.steps;
    for (i, step) in cert.steps.iter().enumerate() {
        apply_move(c, &ctx, &start.source, &mut steps, step)
            .map_err(|reason| Eq3Error::Step { step: i + 1, reason })?;
    }
    if cancel_inverses(&steps) != cancel_inverses(&end.steps) {
        return Err(Eq3Error::Step {
            step: cert.steps.len(),
            reason: "replayed left-hand side does not match the right-hand side".to_string(),
        });
    }
    Ok(())
}
