//! Certificate search: a bounded bidirectional walk over step lists.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::eq3::canon::{canon3_with_stats, PosStep};
use crate::eq3::moves::{apply_move, enumerate_moves, AxiomInstance, Direction, MoveCtx, RewriteStep};
use crate::eq3::{check_certificate, Eq3Error, EqualityCertificate};
use crate::normal2::eq2;
use crate::presentation::Computad;
use crate::terms::{boundary2, boundary3, ThreeCellTerm};

/// Resource limits for the certificate search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Budget {
    /// Total number of distinct step lists the search may visit.
    pub max_visited: usize,
    /// Upper bound on the length of a found certificate.
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_visited: 10_000, max_depth: 8 }
    }
}

/// Search for a certificate that `lhs` and `rhs` denote the same 3-cell.
///
/// Returns `Err` when the sides do not even share a 1-cell frame,
/// `Ok(None)` when their 2-cell boundaries differ or no certificate was
/// found within the budget, and `Ok(Some(cert))` with a checked
/// certificate otherwise.
pub fn prove_eq3(
    c: &Computad,
    lhs: &ThreeCellTerm,
    rhs: &ThreeCellTerm,
    budget: &Budget,
) -> Result<Option<EqualityCertificate>, Eq3Error> {
    let (sl, tl) = boundary3(c, lhs)?;
    let (sr, tr) = boundary3(c, rhs)?;
    if boundary2(c, &sl)? != boundary2(c, &sr)? {
        return Err(Eq3Error::Boundary {
            detail: "the sides do not share a 1-cell frame".to_string(),
        });
    }
    if !eq2(c, &sl, &sr)? || !eq2(c, &tl, &tr)? {
        return Ok(None);
    }

    let (nl, stats_l) = canon3_with_stats(c, lhs)?;
    let (nr, stats_r) = canon3_with_stats(c, rhs)?;
    debug_assert_eq!(nl.source, nr.source);

    let finish = |steps: Vec<RewriteStep>| -> Result<Option<EqualityCertificate>, Eq3Error> {
        let cert = EqualityCertificate { start: lhs.clone(), steps, end: rhs.clone() };
        check_certificate(c, &cert)?;
        Ok(Some(cert))
    };

    if nl.steps == nr.steps {
        // Flattening alone identifies the sides; classify what it used.
        let steps = if lhs == rhs {
            vec![]
        } else if stats_l.erased_units + stats_r.erased_units > 0 {
            vec![RewriteStep::new(0, AxiomInstance::IchgUnit, Direction::Forward)]
        } else {
            vec![RewriteStep::new(0, AxiomInstance::Hom2Unit, Direction::Forward)]
        };
        return finish(steps);
    }

    if budget.max_visited == 0 || budget.max_depth == 0 {
        return Ok(None);
    }

    let ctx = MoveCtx::new(c);
    let source = nl.source.clone();

    type Seen = HashMap<Vec<PosStep>, Vec<RewriteStep>>;
    let mut fwd_seen: Seen = HashMap::from([(nl.steps.clone(), vec![])]);
    let mut bwd_seen: Seen = HashMap::from([(nr.steps.clone(), vec![])]);
    let mut fwd_layer: Vec<Vec<PosStep>> = vec![nl.steps];
    let mut bwd_layer: Vec<Vec<PosStep>> = vec![nr.steps];
    let mut visited = 2usize;
    let mut depth_used = 0usize;

    // A certificate reads left to right, so a path found from the right
    // joins on flipped instances in reverse order.
    let assemble = |fwd: &[RewriteStep], bwd: &[RewriteStep]| -> Vec<RewriteStep> {
        let mut steps = fwd.to_vec();
        steps.extend(bwd.iter().rev().map(RewriteStep::flipped));
        steps
    };

    while depth_used < budget.max_depth {
        if fwd_layer.is_empty() && bwd_layer.is_empty() {
            return Ok(None);
        }
        let expand_forward = if bwd_layer.is_empty() {
            true
        } else if fwd_layer.is_empty() {
            false
        } else {
            fwd_layer.len() <= bwd_layer.len()
        };
        let (layer, own_seen, other_seen) = if expand_forward {
            (&mut fwd_layer, &mut fwd_seen, &bwd_seen)
        } else {
            (&mut bwd_layer, &mut bwd_seen, &fwd_seen)
        };
        let mut next_layer: Vec<Vec<PosStep>> = Vec::new();
        for state in std::mem::take(layer) {
            let path = own_seen[&state].clone();
            for cand in enumerate_moves(c, &ctx, &source, &state) {
                let mut ns = state.clone();
                if apply_move(c, &ctx, &source, &mut ns, &cand).is_err() {
                    continue;
                }
                if own_seen.contains_key(&ns) {
                    continue;
                }
                visited += 1;
                if visited > budget.max_visited {
                    return Ok(None);
                }
                let mut npath = path.clone();
                npath.push(cand);
                if let Some(other_path) = other_seen.get(&ns) {
                    let steps = if expand_forward {
                        assemble(&npath, other_path)
                    } else {
                        assemble(other_path, &npath)
                    };
                    if steps.len() <= budget.max_depth {
                        return finish(steps);
                    }
                    continue;
                }
                own_seen.insert(ns.clone(), npath);
                next_layer.push(ns);
            }
        }
        *layer = next_layer;
        depth_used += 1;
    }
    Ok(None)
}
