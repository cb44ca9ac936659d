//! Rewrite moves between canonical step lists.
//!
//! A certificate step names an axiom instance, a direction, and a position
//! `[j]` into the current step list. Applying it replaces a short window of
//! steps by an equivalent one; every application re-replays the affected
//! window against the layer state and rejects steps that do not preserve it.

use serde::{Deserialize, Serialize};

use crate::eq3::canon::{
    apply_step, canon3, mk_ichg_atom, IchgSide, NAtom, NAtomKind, NormalSeg, PosStep,
};
use crate::normal2::{Layer, WhiskerNormal2Cell};
use crate::presentation::Computad;

/// Which way an axiom instance is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One axiom of the 3-dimensional rewrite calculus, instantiated.
///
/// `IchgUnit`, `WhiskerAssoc`, `Hom2Unit`, `Hom2Assoc`, and `Functoriality`
/// are annotations: the canonical form already identifies their two sides,
/// so they replay as validated no-ops and exist to record which axiom
/// justifies an equality of flattened terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum AxiomInstance {
    /// Distribute an interchanger over a vertical composite in its first
    /// (sliding) argument: forward splits, backward merges.
    #[serde(rename_all = "camelCase")]
    IchgVcompRight { merged: NAtom, split_at: usize },
    /// Distribute an interchanger over a vertical composite in its second
    /// argument: forward splits, backward merges.
    #[serde(rename_all = "camelCase")]
    IchgVcompLeft { merged: NAtom, split_at: usize },
    /// An interchanger against an identity is an identity.
    IchgUnit,
    /// Naturality of an interchanger in its sliding argument: a step acting
    /// inside that block commutes past the interchanger. `erased` records
    /// the interchanger when the exchange collapses it to a unit.
    #[serde(rename_all = "camelCase")]
    ModificationNatLeft { erased: Option<PosStep> },
    /// Naturality of an interchanger in its stationary argument.
    #[serde(rename_all = "camelCase")]
    ModificationNatRight { erased: Option<PosStep> },
    /// Whisker reassociation over composite 1-cells.
    WhiskerAssoc,
    /// Steps acting on disjoint layer windows commute.
    Hom2Interchange,
    /// Vertical composition with an identity 3-cell.
    Hom2Unit,
    /// Reassociation of vertical composition.
    Hom2Assoc,
    /// Whiskering distributes over composition.
    Functoriality,
    /// A step followed by its formal inverse at the same position cancels.
    #[serde(rename_all = "camelCase")]
    InverseCancel { atom: NAtom, pos: usize },
    /// A named relation of the presentation, possibly inverted, rotated so
    /// that the steps before `rotStart` and from `rotEnd` on move to the
    /// other side, whiskered by `lwhisk`/`rwhisk`, and shifted `delta`
    /// layers upwards.
    #[serde(rename_all = "camelCase")]
    Relation {
        id: String,
        inverted: bool,
        rot_start: usize,
        rot_end: usize,
        lwhisk: Vec<String>,
        rwhisk: Vec<String>,
        delta: usize,
    },
}

/// One certificate entry: an axiom instance applied at a position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteStep {
    pub position: Vec<usize>,
    #[serde(flatten)]
    pub axiom: AxiomInstance,
    pub direction: Direction,
}

impl RewriteStep {
    pub fn new(j: usize, axiom: AxiomInstance, direction: Direction) -> RewriteStep {
        RewriteStep { position: vec![j], axiom, direction }
    }

    /// The same instance read the other way.
    pub fn flipped(&self) -> RewriteStep {
        RewriteStep {
            position: self.position.clone(),
            axiom: self.axiom.clone(),
            direction: self.direction.flip(),
        }
    }
}

/// Which argument a split or merge acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SplitKind {
    /// Split the stationary argument (`alpha`).
    Left,
    /// Split the sliding argument (`beta`).
    Right,
}

pub(crate) fn ichg_parts(atom: &NAtom) -> Result<(&NormalSeg, &NormalSeg), String> {
    match &atom.kind {
        NAtomKind::Ichg { beta, alpha } => Ok((beta, alpha)),
        NAtomKind::Gen(name) => Err(format!("`{name}` is not an interchanger step")),
    }
}

fn strip_path_prefix<'a>(v: &'a [String], p: &[String]) -> Option<&'a [String]> {
    if v.len() >= p.len() && v[..p.len()] == p[..] {
        Some(&v[p.len()..])
    } else {
        None
    }
}

fn strip_path_suffix<'a>(v: &'a [String], s: &[String]) -> Option<&'a [String]> {
    if v.len() >= s.len() && v[v.len() - s.len()..] == s[..] {
        Some(&v[..v.len() - s.len()])
    } else {
        None
    }
}

fn join_paths(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    out.extend(b.iter().cloned());
    out
}

/// Replay `steps[..j]` from the ambient source.
pub(crate) fn state_at(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &[PosStep],
    j: usize,
) -> Result<Vec<Layer>, String> {
    let mut layers = source.layers.clone();
    for step in &steps[..j] {
        apply_step(c, &source.source, &mut layers, step)?;
    }
    Ok(layers)
}

/// Replace `steps[j..j + old_len]` by `new_steps` after checking that both
/// windows replay from the same state to the same state.
fn splice_validated(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
    old_len: usize,
    new_steps: Vec<PosStep>,
) -> Result<(), String> {
    if j + old_len > steps.len() {
        return Err(format!(
            "position {j} with window {old_len} exceeds {} steps",
            steps.len()
        ));
    }
    let before = state_at(c, source, steps, j)?;
    let mut old_state = before.clone();
    for step in &steps[j..j + old_len] {
        apply_step(c, &source.source, &mut old_state, step)?;
    }
    let mut new_state = before;
    for step in &new_steps {
        apply_step(c, &source.source, &mut new_state, step)
            .map_err(|e| format!("rewritten window does not replay: {e}"))?;
    }
    if old_state != new_state {
        return Err("rewrite does not preserve the layer state".to_string());
    }
    steps.splice(j..j + old_len, new_steps);
    Ok(())
}

/// The two steps a split of `merged` at `split_at` produces, with the
/// merged step at layer position `p`.
fn split_steps(
    c: &Computad,
    merged: &NAtom,
    split_at: usize,
    p: usize,
    kind: SplitKind,
) -> Result<Vec<PosStep>, String> {
    let (beta, alpha) = ichg_parts(merged)?;
    let k = split_at;
    let (lo, hi) = match kind {
        SplitKind::Left => {
            if k == 0 || k >= alpha.layers.len() {
                return Err("split index out of range".to_string());
            }
            let a1 = NormalSeg { source: alpha.source.clone(), layers: alpha.layers[..k].to_vec() };
            let a2 = NormalSeg {
                source: a1.target(c).map_err(|e| e.to_string())?,
                layers: alpha.layers[k..].to_vec(),
            };
            (
                mk_ichg_atom(beta.clone(), a1, merged.inv, vec![], vec![]),
                mk_ichg_atom(beta.clone(), a2, merged.inv, vec![], vec![]),
            )
        }
        SplitKind::Right => {
            if k == 0 || k >= beta.layers.len() {
                return Err("split index out of range".to_string());
            }
            let b1 = NormalSeg { source: beta.source.clone(), layers: beta.layers[..k].to_vec() };
            let b2 = NormalSeg {
                source: b1.target(c).map_err(|e| e.to_string())?,
                layers: beta.layers[k..].to_vec(),
            };
            (
                mk_ichg_atom(b1, alpha.clone(), merged.inv, vec![], vec![]),
                mk_ichg_atom(b2, alpha.clone(), merged.inv, vec![], vec![]),
            )
        }
    };
    let compose = |piece: Option<NAtom>| -> Result<NAtom, String> {
        let piece = piece.ok_or("split produced a unit interchanger")?;
        Ok(NAtom {
            kind: piece.kind,
            inv: piece.inv,
            lpath: join_paths(&piece.lpath, &merged.lpath),
            rpath: join_paths(&merged.rpath, &piece.rpath),
        })
    };
    let lo = compose(lo)?;
    let hi = compose(hi)?;
    let first_low = match kind {
        SplitKind::Left => !merged.inv,
        SplitKind::Right => merged.inv,
    };
    Ok(if first_low {
        vec![PosStep { pos: p, atom: lo }, PosStep { pos: p + k, atom: hi }]
    } else {
        vec![PosStep { pos: p + k, atom: hi }, PosStep { pos: p, atom: lo }]
    })
}

fn apply_split(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
    merged: &NAtom,
    split_at: usize,
    kind: SplitKind,
    direction: Direction,
) -> Result<(), String> {
    match direction {
        Direction::Forward => {
            if j >= steps.len() {
                return Err(format!("no step at position {j}"));
            }
            if steps[j].atom != *merged {
                return Err("step does not match the recorded merged interchanger".to_string());
            }
            let p = steps[j].pos;
            let new = split_steps(c, merged, split_at, p, kind)?;
            splice_validated(c, source, steps, j, 1, new)
        }
        Direction::Backward => {
            if j + 1 >= steps.len() {
                return Err(format!("no adjacent pair at position {j}"));
            }
            let first_low = match kind {
                SplitKind::Left => !merged.inv,
                SplitKind::Right => merged.inv,
            };
            let p = if first_low { steps[j].pos } else { steps[j + 1].pos };
            let expected = split_steps(c, merged, split_at, p, kind)?;
            if steps[j..j + 2] != expected[..] {
                return Err("pair does not match the recorded split".to_string());
            }
            splice_validated(c, source, steps, j, 2, vec![PosStep { pos: p, atom: merged.clone() }])
        }
    }
}

fn strip_margins(
    layers: &[Layer],
    left_suffix: &[String],
    right_prefix: &[String],
) -> Result<Vec<Layer>, String> {
    layers
        .iter()
        .map(|l| {
            let left = strip_path_suffix(&l.left, left_suffix)
                .ok_or("step does not carry the interchanger's whisker context")?;
            let right = strip_path_prefix(&l.right, right_prefix)
                .ok_or("step does not carry the interchanger's whisker context")?;
            Ok(Layer { left: left.to_vec(), gen: l.gen.clone(), right: right.to_vec() })
        })
        .collect()
}

/// Block geometry of an interchanger whose `which` argument is empty:
/// `(start, inner_left, inner_right)` of where that absent block would sit.
fn erased_block_info(
    c: &Computad,
    atom: &NAtom,
    which: IchgSide,
    consumed: bool,
) -> Result<(usize, Vec<String>, Vec<String>), String> {
    let (beta, alpha) = ichg_parts(atom)?;
    let src_picture = consumed != atom.inv;
    let e = |r: Result<Vec<String>, crate::terms::TypeError>| r.map_err(|x| x.to_string());
    Ok(match which {
        IchgSide::Beta => {
            if src_picture {
                (0, vec![], alpha.source.clone())
            } else {
                (alpha.layers.len(), vec![], e(alpha.target(c))?)
            }
        }
        IchgSide::Alpha => {
            if src_picture {
                (beta.layers.len(), e(beta.target(c))?, vec![])
            } else {
                (0, beta.source.clone(), vec![])
            }
        }
    })
}

/// The exchanged pair for a naturality move, given the step that acts
/// first. Returns the replacement steps, and the erased interchanger when
/// the modified block empties out.
fn mod_nat_exchange(
    c: &Computad,
    n_step: &PosStep,
    i_step: &PosStep,
    which: IchgSide,
    i_first: bool,
) -> Result<(Vec<PosStep>, Option<PosStep>), String> {
    let i_atom = &i_step.atom;
    let (beta, alpha) = ichg_parts(i_atom)?;
    let err = |e: crate::terms::TypeError| e.to_string();
    // `i_first == false`: N acts inside I's consumed picture (the move reads
    // N then I). `i_first == true`: N acts inside I's produced picture.
    let (bs, blen, il, ir) = i_atom.block(c, !i_first, which).map_err(err)?;
    let window = if i_first {
        n_step.atom.consumed(c).map_err(err)?
    } else {
        n_step.atom.produced(c).map_err(err)?
    };
    let wn = window.len();
    let (pi, pn) = (i_step.pos, n_step.pos);
    if pn < pi + bs || pn + wn > pi + bs + blen {
        return Err("step does not act inside the interchanger block".to_string());
    }
    let q = pn - (pi + bs);
    let want_l = join_paths(&il, &i_atom.lpath);
    let want_r = join_paths(&i_atom.rpath, &ir);
    if n_step.atom.lpath != want_l || n_step.atom.rpath != want_r {
        return Err("step margins do not match the interchanger block".to_string());
    }
    let picture = if i_first {
        i_atom.produced(c).map_err(err)?
    } else {
        i_atom.consumed(c).map_err(err)?
    };
    if picture[pn - pi..pn - pi + wn] != window[..] {
        return Err("step window does not match the interchanger picture".to_string());
    }
    let replacement_src = if i_first {
        n_step.atom.produced(c).map_err(err)?
    } else {
        n_step.atom.consumed(c).map_err(err)?
    };
    let repl = strip_margins(&replacement_src, &want_l, &want_r)?;
    let mut new_beta = beta.clone();
    let mut new_alpha = alpha.clone();
    match which {
        IchgSide::Beta => {
            new_beta.layers.splice(q..q + wn, repl);
        }
        IchgSide::Alpha => {
            new_alpha.layers.splice(q..q + wn, repl);
        }
    }
    let candidate = mk_ichg_atom(
        new_beta,
        new_alpha,
        i_atom.inv,
        i_atom.lpath.clone(),
        i_atom.rpath.clone(),
    );
    match candidate {
        Some(i2) => {
            let (bs2, _, il2, ir2) = i2.block(c, i_first, which).map_err(err)?;
            let n2 = NAtom {
                kind: n_step.atom.kind.clone(),
                inv: n_step.atom.inv,
                lpath: join_paths(&il2, &i2.lpath),
                rpath: join_paths(&i2.rpath, &ir2),
            };
            let pn2 = pi + bs2 + q;
            let i2_step = PosStep { pos: pi, atom: i2 };
            let n2_step = PosStep { pos: pn2, atom: n2 };
            Ok(if i_first {
                (vec![n2_step, i2_step], None)
            } else {
                (vec![i2_step, n2_step], None)
            })
        }
        None => {
            let (bs2, il2, ir2) = erased_block_info(c, i_atom, which, i_first)?;
            let n2 = NAtom {
                kind: n_step.atom.kind.clone(),
                inv: n_step.atom.inv,
                lpath: join_paths(&il2, &i_atom.lpath),
                rpath: join_paths(&i_atom.rpath, &ir2),
            };
            let pn2 = pi + bs2 + q;
            Ok((vec![PosStep { pos: pn2, atom: n2 }], Some(i_step.clone())))
        }
    }
}

/// Undo an erased naturality exchange: rebuild the interchanger recorded in
/// `erased` together with the step on its other side.
fn mod_nat_create(
    c: &Computad,
    n2_step: &PosStep,
    erased: &PosStep,
    which: IchgSide,
    i_first: bool,
) -> Result<Vec<PosStep>, String> {
    let i_atom = &erased.atom;
    let err = |e: crate::terms::TypeError| e.to_string();
    // The erased side: where N' sits relative to the collapsed interchanger.
    let (bs2, il2, ir2) = erased_block_info(c, i_atom, which, i_first)?;
    let want_l = join_paths(&il2, &i_atom.lpath);
    let want_r = join_paths(&i_atom.rpath, &ir2);
    if n2_step.atom.lpath != want_l || n2_step.atom.rpath != want_r {
        return Err("step margins do not match the erased interchanger".to_string());
    }
    let pe = erased.pos;
    if n2_step.pos != pe + bs2 {
        return Err("step position does not match the erased interchanger".to_string());
    }
    let (bs, _, il, ir) = i_atom.block(c, !i_first, which).map_err(err)?;
    let n = NAtom {
        kind: n2_step.atom.kind.clone(),
        inv: n2_step.atom.inv,
        lpath: join_paths(&il, &i_atom.lpath),
        rpath: join_paths(&i_atom.rpath, &ir),
    };
    let n_step = PosStep { pos: pe + bs, atom: n };
    Ok(if i_first {
        vec![erased.clone(), n_step]
    } else {
        vec![n_step, erased.clone()]
    })
}

fn apply_mod_nat(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
    which: IchgSide,
    erased: &Option<PosStep>,
    direction: Direction,
) -> Result<(), String> {
    // Forward reads (N, I); backward reads (I, N).
    let i_first = direction == Direction::Backward;
    let i_index = if i_first { j } else { j + 1 };
    let pair_matches = i_index < steps.len()
        && match erased {
            Some(e) => steps[i_index] == *e,
            None => matches!(steps[i_index].atom.kind, NAtomKind::Ichg { .. }),
        };
    if pair_matches && j + 1 < steps.len() {
        let (n_step, i_step) =
            if i_first { (&steps[j + 1], &steps[j]) } else { (&steps[j], &steps[j + 1]) };
        let (new, collapsed) = mod_nat_exchange(c, n_step, i_step, which, i_first)?;
        if collapsed != *erased {
            return Err(if collapsed.is_some() {
                "the interchanger collapses; the step must record it".to_string()
            } else {
                "recorded erased interchanger does not apply".to_string()
            });
        }
        splice_validated(c, source, steps, j, 2, new)
    } else {
        let e = erased
            .as_ref()
            .ok_or("no interchanger at this position and no erased step recorded")?;
        if j >= steps.len() {
            return Err(format!("no step at position {j}"));
        }
        // Undoing the collapse runs the exchange the other way round.
        let new = mod_nat_create(c, &steps[j], e, which, !i_first)?;
        splice_validated(c, source, steps, j, 1, new)
    }
}

fn apply_hom2_interchange(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
) -> Result<(), String> {
    if j + 1 >= steps.len() {
        return Err(format!("no adjacent pair at position {j}"));
    }
    let err = |e: crate::terms::TypeError| e.to_string();
    let (qa, a) = (steps[j].pos, steps[j].atom.clone());
    let (qb, b) = (steps[j + 1].pos, steps[j + 1].atom.clone());
    let ac = a.consumed(c).map_err(err)?.len();
    let ap = a.produced(c).map_err(err)?.len();
    let bc = b.consumed(c).map_err(err)?.len();
    let bp = b.produced(c).map_err(err)?.len();
    // Both guards hold only for coincident empty windows; preferring the
    // lower branch there makes the exchange an involution.
    let new = if qb + bc <= qa {
        vec![PosStep { pos: qb, atom: b }, PosStep { pos: qa - bc + bp, atom: a }]
    } else if qb >= qa + ap {
        vec![PosStep { pos: qb - ap + ac, atom: b }, PosStep { pos: qa, atom: a }]
    } else {
        return Err("steps act on overlapping windows".to_string());
    };
    splice_validated(c, source, steps, j, 2, new)
}

fn apply_inverse_cancel(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
    atom: &NAtom,
    pos: usize,
    direction: Direction,
) -> Result<(), String> {
    if !atom.is_invertible(c) {
        return Err("step is not invertible".to_string());
    }
    let pair = vec![
        PosStep { pos, atom: atom.clone() },
        PosStep { pos, atom: atom.inverse() },
    ];
    match direction {
        Direction::Forward => {
            if j + 1 >= steps.len() || steps[j..j + 2] != pair[..] {
                return Err("pair does not match the recorded step and its inverse".to_string());
            }
            splice_validated(c, source, steps, j, 2, vec![])
        }
        Direction::Backward => splice_validated(c, source, steps, j, 0, pair),
    }
}

/// The flattened steps of both sides of every relation, cached for reuse.
pub struct MoveCtx {
    rels: Vec<(String, Vec<PosStep>, Vec<PosStep>)>,
}

impl MoveCtx {
    pub fn new(c: &Computad) -> MoveCtx {
        let mut rels = Vec::with_capacity(c.relations.len());
        for rel in &c.relations {
            if let (Ok(l), Ok(r)) = (canon3(c, &rel.lhs), canon3(c, &rel.rhs)) {
                rels.push((rel.name.clone(), l.steps, r.steps));
            }
        }
        MoveCtx { rels }
    }

    fn get(&self, id: &str) -> Option<(&[PosStep], &[PosStep])> {
        self.rels
            .iter()
            .find(|(name, _, _)| name == id)
            .map(|(_, l, r)| (l.as_slice(), r.as_slice()))
    }
}

/// Reverse a step sequence, inverting each atom in place.
pub(crate) fn inv_seq(steps: &[PosStep]) -> Vec<PosStep> {
    steps
        .iter()
        .rev()
        .map(|s| PosStep { pos: s.pos, atom: s.atom.inverse() })
        .collect()
}

/// The two sides of a relation variant: inverted, rotated, whiskered, and
/// shifted as the instance records.
fn relation_variant(
    c: &Computad,
    ctx: &MoveCtx,
    id: &str,
    inverted: bool,
    rot_start: usize,
    rot_end: usize,
    lwhisk: &[String],
    rwhisk: &[String],
    delta: usize,
) -> Result<(Vec<PosStep>, Vec<PosStep>), String> {
    let (l0, r0) = ctx.get(id).ok_or_else(|| format!("unknown relation `{id}`"))?;
    if inverted {
        for st in l0.iter().chain(r0.iter()) {
            if !st.atom.is_invertible(c) {
                return Err(format!("relation `{id}` is not invertible"));
            }
        }
    }
    let (l, r) = if inverted { (inv_seq(l0), inv_seq(r0)) } else { (l0.to_vec(), r0.to_vec()) };
    if rot_start > rot_end || rot_end > l.len() {
        return Err("rotation bounds out of range".to_string());
    }
    let (pre, rest) = l.split_at(rot_start);
    let (mid, post) = rest.split_at(rot_end - rot_start);
    for st in pre.iter().chain(post.iter()) {
        if !st.atom.is_invertible(c) {
            return Err("rotation moves a non-invertible step across".to_string());
        }
    }
    let mut rhs = inv_seq(pre);
    rhs.extend(r);
    rhs.extend(inv_seq(post));
    let transport = |v: &[PosStep]| -> Vec<PosStep> {
        v.iter()
            .map(|s| PosStep {
                pos: s.pos + delta,
                atom: NAtom {
                    kind: s.atom.kind.clone(),
                    inv: s.atom.inv,
                    lpath: join_paths(&s.atom.lpath, lwhisk),
                    rpath: join_paths(rwhisk, &s.atom.rpath),
                },
            })
            .collect()
    };
    Ok((transport(mid), transport(&rhs)))
}

#[allow(clippy::too_many_arguments)]
fn apply_relation(
    c: &Computad,
    ctx: &MoveCtx,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    j: usize,
    axiom: &AxiomInstance,
    direction: Direction,
) -> Result<(), String> {
    let AxiomInstance::Relation { id, inverted, rot_start, rot_end, lwhisk, rwhisk, delta } = axiom
    else {
        unreachable!()
    };
    let (lhs, rhs) =
        relation_variant(c, ctx, id, *inverted, *rot_start, *rot_end, lwhisk, rwhisk, *delta)?;
    let (from, to) = match direction {
        Direction::Forward => (lhs, rhs),
        Direction::Backward => (rhs, lhs),
    };
    if j + from.len() > steps.len() || steps[j..j + from.len()] != from[..] {
        return Err(format!("steps at {j} do not match the relation instance"));
    }
    splice_validated(c, source, steps, j, from.len(), to)
}

/// Apply one certificate step to a step list over the given ambient source.
pub fn apply_move(
    c: &Computad,
    ctx: &MoveCtx,
    source: &WhiskerNormal2Cell,
    steps: &mut Vec<PosStep>,
    step: &RewriteStep,
) -> Result<(), String> {
    let j = match step.position[..] {
        [j] => j,
        _ => return Err("rewrite position addresses a non-composition subterm".to_string()),
    };
    match &step.axiom {
        AxiomInstance::IchgUnit
        | AxiomInstance::WhiskerAssoc
        | AxiomInstance::Hom2Unit
        | AxiomInstance::Hom2Assoc
        | AxiomInstance::Functoriality => {
            if j > steps.len() {
                return Err(format!("position {j} exceeds {} steps", steps.len()));
            }
            Ok(())
        }
        AxiomInstance::IchgVcompLeft { merged, split_at } => {
            apply_split(c, source, steps, j, merged, *split_at, SplitKind::Left, step.direction)
        }
        AxiomInstance::IchgVcompRight { merged, split_at } => {
            apply_split(c, source, steps, j, merged, *split_at, SplitKind::Right, step.direction)
        }
        AxiomInstance::ModificationNatLeft { erased } => {
            apply_mod_nat(c, source, steps, j, IchgSide::Beta, erased, step.direction)
        }
        AxiomInstance::ModificationNatRight { erased } => {
            apply_mod_nat(c, source, steps, j, IchgSide::Alpha, erased, step.direction)
        }
        AxiomInstance::Hom2Interchange => apply_hom2_interchange(c, source, steps, j),
        AxiomInstance::InverseCancel { atom, pos } => {
            apply_inverse_cancel(c, source, steps, j, atom, *pos, step.direction)
        }
        AxiomInstance::Relation { .. } => {
            apply_relation(c, ctx, source, steps, j, &step.axiom, step.direction)
        }
    }
}

/// All axiom instances that apply to `steps`, in a fixed order. Candidates
/// are constructed so that [`apply_move`] accepts them; the list is used
/// both by the prover's search and by tests that round-trip moves.
pub fn enumerate_moves(
    c: &Computad,
    ctx: &MoveCtx,
    source: &WhiskerNormal2Cell,
    steps: &[PosStep],
) -> Vec<RewriteStep> {
    let mut out: Vec<RewriteStep> = Vec::new();
    let err_ok = |r: Result<Vec<Layer>, crate::terms::TypeError>| r.ok();

    // Cancellation of adjacent inverse pairs.
    for j in 0..steps.len().saturating_sub(1) {
        if steps[j].pos == steps[j + 1].pos
            && steps[j + 1].atom == steps[j].atom.inverse()
            && steps[j].atom.is_invertible(c)
        {
            out.push(RewriteStep::new(
                j,
                AxiomInstance::InverseCancel { atom: steps[j].atom.clone(), pos: steps[j].pos },
                Direction::Forward,
            ));
        }
    }

    // Naturality exchanges, both orientations and both blocks.
    for j in 0..steps.len().saturating_sub(1) {
        for (i_first, dir) in [(false, Direction::Forward), (true, Direction::Backward)] {
            let i_index = if i_first { j } else { j + 1 };
            if !matches!(steps[i_index].atom.kind, NAtomKind::Ichg { .. }) {
                continue;
            }
            let (n_step, i_step) =
                if i_first { (&steps[j + 1], &steps[j]) } else { (&steps[j], &steps[j + 1]) };
            for which in [IchgSide::Beta, IchgSide::Alpha] {
                if let Ok((_, collapsed)) = mod_nat_exchange(c, n_step, i_step, which, i_first) {
                    let axiom = match which {
                        IchgSide::Beta => AxiomInstance::ModificationNatLeft { erased: collapsed },
                        IchgSide::Alpha => {
                            AxiomInstance::ModificationNatRight { erased: collapsed }
                        }
                    };
                    out.push(RewriteStep::new(j, axiom, dir));
                }
            }
        }
    }

    // Merges of adjacent interchangers sharing their sliding argument.
    for j in 0..steps.len().saturating_sub(1) {
        if let Some(step) = try_merge_left(c, steps, j) {
            out.push(step);
        }
    }

    // Splits of a single interchanger.
    for (j, s) in steps.iter().enumerate() {
        if let NAtomKind::Ichg { beta, alpha } = &s.atom.kind {
            for k in 1..alpha.layers.len() {
                out.push(RewriteStep::new(
                    j,
                    AxiomInstance::IchgVcompLeft { merged: s.atom.clone(), split_at: k },
                    Direction::Forward,
                ));
            }
            for k in 1..beta.layers.len() {
                out.push(RewriteStep::new(
                    j,
                    AxiomInstance::IchgVcompRight { merged: s.atom.clone(), split_at: k },
                    Direction::Forward,
                ));
            }
        }
    }

    // Relation instances anchored on an observed step.
    enumerate_relations(c, ctx, steps, &mut out);

    // Disjoint-window exchanges.
    for j in 0..steps.len().saturating_sub(1) {
        let (qa, qb) = (steps[j].pos, steps[j + 1].pos);
        let sizes = (
            err_ok(steps[j].atom.produced(c)).map(|v| v.len()),
            err_ok(steps[j + 1].atom.consumed(c)).map(|v| v.len()),
        );
        if let (Some(ap), Some(bc)) = sizes {
            if qb >= qa + ap || qb + bc <= qa {
                out.push(RewriteStep::new(j, AxiomInstance::Hom2Interchange, Direction::Forward));
            }
        }
    }

    // Insertions of cancelling pairs, only near-trivial states.
    if steps.len() <= 1 {
        enumerate_cancel_insertions(c, source, steps, &mut out);
    }

    out
}

fn try_merge_left(c: &Computad, steps: &[PosStep], j: usize) -> Option<RewriteStep> {
    let (s1, s2) = (&steps[j], &steps[j + 1]);
    let inv = s1.atom.inv;
    if s2.atom.inv != inv {
        return None;
    }
    let (b1, a1) = ichg_parts(&s1.atom).ok()?;
    let (b2, a2) = ichg_parts(&s2.atom).ok()?;
    let (lo, hi, lo_atom, hi_atom) = if !inv {
        (s1, s2, (b1, a1), (b2, a2))
    } else {
        (s2, s1, (b2, a2), (b1, a1))
    };
    let (blo, alo) = lo_atom;
    let (bhi, ahi) = hi_atom;
    if hi.pos < lo.pos {
        return None;
    }
    let k = hi.pos - lo.pos;
    if k != alo.layers.len() || k == 0 {
        return None;
    }
    if blo != bhi || lo.atom.lpath != hi.atom.lpath {
        return None;
    }
    let abs = |seg: &NormalSeg, rpath: &[String]| NormalSeg {
        source: join_paths(rpath, &seg.source),
        layers: seg
            .layers
            .iter()
            .map(|l| Layer {
                left: l.left.clone(),
                gen: l.gen.clone(),
                right: join_paths(rpath, &l.right),
            })
            .collect(),
    };
    let lo_abs = abs(alo, &lo.atom.rpath);
    let hi_abs = abs(ahi, &hi.atom.rpath);
    if lo_abs.target(c).ok()? != hi_abs.source {
        return None;
    }
    let mut glued = lo_abs;
    glued.layers.extend(hi_abs.layers);
    let merged = mk_ichg_atom(blo.clone(), glued, inv, lo.atom.lpath.clone(), vec![])?;
    let expected = split_steps(c, &merged, k, lo.pos, SplitKind::Left).ok()?;
    if expected != steps[j..j + 2] {
        return None;
    }
    Some(RewriteStep::new(
        j,
        AxiomInstance::IchgVcompLeft { merged, split_at: k },
        Direction::Backward,
    ))
}

fn enumerate_relations(
    c: &Computad,
    ctx: &MoveCtx,
    steps: &[PosStep],
    out: &mut Vec<RewriteStep>,
) {
    for (id, l0, r0) in &ctx.rels {
        let invertible =
            l0.iter().chain(r0.iter()).all(|s| s.atom.is_invertible(c));
        for inverted in [false, true] {
            if inverted && !invertible {
                continue;
            }
            let (l, r) =
                if inverted { (inv_seq(l0), inv_seq(r0)) } else { (l0.clone(), r0.clone()) };
            let rot_ok = |pre: &[PosStep], post: &[PosStep]| {
                pre.iter().chain(post.iter()).all(|s| s.atom.is_invertible(c))
            };
            for a in 0..=l.len() {
                for b in a..=l.len() {
                    let (pre, rest) = l.split_at(a);
                    let (mid, post) = rest.split_at(b - a);
                    if !rot_ok(pre, post) {
                        continue;
                    }
                    let mut rhs = inv_seq(pre);
                    rhs.extend(r.iter().cloned());
                    rhs.extend(inv_seq(post));
                    for (variant, dir) in
                        [(mid, Direction::Forward), (rhs.as_slice(), Direction::Backward)]
                    {
                        let Some(v0) = variant.first() else { continue };
                        for j in 0..steps.len() {
                            if j + variant.len() > steps.len() {
                                break;
                            }
                            let obs = &steps[j];
                            let Some(delta) = obs.pos.checked_sub(v0.pos) else { continue };
                            let Some(lw) = strip_path_prefix(&obs.atom.lpath, &v0.atom.lpath)
                            else {
                                continue;
                            };
                            let Some(rw) = strip_path_suffix(&obs.atom.rpath, &v0.atom.rpath)
                            else {
                                continue;
                            };
                            let matches = variant.iter().zip(&steps[j..]).all(|(v, s)| {
                                s.pos == v.pos + delta
                                    && s.atom.kind == v.atom.kind
                                    && s.atom.inv == v.atom.inv
                                    && s.atom.lpath == join_paths(&v.atom.lpath, lw)
                                    && s.atom.rpath == join_paths(rw, &v.atom.rpath)
                            });
                            if !matches {
                                continue;
                            }
                            let step = RewriteStep::new(
                                j,
                                AxiomInstance::Relation {
                                    id: id.clone(),
                                    inverted,
                                    rot_start: a,
                                    rot_end: b,
                                    lwhisk: lw.to_vec(),
                                    rwhisk: rw.to_vec(),
                                    delta,
                                },
                                dir,
                            );
                            if !out.contains(&step) {
                                out.push(step);
                            }
                        }
                    }
                }
            }
        }
    }
}

fn enumerate_cancel_insertions(
    c: &Computad,
    source: &WhiskerNormal2Cell,
    steps: &[PosStep],
    out: &mut Vec<RewriteStep>,
) {
    for j in 0..=steps.len() {
        let Ok(state) = state_at(c, source, steps, j) else { continue };
        for g in &c.three_gens {
            if !g.invertible {
                continue;
            }
            for inv in [false, true] {
                let atom0 = NAtom {
                    kind: NAtomKind::Gen(g.id.name.clone()),
                    inv,
                    lpath: vec![],
                    rpath: vec![],
                };
                let Ok(core) = atom0.consumed(c) else { continue };
                if core.is_empty() {
                    let Ok(wsrc) = atom0.window_source(c) else { continue };
                    for p in 0..=state.len() {
                        let Ok(path) = (WhiskerNormal2Cell {
                            source: source.source.clone(),
                            layers: state.clone(),
                        })
                        .path_at(c, p) else {
                            continue;
                        };
                        for cut in 0..=path.path.len() {
                            if cut + wsrc.len() > path.path.len()
                                || path.path[cut..cut + wsrc.len()] != wsrc[..]
                            {
                                continue;
                            }
                            let atom = NAtom {
                                kind: atom0.kind.clone(),
                                inv,
                                rpath: path.path[..cut].to_vec(),
                                lpath: path.path[cut + wsrc.len()..].to_vec(),
                            };
                            out.push(RewriteStep::new(
                                j,
                                AxiomInstance::InverseCancel { atom, pos: p },
                                Direction::Backward,
                            ));
                        }
                    }
                } else {
                    if state.len() < core.len() {
                        continue;
                    }
                    for p in 0..=state.len() - core.len() {
                        let first = &state[p];
                        let Some(lp) = strip_path_prefix(&first.left, &core[0].left) else {
                            continue;
                        };
                        let Some(rp) = strip_path_suffix(&first.right, &core[0].right) else {
                            continue;
                        };
                        let atom = NAtom {
                            kind: atom0.kind.clone(),
                            inv,
                            lpath: lp.to_vec(),
                            rpath: rp.to_vec(),
                        };
                        let Ok(window) = atom.consumed(c) else { continue };
                        if state[p..p + window.len()] == window[..] {
                            out.push(RewriteStep::new(
                                j,
                                AxiomInstance::InverseCancel { atom, pos: p },
                                Direction::Backward,
                            ));
                        }
                    }
                }
            }
        }
    }
}
