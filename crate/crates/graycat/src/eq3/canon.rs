//! Canonical forms for 3-cells.
//!
//! A 3-cell is flattened into a [`Normal3`]: the normal form of its source
//! 2-cell together with a list of positioned rewrite steps. Each step
//! replaces a window of layers by another window, and the step's atom
//! records what acts there: a 3-generator or an interchanger between two
//! layer segments. Two 3-cell terms that differ only by whisker
//! reassociation, units, functoriality of whiskering, or the order-preserving
//! regrouping of vertical composition flatten to the same `Normal3`.

use serde::{Deserialize, Serialize};

use crate::normal2::{normalize2, splice, walk, Layer, WhiskerNormal2Cell};
use crate::presentation::Computad;
use crate::terms::{OneCellTerm, ThreeCellTerm, TypeError};

/// A contiguous block of layers over a 1-cell path, used as one argument
/// of an interchanger atom. `source` is the path the block starts on;
/// layer whisker contexts are relative to that path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalSeg {
    pub source: Vec<String>,
    pub layers: Vec<Layer>,
}

impl NormalSeg {
    /// The path the block ends on.
    pub fn target(&self, c: &Computad) -> Result<Vec<String>, TypeError> {
        let mut path = self.source.clone();
        for layer in &self.layers {
            splice(c, &mut path, layer)?;
        }
        Ok(path)
    }
}

/// What a single rewrite step does, independent of where it sits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NAtomKind {
    /// A 3-generator acting on the normal form of its declared boundary.
    Gen(String),
    /// An interchanger sliding the block `beta` past the block `alpha`;
    /// `alpha` sits closer to the start of the ambient path.
    Ichg { beta: NormalSeg, alpha: NormalSeg },
}

/// A rewrite step's content: the acting cell, its orientation, and the
/// full ambient whisker context (`rpath` before the window, `lpath` after).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NAtom {
    pub kind: NAtomKind,
    pub inv: bool,
    pub lpath: Vec<String>,
    pub rpath: Vec<String>,
}

/// Which argument block of an interchanger atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IchgSide {
    Beta,
    Alpha,
}

impl NAtom {
    /// The formally inverse atom. For `Gen` atoms the caller is responsible
    /// for checking that the generator is invertible.
    pub fn inverse(&self) -> NAtom {
        NAtom {
            kind: self.kind.clone(),
            inv: !self.inv,
            lpath: self.lpath.clone(),
            rpath: self.rpath.clone(),
        }
    }

    /// Whether this atom may be formally inverted in `c`.
    pub fn is_invertible(&self, c: &Computad) -> bool {
        match &self.kind {
            NAtomKind::Gen(name) => c.three_gen(name).map_or(false, |g| g.invertible),
            NAtomKind::Ichg { .. } => true,
        }
    }

    fn gen_pictures(&self, c: &Computad, name: &str) -> Result<(Vec<Layer>, Vec<Layer>), TypeError> {
        let g = c
            .three_gen(name)
            .ok_or_else(|| TypeError::UnknownGenerator { dimension: 3, name: name.to_string() })?;
        let src = normalize2(c, &g.src2)?.layers;
        let tgt = normalize2(c, &g.tgt2)?.layers;
        Ok((src, tgt))
    }

    fn ichg_pictures(
        &self,
        c: &Computad,
        beta: &NormalSeg,
        alpha: &NormalSeg,
    ) -> Result<(Vec<Layer>, Vec<Layer>), TypeError> {
        Ok((
            ichg_picture(c, beta, alpha, true)?,
            ichg_picture(c, beta, alpha, false)?,
        ))
    }

    fn pictures(&self, c: &Computad) -> Result<(Vec<Layer>, Vec<Layer>), TypeError> {
        match &self.kind {
            NAtomKind::Gen(name) => self.gen_pictures(c, name),
            NAtomKind::Ichg { beta, alpha } => self.ichg_pictures(c, beta, alpha),
        }
    }

    /// The ambient layer window this step removes.
    pub fn consumed(&self, c: &Computad) -> Result<Vec<Layer>, TypeError> {
        let (src, tgt) = self.pictures(c)?;
        Ok(self.wrap(if self.inv { tgt } else { src }))
    }

    /// The ambient layer window this step inserts.
    pub fn produced(&self, c: &Computad) -> Result<Vec<Layer>, TypeError> {
        let (src, tgt) = self.pictures(c)?;
        Ok(self.wrap(if self.inv { src } else { tgt }))
    }

    fn wrap(&self, mut layers: Vec<Layer>) -> Vec<Layer> {
        for layer in &mut layers {
            layer.left.extend(self.lpath.iter().cloned());
            let mut right = self.rpath.clone();
            right.extend(layer.right.drain(..));
            layer.right = right;
        }
        layers
    }

    /// The 1-cell path the window sits on, between `rpath` and `lpath`.
    /// Source and target windows share it.
    pub fn window_source(&self, c: &Computad) -> Result<Vec<String>, TypeError> {
        match &self.kind {
            NAtomKind::Gen(name) => {
                let g = c.three_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                    dimension: 3,
                    name: name.clone(),
                })?;
                Ok(normalize2(c, &g.src2)?.source.path)
            }
            NAtomKind::Ichg { beta, alpha } => {
                let mut path = alpha.source.clone();
                path.extend(beta.source.iter().cloned());
                Ok(path)
            }
        }
    }

    /// For an interchanger atom: the sub-range of the consumed or produced
    /// window occupied by one argument block, with the extra whisker paths
    /// that block's layers carry inside the window beyond `lpath`/`rpath`.
    /// Returns `(start, len, inner_left, inner_right)`; `start` is relative
    /// to the window.
    pub fn block(
        &self,
        c: &Computad,
        consumed: bool,
        side: IchgSide,
    ) -> Result<(usize, usize, Vec<String>, Vec<String>), TypeError> {
        let (beta, alpha) = match &self.kind {
            NAtomKind::Ichg { beta, alpha } => (beta, alpha),
            NAtomKind::Gen(name) => {
                return Err(TypeError::Mismatch {
                    position: "atom".to_string(),
                    detail: format!("`{name}` is not an interchanger"),
                })
            }
        };
        let src_picture = consumed != self.inv;
        let (nb, na) = (beta.layers.len(), alpha.layers.len());
        Ok(if src_picture {
            match side {
                IchgSide::Beta => (0, nb, vec![], alpha.source.clone()),
                IchgSide::Alpha => (nb, na, beta.target(c)?, vec![]),
            }
        } else {
            match side {
                IchgSide::Alpha => (0, na, beta.source.clone(), vec![]),
                IchgSide::Beta => (na, nb, vec![], alpha.target(c)?),
            }
        })
    }
}

/// One positioned rewrite step: `atom` acts on the layer window starting
/// at layer index `pos`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosStep {
    pub pos: usize,
    pub atom: NAtom,
}

/// Canonical form of a 3-cell: the normal form of its source 2-cell and
/// the positioned steps that rewrite it into the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Normal3 {
    pub source: WhiskerNormal2Cell,
    pub steps: Vec<PosStep>,
}

/// Counters collected while flattening a term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CanonStats {
    /// Interchangers whose arguments normalized to an identity and which
    /// therefore left no step behind.
    pub erased_units: usize,
}

/// The layer window of an interchanger before (`src_side`) or after
/// sliding, without ambient whiskers.
fn ichg_picture(
    c: &Computad,
    beta: &NormalSeg,
    alpha: &NormalSeg,
    src_side: bool,
) -> Result<Vec<Layer>, TypeError> {
    let mut layers = Vec::with_capacity(beta.layers.len() + alpha.layers.len());
    if src_side {
        for l in &beta.layers {
            let mut right = alpha.source.clone();
            right.extend(l.right.iter().cloned());
            layers.push(Layer { left: l.left.clone(), gen: l.gen.clone(), right });
        }
        let bt = beta.target(c)?;
        for l in &alpha.layers {
            let mut left = l.left.clone();
            left.extend(bt.iter().cloned());
            layers.push(Layer { left, gen: l.gen.clone(), right: l.right.clone() });
        }
    } else {
        for l in &alpha.layers {
            let mut left = l.left.clone();
            left.extend(beta.source.iter().cloned());
            layers.push(Layer { left, gen: l.gen.clone(), right: l.right.clone() });
        }
        let at = alpha.target(c)?;
        for l in &beta.layers {
            let mut right = at.clone();
            right.extend(l.right.iter().cloned());
            layers.push(Layer { left: l.left.clone(), gen: l.gen.clone(), right });
        }
    }
    Ok(layers)
}

fn common_prefix<'a, I: Iterator<Item = &'a [String]>>(mut paths: I) -> Vec<String> {
    let first = match paths.next() {
        Some(p) => p.to_vec(),
        None => return vec![],
    };
    paths.fold(first, |acc, p| {
        let n = acc.iter().zip(p.iter()).take_while(|(a, b)| a == b).count();
        acc[..n].to_vec()
    })
}

fn common_suffix<'a, I: Iterator<Item = &'a [String]>>(mut paths: I) -> Vec<String> {
    let first = match paths.next() {
        Some(p) => p.to_vec(),
        None => return vec![],
    };
    paths.fold(first, |acc, p| {
        let n = acc
            .iter()
            .rev()
            .zip(p.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        acc[acc.len() - n..].to_vec()
    })
}

/// Build an interchanger atom in canonical form, or `None` when either
/// block is empty (the interchanger is then a unit and leaves no step).
///
/// Canonicalization moves whisker context shared by a whole block out of
/// the block: a common prefix of `alpha`'s layer rights into `rpath`, a
/// common suffix of `beta`'s layer lefts into `lpath`, and a common prefix
/// of `beta`'s layer rights onto `alpha`'s left side.
pub fn mk_ichg_atom(
    mut beta: NormalSeg,
    mut alpha: NormalSeg,
    inv: bool,
    lpath: Vec<String>,
    mut rpath: Vec<String>,
) -> Option<NAtom> {
    if beta.layers.is_empty() || alpha.layers.is_empty() {
        return None;
    }
    let e = common_prefix(
        alpha
            .layers
            .iter()
            .map(|l| l.right.as_slice())
            .chain(std::iter::once(alpha.source.as_slice())),
    );
    if !e.is_empty() {
        for l in &mut alpha.layers {
            l.right.drain(..e.len());
        }
        alpha.source.drain(..e.len());
        rpath.extend(e);
    }
    let h = common_suffix(
        beta
            .layers
            .iter()
            .map(|l| l.left.as_slice())
            .chain(std::iter::once(beta.source.as_slice())),
    );
    let lpath = if h.is_empty() {
        lpath
    } else {
        for l in &mut beta.layers {
            l.left.truncate(l.left.len() - h.len());
        }
        beta.source.truncate(beta.source.len() - h.len());
        let mut newl = h;
        newl.extend(lpath);
        newl
    };
    let m = common_prefix(
        beta
            .layers
            .iter()
            .map(|l| l.right.as_slice())
            .chain(std::iter::once(beta.source.as_slice())),
    );
    if !m.is_empty() {
        for l in &mut beta.layers {
            l.right.drain(..m.len());
        }
        beta.source.drain(..m.len());
        for l in &mut alpha.layers {
            l.left.extend(m.iter().cloned());
        }
        alpha.source.extend(m.iter().cloned());
    }
    Some(NAtom { kind: NAtomKind::Ichg { beta, alpha }, inv, lpath, rpath })
}

/// Apply one positioned step to a layer state. `source` is the ambient
/// source 1-cell of the state, needed to locate empty windows.
pub fn apply_step(
    c: &Computad,
    source: &OneCellTerm,
    layers: &mut Vec<Layer>,
    step: &PosStep,
) -> Result<(), String> {
    let consumed = step.atom.consumed(c).map_err(|e| e.to_string())?;
    let produced = step.atom.produced(c).map_err(|e| e.to_string())?;
    let n = consumed.len();
    if step.pos + n > layers.len() {
        return Err(format!(
            "step window {}..{} exceeds {} layers",
            step.pos,
            step.pos + n,
            layers.len()
        ));
    }
    if layers[step.pos..step.pos + n] != consumed[..] {
        return Err(format!("layer window at {} does not match the step", step.pos));
    }
    if n == 0 {
        let here = WhiskerNormal2Cell { source: source.clone(), layers: layers.clone() }
            .path_at(c, step.pos)
            .map_err(|e| e.to_string())?;
        let mut want = step.atom.rpath.clone();
        want.extend(step.atom.window_source(c).map_err(|e| e.to_string())?);
        want.extend(step.atom.lpath.iter().cloned());
        if here.path != want {
            return Err(format!(
                "empty window at {} sits on the wrong 1-cell",
                step.pos
            ));
        }
    }
    layers.splice(step.pos..step.pos + n, produced);
    Ok(())
}

/// Run all steps of a canonical form, returning the final layer state.
pub fn replay(c: &Computad, n: &Normal3) -> Result<Vec<Layer>, String> {
    let mut layers = n.source.layers.clone();
    for step in &n.steps {
        apply_step(c, &n.source.source, &mut layers, step)?;
    }
    Ok(layers)
}

/// Flatten a 3-cell term, collecting statistics.
pub fn canon3_with_stats(c: &Computad, t: &ThreeCellTerm) -> Result<(Normal3, CanonStats), TypeError> {
    crate::terms::boundary3(c, t)?;
    let mut stats = CanonStats::default();
    let n = go(c, t, &mut stats)?;
    Ok((n, stats))
}

/// Flatten a 3-cell term into its canonical form. Formal inverse pairs are
/// kept; see [`cancel_inverses`] and [`normalize3_strict`].
pub fn canon3(c: &Computad, t: &ThreeCellTerm) -> Result<Normal3, TypeError> {
    Ok(canon3_with_stats(c, t)?.0)
}

fn go(c: &Computad, t: &ThreeCellTerm, stats: &mut CanonStats) -> Result<Normal3, TypeError> {
    use ThreeCellTerm::*;
    Ok(match t {
        Id3(x) => Normal3 { source: normalize2(c, x)?, steps: vec![] },
        Gen3(name) | InvGen3(name) => {
            let inv = matches!(t, InvGen3(_));
            let g = c.three_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 3,
                name: name.clone(),
            })?;
            let start = if inv { &g.tgt2 } else { &g.src2 };
            Normal3 {
                source: normalize2(c, start)?,
                steps: vec![PosStep {
                    pos: 0,
                    atom: NAtom {
                        kind: NAtomKind::Gen(name.clone()),
                        inv,
                        lpath: vec![],
                        rpath: vec![],
                    },
                }],
            }
        }
        Ichg(b, a) | InvIchg(b, a) => {
            let inv = matches!(t, InvIchg(_, _));
            let nb = normalize2(c, b)?;
            let na = normalize2(c, a)?;
            let beta = NormalSeg { source: nb.source.path.clone(), layers: nb.layers.clone() };
            let alpha = NormalSeg { source: na.source.path.clone(), layers: na.layers.clone() };
            let mut spath = alpha.source.clone();
            spath.extend(beta.source.iter().cloned());
            let src1 = OneCellTerm { base: na.source.base.clone(), path: spath };
            let start_layers = ichg_picture(c, &beta, &alpha, !inv)?;
            let steps = match mk_ichg_atom(beta, alpha, inv, vec![], vec![]) {
                Some(atom) => vec![PosStep { pos: 0, atom }],
                None => {
                    stats.erased_units += 1;
                    vec![]
                }
            };
            Normal3 { source: WhiskerNormal2Cell { source: src1, layers: start_layers }, steps }
        }
        LWhisk1(g, x) => {
            let mut n = go(c, x, stats)?;
            for step in &mut n.steps {
                step.atom.lpath.extend(g.path.iter().cloned());
            }
            for layer in &mut n.source.layers {
                layer.left.extend(g.path.iter().cloned());
            }
            n.source.source.path.extend(g.path.iter().cloned());
            n
        }
        RWhisk1(x, f) => {
            let mut n = go(c, x, stats)?;
            for step in &mut n.steps {
                let mut r = f.path.clone();
                r.extend(step.atom.rpath.drain(..));
                step.atom.rpath = r;
            }
            for layer in &mut n.source.layers {
                let mut r = f.path.clone();
                r.extend(layer.right.drain(..));
                layer.right = r;
            }
            let mut p = f.path.clone();
            p.extend(n.source.source.path.drain(..));
            n.source.source.path = p;
            n.source.source.base = f.base.clone();
            n
        }
        LWhisk2(a2, x) => {
            let n = go(c, x, stats)?;
            let m = normalize2(c, a2)?;
            let shift = m.layers.len();
            let mut layers = m.layers;
            layers.extend(n.source.layers);
            Normal3 {
                source: WhiskerNormal2Cell { source: m.source, layers },
                steps: n
                    .steps
                    .into_iter()
                    .map(|s| PosStep { pos: s.pos + shift, atom: s.atom })
                    .collect(),
            }
        }
        RWhisk2(x, a2) => {
            let mut n = go(c, x, stats)?;
            let m = normalize2(c, a2)?;
            n.source.layers.extend(m.layers);
            n
        }
        VComp3(a, b) => {
            let na = go(c, a, stats)?;
            let nb = go(c, b, stats)?;
            let mid = replay(c, &na).map_err(|e| TypeError::Mismatch {
                position: "root".to_string(),
                detail: e,
            })?;
            if mid != nb.source.layers || na.source.source != nb.source.source {
                return Err(TypeError::Mismatch {
                    position: "root".to_string(),
                    detail: "3-cell composite interface does not match up to normalization"
                        .to_string(),
                });
            }
            let mut steps = na.steps;
            steps.extend(nb.steps);
            Normal3 { source: na.source, steps }
        }
        HComp3(a, b) => {
            let na = go(c, a, stats)?;
            let nb = go(c, b, stats)?;
            let shift = replay(c, &na)
                .map_err(|e| TypeError::Mismatch { position: "root".to_string(), detail: e })?
                .len();
            let mut layers = na.source.layers.clone();
            layers.extend(nb.source.layers);
            let mut steps = na.steps;
            steps.extend(
                nb.steps
                    .into_iter()
                    .map(|s| PosStep { pos: s.pos + shift, atom: s.atom }),
            );
            Normal3 {
                source: WhiskerNormal2Cell { source: na.source.source, layers },
                steps,
            }
        }
    })
}

/// Remove adjacent formal inverse pairs at equal positions until none remain.
pub fn cancel_inverses(steps: &[PosStep]) -> Vec<PosStep> {
    let mut out: Vec<PosStep> = Vec::with_capacity(steps.len());
    for step in steps {
        let cancels = out
            .last()
            .map_or(false, |top| top.pos == step.pos && top.atom == step.atom.inverse());
        if cancels {
            out.pop();
        } else {
            out.push(step.clone());
        }
    }
    out
}

/// Rebuild a 3-cell term whose canonical form is exactly `n`.
pub fn readback(c: &Computad, n: &Normal3) -> Result<ThreeCellTerm, TypeError> {
    if n.steps.is_empty() {
        return Ok(ThreeCellTerm::Id3(n.source.embed(c)?));
    }
    let base = &n.source.source;
    let mut state = n.source.layers.clone();
    let mut factors = Vec::with_capacity(n.steps.len());
    for step in &n.steps {
        let consumed = step.atom.consumed(c)?;
        let window_src = step.atom.window_source(c)?;
        let core_base = walk(c, &base.base, &step.atom.rpath)?;
        let mut f = match &step.atom.kind {
            NAtomKind::Gen(name) => {
                if step.atom.inv {
                    ThreeCellTerm::InvGen3(name.clone())
                } else {
                    ThreeCellTerm::Gen3(name.clone())
                }
            }
            NAtomKind::Ichg { beta, alpha } => {
                let a_cell = WhiskerNormal2Cell {
                    source: OneCellTerm { base: core_base.clone(), path: alpha.source.clone() },
                    layers: alpha.layers.clone(),
                }
                .embed(c)?;
                let b_base = walk(c, &core_base, &alpha.source)?;
                let b_cell = WhiskerNormal2Cell {
                    source: OneCellTerm { base: b_base, path: beta.source.clone() },
                    layers: beta.layers.clone(),
                }
                .embed(c)?;
                if step.atom.inv {
                    ThreeCellTerm::inv_ichg(b_cell, a_cell)
                } else {
                    ThreeCellTerm::ichg(b_cell, a_cell)
                }
            }
        };
        if !step.atom.rpath.is_empty() {
            f = ThreeCellTerm::rwhisk1(
                f,
                OneCellTerm { base: base.base.clone(), path: step.atom.rpath.clone() },
            );
        }
        if !step.atom.lpath.is_empty() {
            let mut walked = step.atom.rpath.clone();
            walked.extend(window_src.iter().cloned());
            let l_base = walk(c, &base.base, &walked)?;
            f = ThreeCellTerm::lwhisk1(
                OneCellTerm { base: l_base, path: step.atom.lpath.clone() },
                f,
            );
        }
        let above = &state[step.pos + consumed.len()..];
        if !above.is_empty() {
            let above_src = WhiskerNormal2Cell { source: base.clone(), layers: state.clone() }
                .path_at(c, step.pos + consumed.len())?;
            let above_cell =
                WhiskerNormal2Cell { source: above_src, layers: above.to_vec() }.embed(c)?;
            f = ThreeCellTerm::rwhisk2(f, above_cell);
        }
        if step.pos > 0 {
            let below_cell = WhiskerNormal2Cell {
                source: base.clone(),
                layers: state[..step.pos].to_vec(),
            }
            .embed(c)?;
            f = ThreeCellTerm::lwhisk2(below_cell, f);
        }
        factors.push(f);
        apply_step(c, base, &mut state, step).map_err(|e| TypeError::Mismatch {
            position: "root".to_string(),
            detail: e,
        })?;
    }
    let mut term = factors.pop().expect("at least one step");
    while let Some(f) = factors.pop() {
        term = ThreeCellTerm::vcomp3(f, term);
    }
    Ok(term)
}

/// Flatten, cancel adjacent formal inverse pairs, and read back.
pub fn normalize3_strict(c: &Computad, t: &ThreeCellTerm) -> Result<ThreeCellTerm, TypeError> {
    let n = canon3(c, t)?;
    let steps = cancel_inverses(&n.steps);
    readback(c, &Normal3 { source: n.source, steps })
}
