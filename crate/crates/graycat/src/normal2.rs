//! Whisker normal forms for 2-cells.
//!
//! In a locally strict setting every 2-cell composite is equal to a unique
//! vertical chain of whiskered generators. The normal form stores the source
//! 1-cell plus one [`Layer`] per generator occurrence; two 2-cell terms are
//! equal iff their normal forms coincide.

use serde::{Deserialize, Serialize};

use crate::presentation::Computad;
use crate::terms::{self, OneCellTerm, TwoCellTerm, TypeError};

/// One generator occurrence inside a whisker normal form. The occurrence
/// sits on the 1-cell path `right ++ src1(gen).path ++ left` (diagrammatic
/// order, so `right` is applied first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layer {
    pub left: Vec<String>,
    pub gen: String,
    pub right: Vec<String>,
}

/// Whisker normal form of a 2-cell: a source 1-cell and a bottom-to-top
/// list of layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WhiskerNormal2Cell {
    pub source: OneCellTerm,
    pub layers: Vec<Layer>,
}

pub(crate) fn walk(c: &Computad, base: &str, names: &[String]) -> Result<String, TypeError> {
    let mut cur = base.to_string();
    for name in names {
        let g = c.one_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
            dimension: 1,
            name: name.clone(),
        })?;
        if g.src != cur {
            return Err(TypeError::Mismatch {
                position: "layer".to_string(),
                detail: format!("1-cell `{name}` does not compose at `{cur}`"),
            });
        }
        cur = g.tgt.clone();
    }
    Ok(cur)
}

pub(crate) fn splice(
    c: &Computad,
    path: &mut Vec<String>,
    layer: &Layer,
) -> Result<(), TypeError> {
    let gen = c.two_gen(&layer.gen).ok_or_else(|| TypeError::UnknownGenerator {
        dimension: 2,
        name: layer.gen.clone(),
    })?;
    let k = gen.src1.path.len();
    let lo = layer.right.len();
    let ok = path.len() == lo + k + layer.left.len()
        && path[..lo] == layer.right[..]
        && path[lo..lo + k] == gen.src1.path[..]
        && path[lo + k..] == layer.left[..];
    if !ok {
        return Err(TypeError::Mismatch {
            position: "layer".to_string(),
            detail: format!("layer `{}` does not sit on the current 1-cell", layer.gen),
        });
    }
    path.splice(lo..lo + k, gen.tgt1.path.iter().cloned());
    Ok(())
}

impl WhiskerNormal2Cell {
    /// The 1-cell below layer `i`; `i == 0` gives the source and
    /// `i == layers.len()` the target.
    pub fn path_at(&self, c: &Computad, i: usize) -> Result<OneCellTerm, TypeError> {
        let mut path = self.source.path.clone();
        for layer in &self.layers[..i] {
            splice(c, &mut path, layer)?;
        }
        Ok(OneCellTerm { base: self.source.base.clone(), path })
    }

    /// The target 1-cell of the whole normal form.
    pub fn target(&self, c: &Computad) -> Result<OneCellTerm, TypeError> {
        self.path_at(c, self.layers.len())
    }

    /// Rebuild a 2-cell term whose normal form is `self`.
    pub fn embed(&self, c: &Computad) -> Result<TwoCellTerm, TypeError> {
        if self.layers.is_empty() {
            return Ok(TwoCellTerm::Id2(self.source.clone()));
        }
        let mut factors = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let gen = c.two_gen(&layer.gen).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 2,
                name: layer.gen.clone(),
            })?;
            let mut f = TwoCellTerm::Gen2(layer.gen.clone());
            if !layer.right.is_empty() {
                f = TwoCellTerm::rwhisk(
                    f,
                    OneCellTerm { base: self.source.base.clone(), path: layer.right.clone() },
                );
            }
            if !layer.left.is_empty() {
                let mut pre = layer.right.clone();
                pre.extend(gen.src1.path.iter().cloned());
                let base = walk(c, &self.source.base, &pre)?;
                f = TwoCellTerm::lwhisk(OneCellTerm { base, path: layer.left.clone() }, f);
            }
            factors.push(f);
        }
        let mut it = factors.into_iter().rev();
        let last = it.next().expect("nonempty");
        Ok(it.fold(last, |acc, f| TwoCellTerm::vcomp(f, acc)))
    }
}

fn build(c: &Computad, t: &TwoCellTerm) -> Result<WhiskerNormal2Cell, TypeError> {
    Ok(match t {
        TwoCellTerm::Id2(f) => WhiskerNormal2Cell { source: f.clone(), layers: Vec::new() },
        TwoCellTerm::Gen2(name) => {
            let gen = c.two_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 2,
                name: name.clone(),
            })?;
            WhiskerNormal2Cell {
                source: gen.src1.clone(),
                layers: vec![Layer { left: Vec::new(), gen: name.clone(), right: Vec::new() }],
            }
        }
        TwoCellTerm::LWhisk(g, x) => {
            let mut n = build(c, x)?;
            for layer in &mut n.layers {
                layer.left.extend(g.path.iter().cloned());
            }
            n.source.path.extend(g.path.iter().cloned());
            n
        }
        TwoCellTerm::RWhisk(x, f) => {
            let mut n = build(c, x)?;
            for layer in &mut n.layers {
                let mut right = f.path.clone();
                right.extend(layer.right.iter().cloned());
                layer.right = right;
            }
            let mut path = f.path.clone();
            path.extend(n.source.path.iter().cloned());
            n.source = OneCellTerm { base: f.base.clone(), path };
            n
        }
        TwoCellTerm::VComp(a, b) => {
            let na = build(c, a)?;
            let nb = build(c, b)?;
            if na.target(c)? != nb.source {
                return Err(TypeError::Mismatch {
                    position: "root".to_string(),
                    detail: "vertical composite does not line up".to_string(),
                });
            }
            let mut layers = na.layers;
            layers.extend(nb.layers);
            WhiskerNormal2Cell { source: na.source, layers }
        }
    })
}

/// Compute the whisker normal form of a 2-cell term.
pub fn normalize2(c: &Computad, t: &TwoCellTerm) -> Result<WhiskerNormal2Cell, TypeError> {
    terms::boundary2(c, t)?;
    build(c, t)
}

/// Decide equality of two parallel 2-cell terms. Errors if the terms are
/// not parallel.
pub fn eq2(c: &Computad, a: &TwoCellTerm, b: &TwoCellTerm) -> Result<bool, TypeError> {
    let na = normalize2(c, a)?;
    let nb = normalize2(c, b)?;
    if na.source != nb.source || na.target(c)? != nb.target(c)? {
        return Err(TypeError::BoundaryMismatch {
            detail: "2-cells are not parallel".to_string(),
        });
    }
    Ok(na.layers == nb.layers)
}
