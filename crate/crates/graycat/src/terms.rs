//! Syntax trees for composite cells over a computad, boundary computation,
//! formal inverses, and term-level duality transforms.
//!
//! One-cells are kept in a canonical flat form: a base object plus the list
//! of 1-generators in application order (index 0 is applied first). The
//! classical composite `U . F` therefore has path `[F, U]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal2;
use crate::presentation::{Computad, Duality};

/// A 1-cell as a base object and a path of 1-generators in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneCellTerm {
    pub base: String,
    pub path: Vec<String>,
}

impl OneCellTerm {
    /// The identity 1-cell on an object.
    pub fn object(name: impl Into<String>) -> Self {
        OneCellTerm { base: name.into(), path: Vec::new() }
    }

    /// Whether this is an identity 1-cell.
    pub fn is_identity(&self) -> bool {
        self.path.is_empty()
    }
}

/// A 2-cell term. Vertical composition is diagrammatic: `VComp(first, then)`
/// applies `first` below `then`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoCellTerm {
    Id2(OneCellTerm),
    Gen2(String),
    /// Post-whisker by a 1-cell: `LWhisk(g, x)` is `g < x`.
    LWhisk(OneCellTerm, Box<TwoCellTerm>),
    /// Pre-whisker by a 1-cell: `RWhisk(x, f)` is `x > f`.
    RWhisk(Box<TwoCellTerm>, OneCellTerm),
    VComp(Box<TwoCellTerm>, Box<TwoCellTerm>),
}

impl TwoCellTerm {
    pub fn lwhisk(g: OneCellTerm, x: TwoCellTerm) -> Self {
        TwoCellTerm::LWhisk(g, Box::new(x))
    }

    pub fn rwhisk(x: TwoCellTerm, f: OneCellTerm) -> Self {
        TwoCellTerm::RWhisk(Box::new(x), f)
    }

    pub fn vcomp(first: TwoCellTerm, then: TwoCellTerm) -> Self {
        TwoCellTerm::VComp(Box::new(first), Box::new(then))
    }
}

/// A 3-cell term. `VComp3(first, then)` composes along a shared 2-cell;
/// `HComp3(below, above)` composes along a shared 1-cell inside a hom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThreeCellTerm {
    Id3(TwoCellTerm),
    Gen3(String),
    InvGen3(String),
    /// Interchanger for `beta` sliding past `alpha`; `alpha` is applied first.
    Ichg(TwoCellTerm, TwoCellTerm),
    InvIchg(TwoCellTerm, TwoCellTerm),
    /// Post-whisker by a 1-cell.
    LWhisk1(OneCellTerm, Box<ThreeCellTerm>),
    /// Pre-whisker by a 1-cell.
    RWhisk1(Box<ThreeCellTerm>, OneCellTerm),
    /// Whisker by a 2-cell pasted below.
    LWhisk2(TwoCellTerm, Box<ThreeCellTerm>),
    /// Whisker by a 2-cell pasted above.
    RWhisk2(Box<ThreeCellTerm>, TwoCellTerm),
    VComp3(Box<ThreeCellTerm>, Box<ThreeCellTerm>),
    HComp3(Box<ThreeCellTerm>, Box<ThreeCellTerm>),
}

impl ThreeCellTerm {
    pub fn ichg(beta: TwoCellTerm, alpha: TwoCellTerm) -> Self {
        ThreeCellTerm::Ichg(beta, alpha)
    }

    pub fn inv_ichg(beta: TwoCellTerm, alpha: TwoCellTerm) -> Self {
        ThreeCellTerm::InvIchg(beta, alpha)
    }

    pub fn lwhisk1(g: OneCellTerm, x: ThreeCellTerm) -> Self {
        ThreeCellTerm::LWhisk1(g, Box::new(x))
    }

    pub fn rwhisk1(x: ThreeCellTerm, f: OneCellTerm) -> Self {
        ThreeCellTerm::RWhisk1(Box::new(x), f)
    }

    pub fn lwhisk2(c: TwoCellTerm, x: ThreeCellTerm) -> Self {
        ThreeCellTerm::LWhisk2(c, Box::new(x))
    }

    pub fn rwhisk2(x: ThreeCellTerm, c: TwoCellTerm) -> Self {
        ThreeCellTerm::RWhisk2(Box::new(x), c)
    }

    pub fn vcomp3(first: ThreeCellTerm, then: ThreeCellTerm) -> Self {
        ThreeCellTerm::VComp3(Box::new(first), Box::new(then))
    }

    pub fn hcomp3(below: ThreeCellTerm, above: ThreeCellTerm) -> Self {
        ThreeCellTerm::HComp3(Box::new(below), Box::new(above))
    }
}

/// Typing errors for cell terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unknown dimension-{dimension} generator `{name}`")]
    UnknownGenerator { dimension: u8, name: String },
    #[error("generator `{name}` is not invertible")]
    NotInvertible { name: String },
    #[error("ill-typed composite at `{position}`: {detail}")]
    Mismatch { position: String, detail: String },
    #[error("boundary mismatch: {detail}")]
    BoundaryMismatch { detail: String },
}

fn sub(pos: &str, field: &str) -> String {
    if pos.is_empty() {
        field.to_string()
    } else {
        format!("{pos}.{field}")
    }
}

fn here(pos: &str) -> String {
    if pos.is_empty() {
        "root".to_string()
    } else {
        pos.to_string()
    }
}

fn path_to_string(base: &str, path: &[String]) -> String {
    if path.is_empty() {
        format!("id({base})")
    } else {
        let mut names: Vec<&str> = path.iter().map(String::as_str).collect();
        names.reverse();
        names.join(" . ")
    }
}

pub(crate) fn boundary1_at(
    c: &Computad,
    t: &OneCellTerm,
    pos: &str,
) -> Result<(String, String), TypeError> {
    if c.object(&t.base).is_none() {
        return Err(TypeError::UnknownGenerator { dimension: 0, name: t.base.clone() });
    }
    let mut cur = t.base.clone();
    for name in &t.path {
        let g = c.one_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
            dimension: 1,
            name: name.clone(),
        })?;
        if g.src != cur {
            return Err(TypeError::Mismatch {
                position: here(pos),
                detail: format!(
                    "1-cell `{name}` starts at `{}` but is applied at `{cur}` in `{}`",
                    g.src,
                    path_to_string(&t.base, &t.path)
                ),
            });
        }
        cur = g.tgt.clone();
    }
    Ok((t.base.clone(), cur))
}

/// Source and target objects of a 1-cell term.
pub fn boundary1(c: &Computad, t: &OneCellTerm) -> Result<(String, String), TypeError> {
    boundary1_at(c, t, "")
}

/// Compose two 1-cell terms diagrammatically (`first` then `second`).
pub(crate) fn compose1(first: &OneCellTerm, second: &[String]) -> OneCellTerm {
    let mut path = first.path.clone();
    path.extend_from_slice(second);
    OneCellTerm { base: first.base.clone(), path }
}

fn boundary2_at(
    c: &Computad,
    t: &TwoCellTerm,
    pos: &str,
) -> Result<(OneCellTerm, OneCellTerm), TypeError> {
    match t {
        TwoCellTerm::Id2(f) => {
            boundary1_at(c, f, pos)?;
            Ok((f.clone(), f.clone()))
        }
        TwoCellTerm::Gen2(name) => {
            let g = c.two_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 2,
                name: name.clone(),
            })?;
            Ok((g.src1.clone(), g.tgt1.clone()))
        }
        TwoCellTerm::LWhisk(g, x) => {
            let (src, tgt) = boundary2_at(c, x, &sub(pos, "body"))?;
            let (_, hom_end) = boundary1_at(c, &src, pos)?;
            let (g0, _) = boundary1_at(c, g, &sub(pos, "whisker"))?;
            if g0 != hom_end {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: format!(
                        "left whisker `{}` starts at `{g0}` but the 2-cell ends at `{hom_end}`",
                        path_to_string(&g.base, &g.path)
                    ),
                });
            }
            Ok((compose1(&src, &g.path), compose1(&tgt, &g.path)))
        }
        TwoCellTerm::RWhisk(x, f) => {
            let (src, tgt) = boundary2_at(c, x, &sub(pos, "body"))?;
            let (_, f_end) = boundary1_at(c, f, &sub(pos, "whisker"))?;
            if f_end != src.base {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: format!(
                        "right whisker `{}` ends at `{f_end}` but the 2-cell starts at `{}`",
                        path_to_string(&f.base, &f.path),
                        src.base
                    ),
                });
            }
            Ok((compose1(f, &src.path), compose1(f, &tgt.path)))
        }
        TwoCellTerm::VComp(a, b) => {
            let (sa, ta) = boundary2_at(c, a, &sub(pos, "first"))?;
            let (sb, tb) = boundary2_at(c, b, &sub(pos, "then"))?;
            if ta != sb {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: format!(
                        "vertical composite joins `{}` to `{}`",
                        path_to_string(&ta.base, &ta.path),
                        path_to_string(&sb.base, &sb.path)
                    ),
                });
            }
            Ok((sa, tb))
        }
    }
}

/// Source and target 1-cells of a 2-cell term.
pub fn boundary2(c: &Computad, t: &TwoCellTerm) -> Result<(OneCellTerm, OneCellTerm), TypeError> {
    boundary2_at(c, t, "")
}

fn boundary3_at(
    c: &Computad,
    t: &ThreeCellTerm,
    pos: &str,
) -> Result<(TwoCellTerm, TwoCellTerm), TypeError> {
    match t {
        ThreeCellTerm::Id3(x) => {
            boundary2_at(c, x, pos)?;
            Ok((x.clone(), x.clone()))
        }
        ThreeCellTerm::Gen3(name) => {
            let g = c.three_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 3,
                name: name.clone(),
            })?;
            Ok((g.src2.clone(), g.tgt2.clone()))
        }
        ThreeCellTerm::InvGen3(name) => {
            let g = c.three_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 3,
                name: name.clone(),
            })?;
            if !g.invertible {
                return Err(TypeError::NotInvertible { name: name.clone() });
            }
            Ok((g.tgt2.clone(), g.src2.clone()))
        }
        ThreeCellTerm::Ichg(beta, alpha) | ThreeCellTerm::InvIchg(beta, alpha) => {
            let (fa, fa2) = boundary2_at(c, alpha, &sub(pos, "alpha"))?;
            let (gb, gb2) = boundary2_at(c, beta, &sub(pos, "beta"))?;
            let (_, a_end) = boundary1_at(c, &fa, pos)?;
            if a_end != gb.base {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: format!(
                        "interchanger arguments do not share an object: `{a_end}` vs `{}`",
                        gb.base
                    ),
                });
            }
            let src = TwoCellTerm::vcomp(
                TwoCellTerm::rwhisk(beta.clone(), fa),
                TwoCellTerm::lwhisk(gb2, alpha.clone()),
            );
            let tgt = TwoCellTerm::vcomp(
                TwoCellTerm::lwhisk(gb, alpha.clone()),
                TwoCellTerm::rwhisk(beta.clone(), fa2),
            );
            match t {
                ThreeCellTerm::Ichg(..) => Ok((src, tgt)),
                _ => Ok((tgt, src)),
            }
        }
        ThreeCellTerm::LWhisk1(g, x) => {
            let (src, tgt) = boundary3_at(c, x, &sub(pos, "body"))?;
            let w = TwoCellTerm::lwhisk(g.clone(), src);
            boundary2_at(c, &w, pos)?;
            let TwoCellTerm::LWhisk(g, src) = w else { unreachable!() };
            Ok((TwoCellTerm::LWhisk(g.clone(), src), TwoCellTerm::lwhisk(g, tgt)))
        }
        ThreeCellTerm::RWhisk1(x, f) => {
            let (src, tgt) = boundary3_at(c, x, &sub(pos, "body"))?;
            let w = TwoCellTerm::rwhisk(src, f.clone());
            boundary2_at(c, &w, pos)?;
            let TwoCellTerm::RWhisk(src, f) = w else { unreachable!() };
            Ok((TwoCellTerm::RWhisk(src, f.clone()), TwoCellTerm::rwhisk(tgt, f)))
        }
        ThreeCellTerm::LWhisk2(a, x) => {
            let (src, tgt) = boundary3_at(c, x, &sub(pos, "body"))?;
            let w = TwoCellTerm::vcomp(a.clone(), src);
            boundary2_at(c, &w, pos)?;
            Ok((w, TwoCellTerm::vcomp(a.clone(), tgt)))
        }
        ThreeCellTerm::RWhisk2(x, a) => {
            let (src, tgt) = boundary3_at(c, x, &sub(pos, "body"))?;
            let w = TwoCellTerm::vcomp(src, a.clone());
            boundary2_at(c, &w, pos)?;
            Ok((w, TwoCellTerm::vcomp(tgt, a.clone())))
        }
        ThreeCellTerm::VComp3(a, b) => {
            let (sa, ta) = boundary3_at(c, a, &sub(pos, "first"))?;
            let (sb, tb) = boundary3_at(c, b, &sub(pos, "then"))?;
            if !normal2::eq2(c, &ta, &sb).map_err(|e| relocate(e, pos))? {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: "3-cell composite interface does not match up to normalization"
                        .to_string(),
                });
            }
            Ok((sa, tb))
        }
        ThreeCellTerm::HComp3(a, b) => {
            let (sa, ta) = boundary3_at(c, a, &sub(pos, "below"))?;
            let (sb, tb) = boundary3_at(c, b, &sub(pos, "above"))?;
            let (_, mid_a) = boundary2_at(c, &sa, pos)?;
            let (mid_b, _) = boundary2_at(c, &sb, pos)?;
            if mid_a != mid_b {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: format!(
                        "horizontal composite needs a shared 1-cell, found `{}` vs `{}`",
                        path_to_string(&mid_a.base, &mid_a.path),
                        path_to_string(&mid_b.base, &mid_b.path)
                    ),
                });
            }
            let (_, mid_ta) = boundary2_at(c, &ta, pos)?;
            let (mid_tb, _) = boundary2_at(c, &tb, pos)?;
            if mid_ta != mid_tb {
                return Err(TypeError::Mismatch {
                    position: here(pos),
                    detail: "horizontal composite targets share no 1-cell".to_string(),
                });
            }
            Ok((TwoCellTerm::vcomp(sa, sb), TwoCellTerm::vcomp(ta, tb)))
        }
    }
}

fn relocate(e: TypeError, pos: &str) -> TypeError {
    match e {
        TypeError::Mismatch { detail, .. } => {
            TypeError::Mismatch { position: here(pos), detail }
        }
        other => other,
    }
}

/// Source and target 2-cells of a 3-cell term.
pub fn boundary3(
    c: &Computad,
    t: &ThreeCellTerm,
) -> Result<(TwoCellTerm, TwoCellTerm), TypeError> {
    boundary3_at(c, t, "")
}

/// Formal inverse of a 3-cell term. Fails on generators that were not
/// declared invertible.
pub fn invert3(c: &Computad, t: &ThreeCellTerm) -> Result<ThreeCellTerm, TypeError> {
    Ok(match t {
        ThreeCellTerm::Id3(x) => ThreeCellTerm::Id3(x.clone()),
        ThreeCellTerm::Gen3(name) => {
            let g = c.three_gen(name).ok_or_else(|| TypeError::UnknownGenerator {
                dimension: 3,
                name: name.clone(),
            })?;
            if !g.invertible {
                return Err(TypeError::NotInvertible { name: name.clone() });
            }
            ThreeCellTerm::InvGen3(name.clone())
        }
        ThreeCellTerm::InvGen3(name) => ThreeCellTerm::Gen3(name.clone()),
        ThreeCellTerm::Ichg(b, a) => ThreeCellTerm::InvIchg(b.clone(), a.clone()),
        ThreeCellTerm::InvIchg(b, a) => ThreeCellTerm::Ichg(b.clone(), a.clone()),
        ThreeCellTerm::LWhisk1(g, x) => ThreeCellTerm::lwhisk1(g.clone(), invert3(c, x)?),
        ThreeCellTerm::RWhisk1(x, f) => ThreeCellTerm::rwhisk1(invert3(c, x)?, f.clone()),
        ThreeCellTerm::LWhisk2(a, x) => ThreeCellTerm::lwhisk2(a.clone(), invert3(c, x)?),
        ThreeCellTerm::RWhisk2(x, a) => ThreeCellTerm::rwhisk2(invert3(c, x)?, a.clone()),
        ThreeCellTerm::VComp3(a, b) => ThreeCellTerm::vcomp3(invert3(c, b)?, invert3(c, a)?),
        ThreeCellTerm::HComp3(a, b) => ThreeCellTerm::hcomp3(invert3(c, a)?, invert3(c, b)?),
    })
}

/// Dualize a 1-cell term. `c` is the computad the term lives in (before
/// dualization); the result lives in `dualize(c, d)`.
pub fn dual_one(c: &Computad, d: Duality, t: &OneCellTerm) -> Result<OneCellTerm, TypeError> {
    match d {
        Duality::Co => {
            boundary1(c, t)?;
            Ok(t.clone())
        }
        Duality::Op | Duality::Coop => {
            let (_, end) = boundary1(c, t)?;
            let mut path = t.path.clone();
            path.reverse();
            Ok(OneCellTerm { base: end, path })
        }
    }
}

/// Dualize a 2-cell term (see [`dual_one`] for the contract).
pub fn dual_two(c: &Computad, d: Duality, t: &TwoCellTerm) -> Result<TwoCellTerm, TypeError> {
    boundary2(c, t)?;
    dual_two_unchecked(c, d, t)
}

fn dual_two_unchecked(
    c: &Computad,
    d: Duality,
    t: &TwoCellTerm,
) -> Result<TwoCellTerm, TypeError> {
    let flip_h = matches!(d, Duality::Op | Duality::Coop);
    let flip_v = matches!(d, Duality::Co | Duality::Coop);
    Ok(match t {
        TwoCellTerm::Id2(f) => TwoCellTerm::Id2(dual_one(c, d, f)?),
        TwoCellTerm::Gen2(name) => TwoCellTerm::Gen2(name.clone()),
        TwoCellTerm::LWhisk(g, x) => {
            let xd = dual_two_unchecked(c, d, x)?;
            let gd = dual_one(c, d, g)?;
            if flip_h {
                TwoCellTerm::rwhisk(xd, gd)
            } else {
                TwoCellTerm::lwhisk(gd, xd)
            }
        }
        TwoCellTerm::RWhisk(x, f) => {
            let xd = dual_two_unchecked(c, d, x)?;
            let fd = dual_one(c, d, f)?;
            if flip_h {
                TwoCellTerm::lwhisk(fd, xd)
            } else {
                TwoCellTerm::rwhisk(xd, fd)
            }
        }
        TwoCellTerm::VComp(a, b) => {
            let ad = dual_two_unchecked(c, d, a)?;
            let bd = dual_two_unchecked(c, d, b)?;
            if flip_v {
                TwoCellTerm::vcomp(bd, ad)
            } else {
                TwoCellTerm::vcomp(ad, bd)
            }
        }
    })
}

/// Dualize a 3-cell term (see [`dual_one`] for the contract).
pub fn dual_three(
    c: &Computad,
    d: Duality,
    t: &ThreeCellTerm,
) -> Result<ThreeCellTerm, TypeError> {
    boundary3(c, t)?;
    dual_three_unchecked(c, d, t)
}

fn dual_three_unchecked(
    c: &Computad,
    d: Duality,
    t: &ThreeCellTerm,
) -> Result<ThreeCellTerm, TypeError> {
    let flip_h = matches!(d, Duality::Op | Duality::Coop);
    let flip_v = matches!(d, Duality::Co | Duality::Coop);
    Ok(match t {
        ThreeCellTerm::Id3(x) => ThreeCellTerm::Id3(dual_two_unchecked(c, d, x)?),
        ThreeCellTerm::Gen3(name) => ThreeCellTerm::Gen3(name.clone()),
        ThreeCellTerm::InvGen3(name) => ThreeCellTerm::InvGen3(name.clone()),
        ThreeCellTerm::Ichg(b, a) | ThreeCellTerm::InvIchg(b, a) => {
            let bd = dual_two_unchecked(c, d, b)?;
            let ad = dual_two_unchecked(c, d, a)?;
            let (beta, alpha) = if flip_h { (ad, bd) } else { (bd, ad) };
            // Each of op and co reverses the orientation of the sliding
            // square; doing both restores it.
            let forward = matches!(t, ThreeCellTerm::Ichg(..)) == (flip_h == flip_v);
            if forward {
                ThreeCellTerm::Ichg(beta, alpha)
            } else {
                ThreeCellTerm::InvIchg(beta, alpha)
            }
        }
        ThreeCellTerm::LWhisk1(g, x) => {
            let xd = dual_three_unchecked(c, d, x)?;
            let gd = dual_one(c, d, g)?;
            if flip_h {
                ThreeCellTerm::rwhisk1(xd, gd)
            } else {
                ThreeCellTerm::lwhisk1(gd, xd)
            }
        }
        ThreeCellTerm::RWhisk1(x, f) => {
            let xd = dual_three_unchecked(c, d, x)?;
            let fd = dual_one(c, d, f)?;
            if flip_h {
                ThreeCellTerm::lwhisk1(fd, xd)
            } else {
                ThreeCellTerm::rwhisk1(xd, fd)
            }
        }
        ThreeCellTerm::LWhisk2(a, x) => {
            let xd = dual_three_unchecked(c, d, x)?;
            let ad = dual_two_unchecked(c, d, a)?;
            if flip_v {
                ThreeCellTerm::rwhisk2(xd, ad)
            } else {
                ThreeCellTerm::lwhisk2(ad, xd)
            }
        }
        ThreeCellTerm::RWhisk2(x, a) => {
            let xd = dual_three_unchecked(c, d, x)?;
            let ad = dual_two_unchecked(c, d, a)?;
            if flip_v {
                ThreeCellTerm::lwhisk2(ad, xd)
            } else {
                ThreeCellTerm::rwhisk2(xd, ad)
            }
        }
        ThreeCellTerm::VComp3(a, b) => ThreeCellTerm::vcomp3(
            dual_three_unchecked(c, d, a)?,
            dual_three_unchecked(c, d, b)?,
        ),
        ThreeCellTerm::HComp3(a, b) => {
            let ad = dual_three_unchecked(c, d, a)?;
            let bd = dual_three_unchecked(c, d, b)?;
            if flip_v {
                ThreeCellTerm::hcomp3(bd, ad)
            } else {
                ThreeCellTerm::hcomp3(ad, bd)
            }
        }
    })
}
