//! Finite locally-posetal models.
//!
//! Objects are finite posets, arrows are monotone maps, and between two
//! parallel arrows there is at most one 2-cell: the pointwise order. Every
//! interchanger and every 3-cell is an identity here, so adjunction
//! coherence degenerates to the Galois-connection condition, and left
//! extensions along an arrow can be found by brute-force enumeration.
//! [`benabou_check_model`] evaluates the five equivalent characterisations
//! of an adjoint pair on every monotone pair between two posets and reports
//! any disagreement.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Errors raised by model construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// Two pieces of data do not share the required (co)domain.
    #[error("domain mismatch: {detail}")]
    Mismatch { detail: String },
    /// A poset or map fails its defining conditions.
    #[error("invalid data: {detail}")]
    Invalid { detail: String },
    /// A catalog file could not be parsed.
    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },
}

fn mismatch(detail: impl Into<String>) -> ModelError {
    ModelError::Mismatch { detail: detail.into() }
}

fn invalid(detail: impl Into<String>) -> ModelError {
    ModelError::Invalid { detail: detail.into() }
}

/// A finite poset on elements `0..n` with its order as a flat `n * n`
/// boolean matrix; entry `i * n + j` holds `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinPoset {
    pub n: usize,
    pub leq: Vec<bool>,
}

impl FinPoset {
    /// The linear order `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> FinPoset {
        let mut p = FinPoset { n, leq: vec![false; n * n] };
        for i in 0..n {
            for j in i..n {
                p.leq[i * n + j] = true;
            }
        }
        p
    }

    /// The discrete order on `n` elements.
    pub fn antichain(n: usize) -> FinPoset {
        let mut p = FinPoset { n, leq: vec![false; n * n] };
        for i in 0..n {
            p.leq[i * n + i] = true;
        }
        p
    }

    /// Builds the reflexive-transitive closure of the given covering
    /// relations and rejects anything that is not antisymmetric.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<FinPoset, ModelError> {
        let mut p = FinPoset::antichain(n);
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(invalid(format!("cover ({i}, {j}) out of range for {n} elements")));
            }
            p.leq[i * n + j] = true;
        }
        transitive_closure(n, &mut p.leq);
        if !p.is_valid() {
            return Err(invalid("covering relations generate a cycle".to_string()));
        }
        Ok(p)
    }

    /// Whether `i <= j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// Checks reflexivity, antisymmetry, and transitivity.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.leq.len() != n * n {
            return false;
        }
        for i in 0..n {
            if !self.leq(i, i) {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return false;
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn transitive_closure(n: usize, leq: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

/// A monotone map between finite posets, tabulated on elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneMap {
    pub dom: FinPoset,
    pub cod: FinPoset,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    /// Validates the table length, element range, and order preservation.
    pub fn new(dom: FinPoset, cod: FinPoset, table: Vec<usize>) -> Result<MonotoneMap, ModelError> {
        if table.len() != dom.n {
            return Err(invalid(format!(
                "table has {} entries for a domain of size {}",
                table.len(),
                dom.n
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= cod.n) {
            return Err(invalid(format!("table value {v} out of range for codomain of size {}", cod.n)));
        }
        if !is_monotone(&dom, &cod, &table) {
            return Err(invalid("table is not order-preserving".to_string()));
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    /// The identity map on `p`.
    pub fn identity(p: &FinPoset) -> MonotoneMap {
        MonotoneMap { dom: p.clone(), cod: p.clone(), table: (0..p.n).collect() }
    }

    /// Applies the map to an element index.
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Post-composition: `self.then(g)` sends `x` to `g(self(x))`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap, ModelError> {
        if self.cod != g.dom {
            return Err(mismatch("composite maps must share the middle poset".to_string()));
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&i| g.table[i]).collect(),
        })
    }
}

fn is_monotone(dom: &FinPoset, cod: &FinPoset, table: &[usize]) -> bool {
    for i in 0..dom.n {
        for j in 0..dom.n {
            if dom.leq(i, j) && !cod.leq(table[i], table[j]) {
                return false;
            }
        }
    }
    true
}

/// All monotone tables `dom -> cod`, in lexicographic order.
fn monotone_tables(dom: &FinPoset, cod: &FinPoset) -> Vec<Vec<usize>> {
    if dom.n == 0 {
        return vec![Vec::new()];
    }
    if cod.n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; dom.n];
    loop {
        if is_monotone(dom, cod, &table) {
            out.push(table.clone());
        }
        let mut i = dom.n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < cod.n {
                break;
            }
            table[i] = 0;
        }
    }
}

/// Enumerates every monotone map `dom -> cod`.
pub fn monotone_maps(dom: &FinPoset, cod: &FinPoset) -> Vec<MonotoneMap> {
    monotone_tables(dom, cod)
        .into_iter()
        .map(|table| MonotoneMap { dom: dom.clone(), cod: cod.clone(), table })
        .collect()
}

/// An interpretation of computad generators in posets: objects become
/// posets, 1-generators monotone maps, 2-generators pointwise order
/// relations, and 3-generators are forced to identities. With at most one
/// 2-cell between parallel maps, every relation holds automatically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelInterpretation {
    /// Poset assigned to each object generator, by name.
    pub objects: Vec<(String, FinPoset)>,
    /// Monotone map assigned to each 1-generator, by name.
    pub arrows: Vec<(String, MonotoneMap)>,
}

impl ModelInterpretation {
    fn object(&self, name: &str) -> Option<&FinPoset> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    fn arrow(&self, name: &str) -> Option<&MonotoneMap> {
        self.arrows.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Checks that every named arrow runs between the posets assigned to
    /// its endpoints. 2- and 3-generator assignments carry no data here:
    /// a 2-cell is the (unique) pointwise inequality and every 3-cell is
    /// an identity, so only the 1-dimensional boundary can go wrong.
    pub fn validate(
        &self,
        arrows: &[(String, String, String)],
    ) -> Result<(), ModelError> {
        for (name, src, tgt) in arrows {
            let m = self
                .arrow(name)
                .ok_or_else(|| mismatch(format!("no map assigned to generator `{name}`")))?;
            let s = self
                .object(src)
                .ok_or_else(|| mismatch(format!("no poset assigned to object `{src}`")))?;
            let t = self
                .object(tgt)
                .ok_or_else(|| mismatch(format!("no poset assigned to object `{tgt}`")))?;
            if &m.dom != s || &m.cod != t {
                return Err(mismatch(format!("map for `{name}` does not match its boundary")));
            }
        }
        Ok(())
    }
}

/// Whether `f` and `u` form a Galois connection: `f(x) <= a` iff
/// `x <= u(a)` for all elements. This is exactly what an adjunction in the
/// locally-posetal world amounts to: units, counits, and both swallowtail
/// identities carry no further data.
pub fn is_galois_connection(f: &MonotoneMap, u: &MonotoneMap) -> Result<bool, ModelError> {
    if f.cod != u.dom || u.cod != f.dom {
        return Err(mismatch("the two maps must run between the same posets in opposite directions"));
    }
    Ok(galois_tab(&f.dom, &f.cod, &f.table, &u.table))
}

fn galois_tab(x: &FinPoset, a: &FinPoset, f: &[usize], u: &[usize]) -> bool {
    for i in 0..x.n {
        for p in 0..a.n {
            if a.leq(f[i], p) != x.leq(i, u[p]) {
                return false;
            }
        }
    }
    true
}

/// A least extension found by enumeration: the extension itself plus every
/// monotone solution it is below. Realized 2-cells need no tables: each
/// solution `k` carries the unique inequality `l <= k` as its comparison
/// cell, and the lifting cell of a solution is the same inequality read as
/// a 3-cell (an identity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftExtension {
    /// The least solution.
    pub l: MonotoneMap,
    /// All monotone `k` with `h <= k . j` pointwise, in enumeration order.
    pub solutions: Vec<MonotoneMap>,
}

/// Brute-force least extension of `h` along `j` (both leaving the same
/// poset): the pointwise-least monotone `l` with `h <= l . j`, or `None`
/// when no solution exists or no solution is below all others.
pub fn left_extension_brute(
    j: &MonotoneMap,
    h: &MonotoneMap,
) -> Result<Option<LeftExtension>, ModelError> {
    if j.dom != h.dom {
        return Err(mismatch("the extension problem needs `j` and `h` to share their domain"));
    }
    let cand = monotone_tables(&j.cod, &h.cod);
    let sols: Vec<&Vec<usize>> = cand
        .iter()
        .filter(|k| le_tab(&h.cod, &h.table, &comp_w_tab(World::Base, &j.table, k)))
        .collect();
    let Some(least) = pick_least(&h.cod, &sols) else {
        return Ok(None);
    };
    let wrap = |table: &Vec<usize>| MonotoneMap {
        dom: j.cod.clone(),
        cod: h.cod.clone(),
        table: table.clone(),
    };
    Ok(Some(LeftExtension {
        l: wrap(least),
        solutions: sols.into_iter().map(wrap).collect(),
    }))
}

/// Whether `eta: h <= l . j` exhibits `l` as an extension preserved by
/// post-composition with every monotone map into every test codomain:
/// for each poset `c` in `test_codomains` and each monotone `g` out of the
/// codomain of `h`, `l . g`-composed must again be the least extension of
/// `h`-composed along `j`. The boolean `eta` is the degenerate unit
/// 2-cell; passing `false`, or a claimed unit that does not hold
/// pointwise, yields `false`.
pub fn is_absolute_left_extension_brute(
    j: &MonotoneMap,
    h: &MonotoneMap,
    l: &MonotoneMap,
    eta: bool,
    test_codomains: &[FinPoset],
) -> Result<bool, ModelError> {
    if j.dom != h.dom || l.dom != j.cod || l.cod != h.cod {
        return Err(mismatch("the extension data must form a triangle over `j`"));
    }
    let lj = comp_w_tab(World::Base, &j.table, &l.table);
    if !eta || !le_tab(&h.cod, &h.table, &lj) {
        return Ok(false);
    }
    for c in test_codomains {
        let cand = monotone_tables(&j.cod, c);
        for g in monotone_tables(&h.cod, c) {
            let hg = comp_w_tab(World::Base, &h.table, &g);
            let want = comp_w_tab(World::Base, &l.table, &g);
            let sols: Vec<&Vec<usize>> = cand
                .iter()
                .filter(|k| le_tab(c, &hg, &comp_w_tab(World::Base, &j.table, k)))
                .collect();
            match pick_least(c, &sols) {
                Some(t) if *t == want => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// The arrow-reversed world lets the two lifting-style statements reuse
/// the extension machinery: a formal arrow `p -> q` in `Op` is tabulated
/// by an actual monotone map `q -> p`, composition reads backwards, and
/// 2-cells (pointwise order) keep their direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum World {
    Base,
    Op,
}

/// Actual table of the composite of formal arrows `p -> q -> r`.
fn comp_w_tab(w: World, f: &[usize], g: &[usize]) -> Vec<usize> {
    match w {
        World::Base => f.iter().map(|&i| g[i]).collect(),
        World::Op => g.iter().map(|&i| f[i]).collect(),
    }
}

/// Pointwise order on actual tables sharing `cod`.
fn le_tab(cod: &FinPoset, a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(&i, &j)| cod.leq(i, j))
}

/// The least table among `sols` under the pointwise order in `cod`,
/// verified against every entry.
fn pick_least<'a>(cod: &FinPoset, sols: &[&'a Vec<usize>]) -> Option<&'a Vec<usize>> {
    let mut best = *sols.first()?;
    for k in sols {
        if le_tab(cod, k, best) {
            best = k;
        }
    }
    if sols.iter().all(|k| le_tab(cod, best, k)) {
        Some(best)
    } else {
        None
    }
}

/// Monotone tables for formal arrows `p -> q` in world `w`.
fn homs_w(w: World, p: &FinPoset, q: &FinPoset) -> Vec<Vec<usize>> {
    match w {
        World::Base => monotone_tables(p, q),
        World::Op => monotone_tables(q, p),
    }
}

/// Least solution among `cand` (formal arrows `a -> b`) to `h <= k . j`,
/// with `hb_cod` / `kk_cod` the actual codomains used to compare arrows
/// `x -> b` and `a -> b` respectively.
fn least_ext_tab(
    w: World,
    hb_cod: &FinPoset,
    kk_cod: &FinPoset,
    j: &[usize],
    h: &[usize],
    cand: &[Vec<usize>],
) -> Option<Vec<usize>> {
    let sols: Vec<&Vec<usize>> = cand
        .iter()
        .filter(|k| le_tab(hb_cod, h, &comp_w_tab(w, j, k)))
        .collect();
    pick_least(kk_cod, &sols).cloned()
}

/// Precomputed hom-sets for one `(x, a)` pair, shared by every statement
/// evaluation over that pair.
struct Env<'a> {
    x: &'a FinPoset,
    a: &'a FinPoset,
    cods: &'a [FinPoset],
    /// Per test codomain `c`: arrows `x -> c` and `a -> c` in both worlds.
    per_cod: Vec<CodEnv>,
    /// Candidates `a -> x` for the is-extension check, per world.
    cand_ax: [Vec<Vec<usize>>; 2],
    /// Candidates `a -> a` for the preservation check, per world.
    cand_aa: [Vec<Vec<usize>>; 2],
}

struct CodEnv {
    gs: [Vec<Vec<usize>>; 2],
    cand: [Vec<Vec<usize>>; 2],
}

const WORLDS: [World; 2] = [World::Base, World::Op];

impl<'a> Env<'a> {
    fn new(x: &'a FinPoset, a: &'a FinPoset, cods: &'a [FinPoset]) -> Env<'a> {
        let per_cod = cods
            .iter()
            .map(|c| CodEnv {
                gs: WORLDS.map(|w| homs_w(w, x, c)),
                cand: WORLDS.map(|w| homs_w(w, a, c)),
            })
            .collect();
        Env {
            x,
            a,
            cods,
            per_cod,
            cand_ax: WORLDS.map(|w| homs_w(w, a, x)),
            cand_aa: WORLDS.map(|w| homs_w(w, a, a)),
        }
    }
}

fn world_index(w: World) -> usize {
    match w {
        World::Base => 0,
        World::Op => 1,
    }
}

/// Unit flag plus the is-extension check common to the extension-flavored
/// statements: `h = id` must be below `l . j`, and `l` must be the least
/// solution.
fn unit_and_least(env: &Env, w: World, j: &[usize], l: &[usize]) -> bool {
    let wi = world_index(w);
    let h: Vec<usize> = (0..env.x.n).collect();
    if !le_tab(env.x, &h, &comp_w_tab(w, j, l)) {
        return false;
    }
    let kk_cod = match w {
        World::Base => env.x,
        World::Op => env.a,
    };
    least_ext_tab(w, env.x, kk_cod, j, &h, &env.cand_ax[wi]).as_deref() == Some(l)
}

/// Statement: the unit exhibits `l` as a left extension of the identity
/// along `j`, preserved by post-composition into every test codomain.
fn stmt_absolute(env: &Env, w: World, j: &[usize], l: &[usize]) -> bool {
    if !unit_and_least(env, w, j, l) {
        return false;
    }
    let wi = world_index(w);
    for (c, ce) in env.cods.iter().zip(&env.per_cod) {
        let hb_cod = match w {
            World::Base => c,
            World::Op => env.x,
        };
        let kk_cod = match w {
            World::Base => c,
            World::Op => env.a,
        };
        for g in &ce.gs[wi] {
            let want = comp_w_tab(w, l, g);
            match least_ext_tab(w, hb_cod, kk_cod, j, g, &ce.cand[wi]) {
                Some(t) if t == want => {}
                _ => return false,
            }
        }
    }
    true
}

/// Statement: `l` is a left extension of the identity along `j` and is
/// preserved by post-composition with `j` itself.
fn stmt_preserved(env: &Env, w: World, j: &[usize], l: &[usize]) -> bool {
    if !unit_and_least(env, w, j, l) {
        return false;
    }
    let wi = world_index(w);
    let hb_cod = match w {
        World::Base => env.a,
        World::Op => env.x,
    };
    let want = comp_w_tab(w, l, j);
    least_ext_tab(w, hb_cod, env.a, j, j, &env.cand_aa[wi]) == Some(want)
}

/// The five characterisations of an adjoint pair, evaluated on one
/// monotone pair: (1) Galois connection, (2) absolute extension of the
/// identity along `f` (codomains bounded by the environment), (3)
/// extension preserved by `f`, and (4)/(5) the same two statements in the
/// arrow-reversed world, where the pair trades roles.
fn statements_for(env: &Env, f: &[usize], u: &[usize]) -> [bool; 5] {
    [
        galois_tab(env.x, env.a, f, u),
        stmt_absolute(env, World::Base, f, u),
        stmt_preserved(env, World::Base, f, u),
        stmt_absolute(env, World::Op, u, f),
        stmt_preserved(env, World::Op, u, f),
    ]
}

/// One monotone pair on which the five statements fail to agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Disagreement {
    pub x: FinPoset,
    pub a: FinPoset,
    pub f_table: Vec<usize>,
    pub u_table: Vec<usize>,
    pub statements: [bool; 5],
}

/// Outcome of sweeping monotone pairs through [`statements_for`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelReport {
    pub pairs_checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl ModelReport {
    fn merge(&mut self, other: ModelReport) {
        self.pairs_checked += other.pairs_checked;
        self.disagreements.extend(other.disagreements);
    }
}

/// Representatives of every isomorphism class of posets with at most three
/// elements, the default codomain bound for the absoluteness statements.
pub fn default_test_codomains() -> Vec<FinPoset> {
    vec![
        FinPoset::antichain(0),
        FinPoset::antichain(1),
        FinPoset::chain(2),
        FinPoset::antichain(2),
        FinPoset::chain(3),
        FinPoset::antichain(3),
        FinPoset::from_covers(3, &[(0, 1), (0, 2)]).expect("valid covers"),
        FinPoset::from_covers(3, &[(0, 2), (1, 2)]).expect("valid covers"),
        FinPoset::from_covers(3, &[(0, 1)]).expect("valid covers"),
    ]
}

/// The bounded codomain set for a concrete pair: the default
/// representatives plus the pair's own posets, so the preservation
/// statement's witness is always inside the absoluteness scan.
fn codomains_for(x: &FinPoset, a: &FinPoset) -> Vec<FinPoset> {
    let mut cods = default_test_codomains();
    for p in [x, a] {
        if !cods.contains(p) {
            cods.push(p.clone());
        }
    }
    cods
}

/// Evaluates all five statements on every monotone pair `f: x -> a`,
/// `u: a -> x` and records each pair on which they disagree.
pub fn benabou_check_model(x: &FinPoset, a: &FinPoset) -> ModelReport {
    let cods = codomains_for(x, a);
    let env = Env::new(x, a, &cods);
    let fs = monotone_tables(x, a);
    let us = monotone_tables(a, x);
    let mut report = ModelReport { pairs_checked: 0, disagreements: Vec::new() };
    for f in &fs {
        for u in &us {
            report.pairs_checked += 1;
            let statements = statements_for(&env, f, u);
            if statements.iter().any(|&s| s != statements[0]) {
                report.disagreements.push(Disagreement {
                    x: x.clone(),
                    a: a.clone(),
                    f_table: f.clone(),
                    u_table: u.clone(),
                    statements,
                });
            }
        }
    }
    report
}

/// Every labeled poset on `n` elements.
pub fn all_posets(n: usize) -> Vec<FinPoset> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0..(1u64 << off.len()) {
        let mut p = FinPoset::antichain(n);
        for (b, &(i, j)) in off.iter().enumerate() {
            if bits >> b & 1 == 1 {
                p.leq[i * n + j] = true;
            }
        }
        if p.is_valid() {
            out.push(p);
        }
    }
    out
}

/// Runs [`benabou_check_model`] on every ordered pair of labeled posets
/// with at most `max_size` elements.
pub fn model_test_exhaustive(max_size: usize) -> ModelReport {
    let posets: Vec<FinPoset> = (0..=max_size).flat_map(all_posets).collect();
    let mut report = ModelReport { pairs_checked: 0, disagreements: Vec::new() };
    for x in &posets {
        for a in &posets {
            report.merge(benabou_check_model(x, a));
        }
    }
    report
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> FinPoset {
    let mut p = FinPoset::antichain(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                p.leq[i * n + j] = true;
            }
        }
    }
    transitive_closure(n, &mut p.leq);
    p
}

fn random_monotone(rng: &mut ChaCha8Rng, dom: &FinPoset, cod: &FinPoset) -> Vec<usize> {
    for _ in 0..200 {
        let table: Vec<usize> = (0..dom.n).map(|_| rng.gen_range(0..cod.n)).collect();
        if is_monotone(dom, cod, &table) {
            return table;
        }
    }
    vec![rng.gen_range(0..cod.n); dom.n]
}

/// Evaluates the five statements on `samples` random monotone pairs
/// between random posets of the given size, deterministically from the
/// seed.
pub fn model_test_sampled(samples: usize, seed: u64, size: usize) -> ModelReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ModelReport { pairs_checked: 0, disagreements: Vec::new() };
    for _ in 0..samples {
        let x = random_poset(&mut rng, size);
        let a = random_poset(&mut rng, size);
        let f = random_monotone(&mut rng, &x, &a);
        let u = random_monotone(&mut rng, &a, &x);
        let cods = codomains_for(&x, &a);
        let env = Env::new(&x, &a, &cods);
        report.pairs_checked += 1;
        let statements = statements_for(&env, &f, &u);
        if statements.iter().any(|&s| s != statements[0]) {
            report.disagreements.push(Disagreement {
                x: x.clone(),
                a: a.clone(),
                f_table: f,
                u_table: u,
                statements,
            });
        }
    }
    report
}

/// Parses a poset catalog: `poset NAME` opens an entry, `elements N` sets
/// its size, and each `cover I J` adds a covering relation. Blank lines
/// and `#` comments are ignored.
pub fn parse_poset_catalog(text: &str) -> Result<Vec<(String, FinPoset)>, ModelError> {
    struct Entry {
        name: String,
        line: usize,
        n: Option<usize>,
        covers: Vec<(usize, usize)>,
    }
    let finish = |e: Entry| -> Result<(String, FinPoset), ModelError> {
        let n = e.n.ok_or(ModelError::Parse {
            line: e.line,
            detail: format!("poset `{}` has no `elements` line", e.name),
        })?;
        let p = FinPoset::from_covers(n, &e.covers).map_err(|err| ModelError::Parse {
            line: e.line,
            detail: format!("poset `{}`: {err}", e.name),
        })?;
        Ok((e.name, p))
    };
    let parse_num = |tok: &str, line: usize| -> Result<usize, ModelError> {
        tok.parse().map_err(|_| ModelError::Parse {
            line,
            detail: format!("expected a number, found `{tok}`"),
        })
    };

    let mut out = Vec::new();
    let mut current: Option<Entry> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match (toks[0], toks.len()) {
            ("poset", 2) => {
                if let Some(e) = current.take() {
                    out.push(finish(e)?);
                }
                current = Some(Entry { name: toks[1].to_string(), line, n: None, covers: Vec::new() });
            }
            ("elements", 2) => {
                let e = current.as_mut().ok_or(ModelError::Parse {
                    line,
                    detail: "`elements` before any `poset` line".to_string(),
                })?;
                e.n = Some(parse_num(toks[1], line)?);
            }
            ("cover", 3) => {
                let i = parse_num(toks[1], line)?;
                let j = parse_num(toks[2], line)?;
                let e = current.as_mut().ok_or(ModelError::Parse {
                    line,
                    detail: "`cover` before any `poset` line".to_string(),
                })?;
                e.covers.push((i, j));
            }
            _ => {
                return Err(ModelError::Parse {
                    line,
                    detail: format!("unrecognized line `{trimmed}`"),
                })
            }
        }
    }
    if let Some(e) = current.take() {
        out.push(finish(e)?);
    }
    Ok(out)
}
