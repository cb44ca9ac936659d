//! Text format for finitely presented semistrict 3-categories: generators in
//! dimensions 0 to 3 plus relations between parallel 3-cells.
//!
//! The format is line oriented. `#` starts a comment. Statements:
//!
//! ```text
//! object X
//! 1cell F : X -> A
//! 2cell eta : id(X) => U . F
//! 3cell inv s : id2(F) -> (F < eta) ; (eps > F)
//! relation name : lhs == rhs
//! ```
//!
//! Names must be declared before use; every name lives in one global
//! namespace. In 2-cell expressions `<` and `>` whisker by a 1-cell and `;`
//! composes vertically. In 3-cell expressions `<` and `>` whisker by a
//! 1-cell, `;` composes horizontally inside a hom, and `*` composes along a
//! shared 2-cell; `ichg(beta, alpha)` names the interchanger that slides
//! `beta` past `alpha`, and `inv(w)` inverts an invertible generator.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal2;
use crate::terms::{self, OneCellTerm, ThreeCellTerm, TwoCellTerm};

/// A generator name tagged with its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorId {
    pub name: String,
    pub dimension: u8,
}

/// A 1-dimensional generator between two objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneGen {
    pub id: GeneratorId,
    pub src: String,
    pub tgt: String,
}

/// A 2-dimensional generator between parallel 1-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGen {
    pub id: GeneratorId,
    pub src1: OneCellTerm,
    pub tgt1: OneCellTerm,
}

/// A 3-dimensional generator between parallel 2-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeGen {
    pub id: GeneratorId,
    pub src2: TwoCellTerm,
    pub tgt2: TwoCellTerm,
    pub invertible: bool,
}

/// A relation equating two parallel 3-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub lhs: ThreeCellTerm,
    pub rhs: ThreeCellTerm,
}

/// A finite presentation: generators in dimensions 0 to 3 and relations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Computad {
    pub objects: Vec<GeneratorId>,
    pub one_gens: Vec<OneGen>,
    pub two_gens: Vec<TwoGen>,
    pub three_gens: Vec<ThreeGen>,
    pub relations: Vec<Relation>,
}

/// Errors raised while loading or validating a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: String, name: String },
    #[error("ill-formed {kind} `{name}`: {detail}")]
    Boundary { kind: String, name: String, detail: String },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Parse { line, column, message: message.into() }
}

fn boundary_err(
    kind: &str,
    name: &str,
    detail: impl Into<String>,
) -> PresentationError {
    PresentationError::Boundary {
        kind: kind.to_string(),
        name: name.to_string(),
        detail: detail.into(),
    }
}

impl Computad {
    pub fn object(&self, name: &str) -> Option<&GeneratorId> {
        self.objects.iter().find(|g| g.name == name)
    }

    pub fn one_gen(&self, name: &str) -> Option<&OneGen> {
        self.one_gens.iter().find(|g| g.id.name == name)
    }

    pub fn two_gen(&self, name: &str) -> Option<&TwoGen> {
        self.two_gens.iter().find(|g| g.id.name == name)
    }

    pub fn three_gen(&self, name: &str) -> Option<&ThreeGen> {
        self.three_gens.iter().find(|g| g.id.name == name)
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.object(name).is_some()
            || self.one_gen(name).is_some()
            || self.two_gen(name).is_some()
            || self.three_gen(name).is_some()
            || self.relation(name).is_some()
    }

    /// Build a 1-cell term from generator names listed in application order
    /// (the first name is applied first).
    pub fn one_cell(&self, names: &[&str]) -> Result<OneCellTerm, PresentationError> {
        let first = names.first().ok_or_else(|| {
            boundary_err("1cell", "", "empty composite needs a base object")
        })?;
        let base = self
            .one_gen(first)
            .ok_or_else(|| boundary_err("1cell", first, "not a declared 1-cell"))?
            .src
            .clone();
        let t = OneCellTerm { base, path: names.iter().map(|s| s.to_string()).collect() };
        terms::boundary1(self, &t)
            .map_err(|e| boundary_err("1cell", first, e.to_string()))?;
        Ok(t)
    }

    /// Check that every generator and relation is well typed. Reports the
    /// first offender in declaration order, lowest dimension first.
    pub fn validate(&self) -> Result<(), PresentationError> {
        for g in &self.one_gens {
            for (role, obj) in [("source", &g.src), ("target", &g.tgt)] {
                if self.object(obj).is_none() {
                    return Err(boundary_err(
                        "1cell",
                        &g.id.name,
                        format!("{role} object `{obj}` is not declared"),
                    ));
                }
            }
        }
        for g in &self.two_gens {
            let n = &g.id.name;
            let s = terms::boundary1(self, &g.src1)
                .map_err(|e| boundary_err("2cell", n, e.to_string()))?;
            let t = terms::boundary1(self, &g.tgt1)
                .map_err(|e| boundary_err("2cell", n, e.to_string()))?;
            if s != t {
                return Err(boundary_err(
                    "2cell",
                    n,
                    format!(
                        "boundary 1-cells are not parallel: {}..{} vs {}..{}",
                        s.0, s.1, t.0, t.1
                    ),
                ));
            }
        }
        for g in &self.three_gens {
            let n = &g.id.name;
            let s = terms::boundary2(self, &g.src2)
                .map_err(|e| boundary_err("3cell", n, e.to_string()))?;
            let t = terms::boundary2(self, &g.tgt2)
                .map_err(|e| boundary_err("3cell", n, e.to_string()))?;
            if s != t {
                return Err(boundary_err("3cell", n, "boundary 2-cells are not parallel"));
            }
        }
        for r in &self.relations {
            let n = &r.name;
            let (sl, tl) = terms::boundary3(self, &r.lhs)
                .map_err(|e| boundary_err("relation", n, e.to_string()))?;
            let (sr, tr) = terms::boundary3(self, &r.rhs)
                .map_err(|e| boundary_err("relation", n, e.to_string()))?;
            let src_ok = normal2::eq2(self, &sl, &sr)
                .map_err(|e| boundary_err("relation", n, e.to_string()))?;
            let tgt_ok = normal2::eq2(self, &tl, &tr)
                .map_err(|e| boundary_err("relation", n, e.to_string()))?;
            if !src_ok || !tgt_ok {
                return Err(boundary_err("relation", n, "sides are not parallel"));
            }
        }
        Ok(())
    }
}

/// The three dualities of a 3-category: `Op` reverses 1-cells, `Co`
/// reverses 2-cells, `Coop` reverses both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duality {
    Op,
    Co,
    Coop,
}

impl std::str::FromStr for Duality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "op" => Ok(Duality::Op),
            "co" => Ok(Duality::Co),
            "coop" => Ok(Duality::Coop),
            other => Err(format!("unknown duality `{other}` (expected op, co, or coop)")),
        }
    }
}

/// Dualize a validated presentation. Involutive for `Op` and `Co`;
/// `Coop` is their composite in either order.
pub fn dualize(c: &Computad, d: Duality) -> Computad {
    let msg = "dualize expects a validated presentation";
    let flip_h = matches!(d, Duality::Op | Duality::Coop);
    let flip_v = matches!(d, Duality::Co | Duality::Coop);
    Computad {
        objects: c.objects.clone(),
        one_gens: c
            .one_gens
            .iter()
            .map(|g| {
                let (src, tgt) = if flip_h {
                    (g.tgt.clone(), g.src.clone())
                } else {
                    (g.src.clone(), g.tgt.clone())
                };
                OneGen { id: g.id.clone(), src, tgt }
            })
            .collect(),
        two_gens: c
            .two_gens
            .iter()
            .map(|g| {
                let (a, b) = if flip_v { (&g.tgt1, &g.src1) } else { (&g.src1, &g.tgt1) };
                TwoGen {
                    id: g.id.clone(),
                    src1: terms::dual_one(c, d, a).expect(msg),
                    tgt1: terms::dual_one(c, d, b).expect(msg),
                }
            })
            .collect(),
        three_gens: c
            .three_gens
            .iter()
            .map(|g| ThreeGen {
                id: g.id.clone(),
                src2: terms::dual_two(c, d, &g.src2).expect(msg),
                tgt2: terms::dual_two(c, d, &g.tgt2).expect(msg),
                invertible: g.invertible,
            })
            .collect(),
        relations: c
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                lhs: terms::dual_three(c, d, &r.lhs).expect(msg),
                rhs: terms::dual_three(c, d, &r.rhs).expect(msg),
            })
            .collect(),
    }
}

const RESERVED: &[&str] =
    &["object", "1cell", "2cell", "3cell", "relation", "inv", "id", "id2", "id3", "ichg", "inv_ichg"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    col: usize,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<Sp>, PresentationError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        if ch.is_ascii_alphanumeric() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Sp { tok: Tok::Word(chars[start..i].iter().collect()), col });
            continue;
        }
        let sym: &'static str = match ch {
            ':' => ":",
            '.' => ".",
            ';' => ";",
            '*' => "*",
            '<' => "<",
            '>' => ">",
            '(' => "(",
            ')' => ")",
            ',' => ",",
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    "->"
                } else {
                    return Err(parse_err(lineno, col, "expected `->`"));
                }
            }
            '=' => match chars.get(i + 1) {
                Some('>') => {
                    i += 1;
                    "=>"
                }
                Some('=') => {
                    i += 1;
                    "=="
                }
                _ => return Err(parse_err(lineno, col, "expected `=>` or `==`")),
            },
            other => {
                return Err(parse_err(lineno, col, format!("unexpected character `{other}`")))
            }
        };
        i += 1;
        out.push(Sp { tok: Tok::Sym(sym), col });
    }
    Ok(out)
}

struct Parser<'a> {
    c: &'a Computad,
    toks: Vec<Sp>,
    i: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn new(c: &'a Computad, toks: Vec<Sp>, line: usize, end_col: usize) -> Self {
        Parser { c, toks, i: 0, line, end_col }
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> PresentationError {
        parse_err(self.line, col, msg)
    }

    fn err_here(&self, msg: impl Into<String>) -> PresentationError {
        let col = self.toks.get(self.i).map(|t| t.col).unwrap_or(self.end_col);
        self.err(col, msg)
    }

    fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn peek_sym(&self, s: &str) -> bool {
        matches!(self.toks.get(self.i), Some(Sp { tok: Tok::Sym(x), .. }) if *x == s)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.toks.get(self.i) {
            Some(Sp { tok: Tok::Word(w), .. }) => Some(w.as_str()),
            _ => None,
        }
    }

    fn bump(&mut self) {
        self.i += 1;
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), PresentationError> {
        if self.peek_sym(s) {
            self.bump();
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{s}`")))
        }
    }

    fn expect_word(&mut self) -> Result<(String, usize), PresentationError> {
        match self.toks.get(self.i) {
            Some(Sp { tok: Tok::Word(w), col }) => {
                let out = (w.clone(), *col);
                self.bump();
                Ok(out)
            }
            _ => Err(self.err_here("expected a name")),
        }
    }

    fn expect_end(&self) -> Result<(), PresentationError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err_here("unexpected trailing tokens"))
        }
    }

    /// `id(X)`, a dotted chain of 1-cell names, or either in parentheses.
    fn parse_one(&mut self) -> Result<OneCellTerm, PresentationError> {
        if self.peek_sym("(") {
            self.bump();
            let t = self.parse_one()?;
            self.expect_sym(")")?;
            return Ok(t);
        }
        let Some(first) = self.peek_word() else {
            return Err(self.err_here("expected a 1-cell expression"));
        };
        if first == "id" {
            self.bump();
            self.expect_sym("(")?;
            let (name, col) = self.expect_word()?;
            if self.c.object(&name).is_none() {
                return Err(self.err(col, format!("unknown object `{name}`")));
            }
            self.expect_sym(")")?;
            return Ok(OneCellTerm::object(name));
        }
        let mut words = vec![self.expect_word()?];
        while self.peek_sym(".") {
            self.bump();
            words.push(self.expect_word()?);
        }
        for (name, col) in &words {
            if self.c.one_gen(name).is_none() {
                return Err(self.err(*col, format!("unknown 1-cell generator `{name}`")));
            }
        }
        // Text lists classical composition order; store application order.
        let path: Vec<String> = words.iter().rev().map(|(n, _)| n.clone()).collect();
        let base = self.c.one_gen(&path[0]).unwrap().src.clone();
        Ok(OneCellTerm { base, path })
    }

    fn parse_two(&mut self) -> Result<TwoCellTerm, PresentationError> {
        let mut acc = self.parse_whisk2()?;
        while self.peek_sym(";") {
            self.bump();
            let rhs = self.parse_whisk2()?;
            acc = TwoCellTerm::vcomp(acc, rhs);
        }
        Ok(acc)
    }

    fn parse_whisk2(&mut self) -> Result<TwoCellTerm, PresentationError> {
        let save = self.i;
        if let Ok(g) = self.parse_one() {
            if self.peek_sym("<") {
                self.bump();
                let body = self.parse_whisk2()?;
                return Ok(TwoCellTerm::lwhisk(g, body));
            }
        }
        self.i = save;
        let mut acc = self.parse_primary2()?;
        while self.peek_sym(">") {
            self.bump();
            let f = self.parse_one()?;
            acc = TwoCellTerm::rwhisk(acc, f);
        }
        Ok(acc)
    }

    fn parse_primary2(&mut self) -> Result<TwoCellTerm, PresentationError> {
        if self.peek_sym("(") {
            self.bump();
            let t = self.parse_two()?;
            self.expect_sym(")")?;
            return Ok(t);
        }
        if self.peek_word() == Some("id2") {
            self.bump();
            self.expect_sym("(")?;
            let f = self.parse_one()?;
            self.expect_sym(")")?;
            return Ok(TwoCellTerm::Id2(f));
        }
        let (name, col) = self.expect_word().map_err(|_| self.err_here("expected a 2-cell expression"))?;
        if self.c.two_gen(&name).is_none() {
            return Err(self.err(col, format!("unknown 2-cell generator `{name}`")));
        }
        Ok(TwoCellTerm::Gen2(name))
    }

    fn parse_three(&mut self) -> Result<ThreeCellTerm, PresentationError> {
        let mut acc = self.parse_hcomp3()?;
        while self.peek_sym("*") {
            self.bump();
            let rhs = self.parse_hcomp3()?;
            acc = ThreeCellTerm::vcomp3(acc, rhs);
        }
        Ok(acc)
    }

    fn parse_hcomp3(&mut self) -> Result<ThreeCellTerm, PresentationError> {
        let mut acc = self.parse_whisk3()?;
        while self.peek_sym(";") {
            self.bump();
            let rhs = self.parse_whisk3()?;
            acc = ThreeCellTerm::hcomp3(acc, rhs);
        }
        Ok(acc)
    }

    fn parse_whisk3(&mut self) -> Result<ThreeCellTerm, PresentationError> {
        let save = self.i;
        if let Ok(g) = self.parse_one() {
            if self.peek_sym("<") {
                self.bump();
                let body = self.parse_whisk3()?;
                return Ok(ThreeCellTerm::lwhisk1(g, body));
            }
        }
        self.i = save;
        let mut acc = self.parse_primary3()?;
        while self.peek_sym(">") {
            self.bump();
            let f = self.parse_one()?;
            acc = ThreeCellTerm::rwhisk1(acc, f);
        }
        Ok(acc)
    }

    fn parse_primary3(&mut self) -> Result<ThreeCellTerm, PresentationError> {
        if self.peek_sym("(") {
            self.bump();
            let t = self.parse_three()?;
            self.expect_sym(")")?;
            return Ok(t);
        }
        match self.peek_word() {
            Some("id3") => {
                self.bump();
                self.expect_sym("(")?;
                let x = self.parse_two()?;
                self.expect_sym(")")?;
                Ok(ThreeCellTerm::Id3(x))
            }
            Some("inv") => {
                self.bump();
                self.expect_sym("(")?;
                let (name, col) = self.expect_word()?;
                if self.c.three_gen(&name).is_none() {
                    return Err(self.err(col, format!("unknown 3-cell generator `{name}`")));
                }
                self.expect_sym(")")?;
                Ok(ThreeCellTerm::InvGen3(name))
            }
            Some("ichg") | Some("inv_ichg") => {
                let forward = self.peek_word() == Some("ichg");
                self.bump();
                self.expect_sym("(")?;
                let beta = self.parse_two()?;
                self.expect_sym(",")?;
                let alpha = self.parse_two()?;
                self.expect_sym(")")?;
                Ok(if forward {
                    ThreeCellTerm::Ichg(beta, alpha)
                } else {
                    ThreeCellTerm::InvIchg(beta, alpha)
                })
            }
            Some(_) => {
                let (name, col) = self.expect_word()?;
                if self.c.three_gen(&name).is_none() {
                    return Err(self.err(col, format!("unknown 3-cell generator `{name}`")));
                }
                Ok(ThreeCellTerm::Gen3(name))
            }
            None => Err(self.err_here("expected a 3-cell expression")),
        }
    }
}

fn check_fresh_name(
    c: &Computad,
    kind: &str,
    name: &str,
    line: usize,
    col: usize,
) -> Result<(), PresentationError> {
    if RESERVED.contains(&name) {
        return Err(parse_err(line, col, format!("`{name}` is a reserved word")));
    }
    if c.name_taken(name) {
        return Err(PresentationError::Duplicate { kind: kind.to_string(), name: name.to_string() });
    }
    Ok(())
}

/// Load a presentation from text and validate it.
pub fn load_presentation(text: &str) -> Result<Computad, PresentationError> {
    let mut c = Computad::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = lex_line(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.chars().count() + 1;
        let mut p = Parser::new(&c, toks, lineno, end_col);
        let (kw, kw_col) = p.expect_word()?;
        match kw.as_str() {
            "object" => {
                let (name, col) = p.expect_word()?;
                p.expect_end()?;
                check_fresh_name(&c, "object", &name, lineno, col)?;
                c.objects.push(GeneratorId { name, dimension: 0 });
            }
            "1cell" => {
                let (name, col) = p.expect_word()?;
                p.expect_sym(":")?;
                let (src, scol) = p.expect_word()?;
                p.expect_sym("->")?;
                let (tgt, tcol) = p.expect_word()?;
                p.expect_end()?;
                if c.object(&src).is_none() {
                    return Err(parse_err(lineno, scol, format!("unknown object `{src}`")));
                }
                if c.object(&tgt).is_none() {
                    return Err(parse_err(lineno, tcol, format!("unknown object `{tgt}`")));
                }
                check_fresh_name(&c, "1cell", &name, lineno, col)?;
                c.one_gens.push(OneGen {
                    id: GeneratorId { name, dimension: 1 },
                    src,
                    tgt,
                });
            }
            "2cell" => {
                let (name, col) = p.expect_word()?;
                p.expect_sym(":")?;
                let src1 = p.parse_one()?;
                p.expect_sym("=>")?;
                let tgt1 = p.parse_one()?;
                p.expect_end()?;
                check_fresh_name(&c, "2cell", &name, lineno, col)?;
                c.two_gens.push(TwoGen {
                    id: GeneratorId { name, dimension: 2 },
                    src1,
                    tgt1,
                });
            }
            "3cell" => {
                let invertible = p.peek_word() == Some("inv");
                if invertible {
                    p.bump();
                }
                let (name, col) = p.expect_word()?;
                p.expect_sym(":")?;
                let src2 = p.parse_two()?;
                p.expect_sym("->")?;
                let tgt2 = p.parse_two()?;
                p.expect_end()?;
                check_fresh_name(&c, "3cell", &name, lineno, col)?;
                c.three_gens.push(ThreeGen {
                    id: GeneratorId { name, dimension: 3 },
                    src2,
                    tgt2,
                    invertible,
                });
            }
            "relation" => {
                let (name, col) = p.expect_word()?;
                p.expect_sym(":")?;
                let lhs = p.parse_three()?;
                p.expect_sym("==")?;
                let rhs = p.parse_three()?;
                p.expect_end()?;
                check_fresh_name(&c, "relation", &name, lineno, col)?;
                c.relations.push(Relation { name, lhs, rhs });
            }
            other => {
                return Err(parse_err(
                    lineno,
                    kw_col,
                    format!("unknown declaration keyword `{other}`"),
                ));
            }
        }
    }
    c.validate()?;
    Ok(c)
}

/// Parse a standalone 3-cell expression against a presentation.
pub fn parse_three_cell(c: &Computad, text: &str) -> Result<ThreeCellTerm, PresentationError> {
    let toks = lex_line(text, 1)?;
    let end_col = text.chars().count() + 1;
    let mut p = Parser::new(c, toks, 1, end_col);
    let t = p.parse_three()?;
    p.expect_end()?;
    Ok(t)
}

/// Render a 1-cell term in classical order (`U . F` applies `F` first).
pub fn render_one_cell(t: &OneCellTerm) -> String {
    if t.path.is_empty() {
        format!("id({})", t.base)
    } else {
        let mut names: Vec<&str> = t.path.iter().map(String::as_str).collect();
        names.reverse();
        names.join(" . ")
    }
}

fn render_one_tight(t: &OneCellTerm) -> String {
    if t.path.len() == 1 {
        t.path[0].clone()
    } else if t.path.is_empty() {
        render_one_cell(t)
    } else {
        format!("({})", render_one_cell(t))
    }
}

/// Render a 2-cell term; the output reparses to the same tree.
pub fn render_two_cell(t: &TwoCellTerm) -> String {
    render2_v(t)
}

fn render2_v(t: &TwoCellTerm) -> String {
    match t {
        TwoCellTerm::VComp(a, b) => format!("{} ; {}", render2_v(a), render2_w(b)),
        _ => render2_w(t),
    }
}

fn render2_w(t: &TwoCellTerm) -> String {
    match t {
        TwoCellTerm::VComp(..) => format!("({})", render2_v(t)),
        TwoCellTerm::LWhisk(g, x) => {
            format!("{} < {}", render_one_tight(g), render2_w(x))
        }
        TwoCellTerm::RWhisk(..) => render2_post(t),
        _ => render2_prim(t),
    }
}

fn render2_post(t: &TwoCellTerm) -> String {
    match t {
        TwoCellTerm::RWhisk(x, f) => {
            format!("{} > {}", render2_post(x), render_one_tight(f))
        }
        TwoCellTerm::LWhisk(..) | TwoCellTerm::VComp(..) => format!("({})", render2_v(t)),
        _ => render2_prim(t),
    }
}

fn render2_prim(t: &TwoCellTerm) -> String {
    match t {
        TwoCellTerm::Id2(f) => format!("id2({})", render_one_cell(f)),
        TwoCellTerm::Gen2(name) => name.clone(),
        _ => format!("({})", render2_v(t)),
    }
}

/// Render a 3-cell term; 2-cell whiskers print as horizontal composition
/// with an identity, which reparses to an equivalent composite.
pub fn render_three_cell(t: &ThreeCellTerm) -> String {
    render3_v(t)
}

fn render3_v(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::VComp3(a, b) => format!("{} * {}", render3_v(a), render3_h_guard(b)),
        _ => render3_h(t),
    }
}

fn render3_h_guard(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::VComp3(..) => format!("({})", render3_v(t)),
        _ => render3_h(t),
    }
}

fn render3_h(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::HComp3(a, b) => format!("{} ; {}", render3_h(a), render3_w(b)),
        ThreeCellTerm::LWhisk2(c, x) => {
            format!("id3({}) ; {}", render_two_cell(c), render3_w(x))
        }
        ThreeCellTerm::RWhisk2(x, c) => {
            format!("{} ; id3({})", render3_h(x), render_two_cell(c))
        }
        _ => render3_w(t),
    }
}

fn render3_w(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::VComp3(..) | ThreeCellTerm::HComp3(..) => format!("({})", render3_v(t)),
        ThreeCellTerm::LWhisk2(..) | ThreeCellTerm::RWhisk2(..) => {
            format!("({})", render3_h(t))
        }
        ThreeCellTerm::LWhisk1(g, x) => {
            format!("{} < {}", render_one_tight(g), render3_w(x))
        }
        ThreeCellTerm::RWhisk1(..) => render3_post(t),
        _ => render3_prim(t),
    }
}

fn render3_post(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::RWhisk1(x, f) => {
            format!("{} > {}", render3_post(x), render_one_tight(f))
        }
        ThreeCellTerm::LWhisk1(..)
        | ThreeCellTerm::VComp3(..)
        | ThreeCellTerm::HComp3(..)
        | ThreeCellTerm::LWhisk2(..)
        | ThreeCellTerm::RWhisk2(..) => format!("({})", render3_v(t)),
        _ => render3_prim(t),
    }
}

fn render3_prim(t: &ThreeCellTerm) -> String {
    match t {
        ThreeCellTerm::Id3(x) => format!("id3({})", render_two_cell(x)),
        ThreeCellTerm::Gen3(name) => name.clone(),
        ThreeCellTerm::InvGen3(name) => format!("inv({name})"),
        ThreeCellTerm::Ichg(b, a) => {
            format!("ichg({}, {})", render_two_cell(b), render_two_cell(a))
        }
        ThreeCellTerm::InvIchg(b, a) => {
            format!("inv_ichg({}, {})", render_two_cell(b), render_two_cell(a))
        }
        _ => format!("({})", render3_v(t)),
    }
}

/// Render a full presentation in the line format accepted by
/// [`load_presentation`].
pub fn render_presentation(c: &Computad) -> String {
    let mut out = String::new();
    for g in &c.objects {
        out.push_str(&format!("object {}\n", g.name));
    }
    for g in &c.one_gens {
        out.push_str(&format!("1cell {} : {} -> {}\n", g.id.name, g.src, g.tgt));
    }
    for g in &c.two_gens {
        out.push_str(&format!(
            "2cell {} : {} => {}\n",
            g.id.name,
            render_one_cell(&g.src1),
            render_one_cell(&g.tgt1)
        ));
    }
    for g in &c.three_gens {
        out.push_str(&format!(
            "3cell {}{} : {} -> {}\n",
            if g.invertible { "inv " } else { "" },
            g.id.name,
            render_two_cell(&g.src2),
            render_two_cell(&g.tgt2)
        ));
    }
    for r in &c.relations {
        out.push_str(&format!(
            "relation {} : {} == {}\n",
            r.name,
            render_three_cell(&r.lhs),
            render_three_cell(&r.rhs)
        ));
    }
    out
}
