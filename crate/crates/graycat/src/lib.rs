//! Symbolic engine for finitely presented semistrict 3-categories.
//!
//! The crate provides:
//!
//! - [`presentation`]: computads (generating cells up to dimension 3 plus
//!   relations between parallel 3-cells), a line-oriented text format for
//!   them, and duality transforms.
//! - [`terms`]: syntax trees for composite 2-cells and 3-cells over a
//!   computad, boundary computation, and formal inverses.
//! - [`normal2`]: whisker normal forms for 2-cells; equality of 2-cells is
//!   decided by normalization.
//! - [`eq3`]: a positioned rewrite-step calculus for 3-cells, strict
//!   normalization, machine-checkable equality certificates, and a
//!   budget-bounded bidirectional search that produces them.
//! - [`benabou`]: pseudoadjunctions, pseudoextensions, the constructions
//!   passing between them, and coherence reports.
//! - [`posmodel`]: finite poset models where the same structure collapses
//!   to Galois connections; used as an independent cross-check.

pub mod benabou;
pub mod eq3;
pub mod normal2;
pub mod posmodel;
pub mod presentation;
pub mod terms;

/// Source text of the bundled pseudoadjunction presentation.
pub const PSADJ_GRAY: &str = include_str!("../assets/psadj.gray");

/// The bundled pseudoadjunction computad: `F -| U` with unit `eta`,
/// counit `eps`, triangle isomorphisms `s`, `t`, and both swallowtail
/// relations.
pub fn psadj() -> presentation::Computad {
    presentation::load_presentation(PSADJ_GRAY)
        .expect("bundled presentation is well formed")
}
