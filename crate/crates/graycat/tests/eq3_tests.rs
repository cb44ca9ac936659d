//! Oracle tests for 3-cell flattening, rewrite moves, and certificates.

use graycat::eq3::{
    canon3, canon3_with_stats, cancel_inverses, check_certificate, enumerate_moves,
    normalize3_strict, prove_eq3, readback, AxiomInstance, Budget, Direction, Eq3Error,
    EqualityCertificate, MoveCtx, NAtom, NAtomKind, Normal3, NormalSeg, PosStep, RewriteStep,
};
use graycat::normal2::{Layer, WhiskerNormal2Cell};
use graycat::psadj;
use graycat::terms::{OneCellTerm, ThreeCellTerm, TwoCellTerm};

fn one(base: &str, path: &[&str]) -> OneCellTerm {
    OneCellTerm { base: base.into(), path: path.iter().map(|s| s.to_string()).collect() }
}

fn layer(left: &[&str], gen: &str, right: &[&str]) -> Layer {
    Layer {
        left: left.iter().map(|s| s.to_string()).collect(),
        gen: gen.into(),
        right: right.iter().map(|s| s.to_string()).collect(),
    }
}

fn paths(p: &[&str]) -> Vec<String> {
    p.iter().map(|s| s.to_string()).collect()
}

fn seg(source: &[&str], layers: Vec<Layer>) -> NormalSeg {
    NormalSeg { source: paths(source), layers }
}

fn gen_atom(name: &str, inv: bool, lpath: &[&str], rpath: &[&str]) -> NAtom {
    NAtom { kind: NAtomKind::Gen(name.into()), inv, lpath: paths(lpath), rpath: paths(rpath) }
}

fn ichg_atom(beta: NormalSeg, alpha: NormalSeg, inv: bool, lpath: &[&str], rpath: &[&str]) -> NAtom {
    NAtom { kind: NAtomKind::Ichg { beta, alpha }, inv, lpath: paths(lpath), rpath: paths(rpath) }
}

fn ps(pos: usize, atom: NAtom) -> PosStep {
    PosStep { pos, atom }
}

fn gen2(name: &str) -> TwoCellTerm {
    TwoCellTerm::Gen2(name.into())
}

fn gen3(name: &str) -> ThreeCellTerm {
    ThreeCellTerm::Gen3(name.into())
}

/// `(eta > U) ; (U < eps)`, the 2-cell the second triangle witness targets.
fn roundtrip_two_cell() -> TwoCellTerm {
    TwoCellTerm::vcomp(
        TwoCellTerm::rwhisk(gen2("eta"), one("A", &["U"])),
        TwoCellTerm::lwhisk(one("A", &["U"]), gen2("eps")),
    )
}

#[test]
fn canon_of_first_swallowtail_paste() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let n = canon3(&c, &rel.lhs).unwrap();
    assert_eq!(
        n.source,
        WhiskerNormal2Cell { source: one("X", &[]), layers: vec![layer(&[], "eta", &[])] }
    );
    let eta_seg = seg(&[], vec![layer(&[], "eta", &[])]);
    assert_eq!(
        n.steps,
        vec![
            ps(1, gen_atom("s", false, &["U"], &[])),
            ps(0, ichg_atom(eta_seg.clone(), eta_seg, false, &[], &[])),
            ps(1, gen_atom("t", false, &[], &["F"])),
        ]
    );
}

#[test]
fn canon_of_second_swallowtail_paste() {
    let c = psadj();
    let rel = c.relation("swallowtail2").unwrap();
    let n = canon3(&c, &rel.lhs).unwrap();
    assert_eq!(
        n.source,
        WhiskerNormal2Cell { source: one("A", &["U", "F"]), layers: vec![layer(&[], "eps", &[])] }
    );
    let eps_seg = seg(&["U", "F"], vec![layer(&[], "eps", &[])]);
    assert_eq!(
        n.steps,
        vec![
            ps(0, gen_atom("s", false, &[], &["U"])),
            ps(1, ichg_atom(eps_seg.clone(), eps_seg, false, &[], &[])),
            ps(0, gen_atom("t", false, &["F"], &[])),
        ]
    );
}

#[test]
fn interchanger_with_identity_argument_erases() {
    let c = psadj();
    let t = ThreeCellTerm::ichg(gen2("eta"), TwoCellTerm::Id2(one("X", &[])));
    let (n, stats) = canon3_with_stats(&c, &t).unwrap();
    assert!(n.steps.is_empty());
    assert_eq!(stats.erased_units, 1);
    assert_eq!(n.source.layers, vec![layer(&[], "eta", &[])]);
    assert_eq!(normalize3_strict(&c, &t).unwrap(), ThreeCellTerm::Id3(gen2("eta")));
}

#[test]
fn inverse_pair_strictly_normalizes_to_identity() {
    let c = psadj();
    let t = ThreeCellTerm::vcomp3(gen3("s"), ThreeCellTerm::InvGen3("s".into()));
    let n = canon3(&c, &t).unwrap();
    assert_eq!(n.steps.len(), 2);
    assert_eq!(n.steps[1].atom, n.steps[0].atom.inverse());
    assert!(cancel_inverses(&n.steps).is_empty());
    assert_eq!(
        normalize3_strict(&c, &t).unwrap(),
        ThreeCellTerm::Id3(TwoCellTerm::Id2(one("X", &["F"])))
    );
}

#[test]
fn readback_is_a_section_of_flattening() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let n = canon3(&c, &rel.lhs).unwrap();
    let term = readback(&c, &n).unwrap();
    assert_eq!(canon3(&c, &term).unwrap(), n);
    let strict = normalize3_strict(&c, &rel.lhs).unwrap();
    assert_eq!(normalize3_strict(&c, &strict).unwrap(), strict);
}

#[test]
fn relation_certificate_checks() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let cert = EqualityCertificate {
        start: rel.lhs.clone(),
        steps: vec![RewriteStep::new(
            0,
            AxiomInstance::Relation {
                id: "swallowtail1".into(),
                inverted: false,
                rot_start: 0,
                rot_end: 3,
                lwhisk: vec![],
                rwhisk: vec![],
                delta: 0,
            },
            Direction::Forward,
        )],
        end: ThreeCellTerm::Id3(gen2("eta")),
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));
}

#[test]
fn failing_step_reports_its_one_based_index() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let cert = EqualityCertificate {
        start: rel.lhs.clone(),
        steps: vec![RewriteStep::new(
            0,
            AxiomInstance::InverseCancel { atom: gen_atom("s", false, &[], &[]), pos: 5 },
            Direction::Forward,
        )],
        end: rel.lhs.clone(),
    };
    match check_certificate(&c, &cert) {
        Err(Eq3Error::Step { step: 1, .. }) => {}
        other => panic!("expected a step-1 failure, got {other:?}"),
    }
}

#[test]
fn flattening_classifies_unit_collapses() {
    let c = psadj();
    let budget = Budget::default();
    // Syntactically equal sides need no steps at all.
    let rel = c.relation("swallowtail1").unwrap();
    let cert = prove_eq3(&c, &rel.lhs, &rel.lhs, &budget).unwrap().unwrap();
    assert!(cert.steps.is_empty());
    // A vertical identity factor is the vertical unit law.
    let lhs = ThreeCellTerm::vcomp3(
        ThreeCellTerm::Id3(TwoCellTerm::Id2(one("X", &["F"]))),
        gen3("s"),
    );
    let cert = prove_eq3(&c, &lhs, &gen3("s"), &budget).unwrap().unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].axiom, AxiomInstance::Hom2Unit);
    // An interchanger against an identity is the interchanger unit law.
    let lhs = ThreeCellTerm::ichg(gen2("eta"), TwoCellTerm::Id2(one("X", &[])));
    let cert = prove_eq3(&c, &lhs, &ThreeCellTerm::Id3(gen2("eta")), &budget).unwrap().unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].axiom, AxiomInstance::IchgUnit);
}

#[test]
fn search_finds_inverse_cancellation() {
    let c = psadj();
    let lhs = ThreeCellTerm::vcomp3(gen3("s"), ThreeCellTerm::InvGen3("s".into()));
    let rhs = ThreeCellTerm::Id3(TwoCellTerm::Id2(one("X", &["F"])));
    let cert = prove_eq3(&c, &lhs, &rhs, &Budget::default()).unwrap().unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert!(matches!(cert.steps[0].axiom, AxiomInstance::InverseCancel { .. }));
    assert_eq!(check_certificate(&c, &cert), Ok(()));
}

#[test]
fn search_finds_swallowtail_as_single_relation_step() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let cert =
        prove_eq3(&c, &rel.lhs, &ThreeCellTerm::Id3(gen2("eta")), &Budget::default())
            .unwrap()
            .unwrap();
    assert_eq!(cert.steps.len(), 1);
    match &cert.steps[0].axiom {
        AxiomInstance::Relation { id, inverted, rot_start, rot_end, lwhisk, rwhisk, delta } => {
            assert_eq!(id, "swallowtail1");
            assert!(!inverted);
            assert_eq!((*rot_start, *rot_end), (0, 3));
            assert!(lwhisk.is_empty() && rwhisk.is_empty());
            assert_eq!(*delta, 0);
        }
        other => panic!("expected a relation step, got {other:?}"),
    }
}

#[test]
fn boundary_errors_and_unprovable_pairs_are_kept_apart() {
    let mut stripped = psadj();
    let rel = stripped.relation("swallowtail1").unwrap().clone();
    stripped.relations.clear();
    let budget = Budget::default();
    // Without the relation the paste is not provably trivial.
    let got = prove_eq3(&stripped, &rel.lhs, &ThreeCellTerm::Id3(gen2("eta")), &budget).unwrap();
    assert_eq!(got, None);
    // Parallel frames with unequal 2-cell boundaries: no certificate exists.
    let c = psadj();
    let lhs = ThreeCellTerm::Id3(roundtrip_two_cell());
    let rhs = ThreeCellTerm::Id3(TwoCellTerm::Id2(one("A", &["U"])));
    assert_eq!(prove_eq3(&c, &lhs, &rhs, &budget).unwrap(), None);
    // Different 1-cell frames are a type-level mistake.
    let err = prove_eq3(&c, &ThreeCellTerm::Id3(gen2("eta")), &ThreeCellTerm::Id3(gen2("eps")), &budget);
    assert!(matches!(err, Err(Eq3Error::Boundary { .. })));
}

#[test]
fn interchanger_splits_and_merges_round_trip() {
    let c = psadj();
    // Sliding argument split: the first factor of a two-layer 2-cell slides first.
    let t = ThreeCellTerm::ichg(roundtrip_two_cell(), gen2("eps"));
    let n = canon3(&c, &t).unwrap();
    assert_eq!(n.steps.len(), 1);
    let merged = n.steps[0].atom.clone();
    let split = AxiomInstance::IchgVcompRight { merged: merged.clone(), split_at: 1 };
    let cert = EqualityCertificate {
        start: t.clone(),
        steps: vec![
            RewriteStep::new(0, split.clone(), Direction::Forward),
            RewriteStep::new(0, split, Direction::Backward),
        ],
        end: t,
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));

    // Stationary argument split, plus rediscovery of the merge by enumeration.
    let t = ThreeCellTerm::ichg(gen2("eta"), roundtrip_two_cell());
    let n = canon3(&c, &t).unwrap();
    let merged = n.steps[0].atom.clone();
    let split = AxiomInstance::IchgVcompLeft { merged: merged.clone(), split_at: 1 };
    let cert = EqualityCertificate {
        start: t.clone(),
        steps: vec![
            RewriteStep::new(0, split.clone(), Direction::Forward),
            RewriteStep::new(0, split.clone(), Direction::Backward),
        ],
        end: t.clone(),
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));

    let ctx = MoveCtx::new(&c);
    let mut state = n.steps.clone();
    graycat::eq3::apply_move(
        &c,
        &ctx,
        &n.source,
        &mut state,
        &RewriteStep::new(0, split, Direction::Forward),
    )
    .unwrap();
    let found = enumerate_moves(&c, &ctx, &n.source, &state);
    assert!(found.iter().any(|m| m.direction == Direction::Backward
        && m.axiom == AxiomInstance::IchgVcompLeft { merged: merged.clone(), split_at: 1 }));
}

#[test]
fn naturality_exchange_erases_and_restores_an_interchanger() {
    let c = psadj();
    // An interchanger whose stationary block is then rewritten away by `t`.
    let ichg_term = ThreeCellTerm::ichg(gen2("eta"), roundtrip_two_cell());
    let collapse = ThreeCellTerm::rwhisk2(
        gen3("t"),
        TwoCellTerm::rwhisk(gen2("eta"), one("A", &["U"])),
    );
    let t = ThreeCellTerm::vcomp3(ichg_term, collapse);
    let n = canon3(&c, &t).unwrap();
    assert_eq!(n.steps.len(), 2);
    assert!(matches!(n.steps[0].atom.kind, NAtomKind::Ichg { .. }));
    assert_eq!(n.steps[1], ps(0, gen_atom("t", false, &[], &[])));

    let ctx = MoveCtx::new(&c);
    let found = enumerate_moves(&c, &ctx, &n.source, &n.steps);
    let exchange = found
        .iter()
        .find(|m| matches!(m.axiom, AxiomInstance::ModificationNatRight { erased: Some(_) }))
        .expect("naturality exchange with erasure")
        .clone();
    assert_eq!(exchange.direction, Direction::Backward);

    // Round trip: erase the interchanger, then restore it.
    let cert = EqualityCertificate {
        start: t.clone(),
        steps: vec![exchange.clone(), exchange.flipped()],
        end: t.clone(),
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));

    // The erased state is reachable and reads back to an equal term.
    let mut state = n.steps.clone();
    graycat::eq3::apply_move(&c, &ctx, &n.source, &mut state, &exchange).unwrap();
    assert_eq!(state, vec![ps(1, gen_atom("t", false, &["F", "U"], &[]))]);
    let end = readback(&c, &Normal3 { source: n.source.clone(), steps: state }).unwrap();
    let cert = EqualityCertificate { start: t, steps: vec![exchange], end };
    assert_eq!(check_certificate(&c, &cert), Ok(()));
}

#[test]
fn disjoint_steps_interchange_in_the_hom_category() {
    let c = psadj();
    let t = ThreeCellTerm::hcomp3(
        ThreeCellTerm::lwhisk1(one("A", &["U"]), gen3("s")),
        ThreeCellTerm::rwhisk1(gen3("t"), one("X", &["F"])),
    );
    let n = canon3(&c, &t).unwrap();
    assert_eq!(
        n.steps,
        vec![ps(0, gen_atom("s", false, &["U"], &[])), ps(2, gen_atom("t", false, &[], &["F"]))]
    );
    let swap = RewriteStep::new(0, AxiomInstance::Hom2Interchange, Direction::Forward);
    let cert = EqualityCertificate {
        start: t.clone(),
        steps: vec![swap.clone(), swap.clone()],
        end: t.clone(),
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));

    let ctx = MoveCtx::new(&c);
    let mut swapped = n.steps.clone();
    graycat::eq3::apply_move(&c, &ctx, &n.source, &mut swapped, &swap).unwrap();
    assert_eq!(
        swapped,
        vec![ps(0, gen_atom("t", false, &[], &["F"])), ps(0, gen_atom("s", false, &["U"], &[]))]
    );
    let end = readback(&c, &Normal3 { source: n.source.clone(), steps: swapped }).unwrap();
    let cert = EqualityCertificate { start: t, steps: vec![swap], end };
    assert_eq!(check_certificate(&c, &cert), Ok(()));
}

#[test]
fn cancelling_pair_insertion_round_trips() {
    let c = psadj();
    let id = ThreeCellTerm::Id3(TwoCellTerm::Id2(one("X", &["F"])));
    let atom = gen_atom("s", false, &[], &[]);
    let insert = RewriteStep::new(
        0,
        AxiomInstance::InverseCancel { atom: atom.clone(), pos: 0 },
        Direction::Backward,
    );
    let cert = EqualityCertificate {
        start: id.clone(),
        steps: vec![insert.clone(), insert.flipped()],
        end: id.clone(),
    };
    assert_eq!(check_certificate(&c, &cert), Ok(()));
    // The insertion is also discoverable from the empty state.
    let n = canon3(&c, &id).unwrap();
    let ctx = MoveCtx::new(&c);
    let found = enumerate_moves(&c, &ctx, &n.source, &n.steps);
    assert!(found.contains(&insert));
}

#[test]
fn certificates_serialize_stably() {
    let c = psadj();
    let rel = c.relation("swallowtail1").unwrap();
    let cert = EqualityCertificate {
        start: rel.lhs.clone(),
        steps: vec![
            RewriteStep::new(
                0,
                AxiomInstance::Relation {
                    id: "swallowtail1".into(),
                    inverted: false,
                    rot_start: 0,
                    rot_end: 3,
                    lwhisk: vec![],
                    rwhisk: vec![],
                    delta: 0,
                },
                Direction::Forward,
            ),
            RewriteStep::new(
                1,
                AxiomInstance::ModificationNatLeft {
                    erased: Some(ps(0, gen_atom("s", false, &["U"], &[]))),
                },
                Direction::Backward,
            ),
            RewriteStep::new(2, AxiomInstance::IchgUnit, Direction::Forward),
        ],
        end: ThreeCellTerm::Id3(gen2("eta")),
    };
    let json = serde_json::to_string(&cert).unwrap();
    for needle in [
        "\"kind\":\"relation\"",
        "\"params\"",
        "\"position\"",
        "\"direction\":\"forward\"",
        "\"rotStart\"",
        "\"kind\":\"modification-nat-left\"",
        "\"kind\":\"ichg-unit\"",
    ] {
        assert!(json.contains(needle), "missing {needle} in {json}");
    }
    let back: EqualityCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
}
