//! Oracle tests for pseudoadjunction checking, extension data, the
//! constructions between them, and their duality transports.

use graycat::benabou::{
    adjunction_from_extension, check_pseudoadjunction, dualize_adjunction,
    extension_from_adjunction, generic_extension_instance, lift_from_adjunction,
    mu_from_adjunction, preservation_witness, sharp_from_adjunction,
    verify_extension_equation, verify_uniqueness_instance, BenabouError, CheckItem,
    CoherenceReport, GenericExtensionInstance, PseudoadjunctionData, Verdict,
};
use graycat::eq3::{
    canon3, check_certificate, normalize3_strict, prove_eq3, AxiomInstance, Budget, NAtomKind,
};
use graycat::normal2::{eq2, normalize2};
use graycat::presentation::Duality;
use graycat::psadj;
use graycat::terms::{boundary3, invert3, OneCellTerm, ThreeCellTerm, TwoCellTerm};

const NAMES: [&str; 6] = ["F", "U", "eta", "eps", "s", "t"];

fn data() -> PseudoadjunctionData {
    PseudoadjunctionData::from_computad(&psadj(), &NAMES).unwrap()
}

fn cell(base: &str, path: &[&str]) -> OneCellTerm {
    OneCellTerm {
        base: base.to_string(),
        path: path.iter().map(|s| s.to_string()).collect(),
    }
}

fn gen2(name: &str) -> TwoCellTerm {
    TwoCellTerm::Gen2(name.to_string())
}

fn item<'a>(r: &'a CoherenceReport, name: &str) -> &'a CheckItem {
    r.items
        .iter()
        .find(|i| i.name == name)
        .unwrap_or_else(|| panic!("report has no item `{name}`"))
}

fn instance() -> (GenericExtensionInstance, PseudoadjunctionData) {
    let inst = generic_extension_instance(&data()).unwrap();
    let d = PseudoadjunctionData::from_computad(&inst.computad, &NAMES).unwrap();
    (inst, d)
}

#[test]
fn check_psadj_passes_with_single_relation_certificates() {
    let d = data();
    let r = check_pseudoadjunction(&d);
    assert_eq!(r.overall, Verdict::Pass);
    assert!(r.items.iter().all(|i| i.verdict == Verdict::Pass));
    for (name, rel) in [("swallowtail-1", "swallowtail1"), ("swallowtail-2", "swallowtail2")] {
        let cert = item(&r, name).certificate.as_ref().expect("certificate");
        assert_eq!(cert.steps.len(), 1, "{name} should take one relation step");
        assert!(
            matches!(&cert.steps[0].axiom, AxiomInstance::Relation { id, .. } if id == rel),
            "{name} certified by `{rel}`"
        );
        check_certificate(&d.context, cert).unwrap();
    }
    for name in ["s-inverse-left", "s-inverse-right", "t-inverse-left", "t-inverse-right"] {
        let cert = item(&r, name).certificate.as_ref().expect("certificate");
        assert!(!cert.steps.is_empty());
        assert!(cert
            .steps
            .iter()
            .all(|s| matches!(s.axiom, AxiomInstance::InverseCancel { .. })));
        check_certificate(&d.context, cert).unwrap();
    }
}

#[test]
fn check_reports_unknown_when_swallowtail2_relation_is_missing() {
    let mut c = psadj();
    c.relations.retain(|r| r.name != "swallowtail2");
    let d = PseudoadjunctionData::from_computad(&c, &NAMES).unwrap();
    let r = check_pseudoadjunction(&d);
    assert_eq!(item(&r, "swallowtail-2").verdict, Verdict::Unknown);
    assert_eq!(item(&r, "swallowtail-1").verdict, Verdict::Pass);
    assert!(r
        .items
        .iter()
        .all(|i| i.name == "swallowtail-2" || i.verdict == Verdict::Pass));
    assert_eq!(r.overall, Verdict::Unknown);
}

#[test]
fn check_flags_reversed_t_boundary_before_coherence() {
    let mut d = data();
    d.t = invert3(&d.context, &d.t).unwrap();
    let r = check_pseudoadjunction(&d);
    assert_eq!(r.overall, Verdict::Fail);
    let it = item(&r, "triangle-t-boundary");
    assert_eq!(it.verdict, Verdict::Fail);
    assert!(it.detail.as_ref().unwrap().contains("`t`"));
    let first_fail = r.items.iter().position(|i| i.verdict == Verdict::Fail).unwrap();
    assert_eq!(r.items[first_fail].name, "triangle-t-boundary");
}

#[test]
fn from_computad_rejects_unknown_names() {
    let err = PseudoadjunctionData::from_computad(&psadj(), &["F", "U", "eta", "eps", "s", "nope"])
        .unwrap_err();
    assert!(matches!(err, BenabouError::UnknownCell { name } if name == "nope"));
}

#[test]
fn sharp_generic_has_the_expected_layers() {
    let (inst, d) = instance();
    let sharp = sharp_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let n = normalize2(&inst.computad, &sharp).unwrap();
    assert_eq!(n.source, cell("A", &["U", "G"]));
    assert_eq!(n.layers.len(), 2);
    assert_eq!(n.layers[0].gen, "g");
    assert!(n.layers[0].left.is_empty());
    assert_eq!(n.layers[0].right, vec!["U".to_string()]);
    assert_eq!(n.layers[1].gen, "eps");
    assert_eq!(n.layers[1].left, vec!["K".to_string()]);
    assert!(n.layers[1].right.is_empty());
}

#[test]
fn sharp_of_the_whiskered_counit_problem_is_eps() {
    let d = data();
    let w = preservation_witness(&d, &cell("X", &["F"])).unwrap();
    let eps2 = w
        .data
        .sharp(&cell("A", &[]), &TwoCellTerm::Id2(cell("X", &["F"])))
        .unwrap();
    assert_eq!(
        normalize2(&d.context, &eps2).unwrap(),
        normalize2(&d.context, &gen2("eps")).unwrap()
    );
}

#[test]
fn sharp_of_the_unit_against_u_is_the_triangle_source() {
    let d = data();
    let sharp =
        sharp_from_adjunction(&d, &cell("X", &[]), &cell("A", &["U"]), &gen2("eta")).unwrap();
    let n = normalize2(&d.context, &sharp).unwrap();
    assert_eq!(n.layers.len(), 2);
    assert_eq!(n.layers[0].gen, "eta");
    assert_eq!(n.layers[0].right, vec!["U".to_string()]);
    assert_eq!(n.layers[1].gen, "eps");
    assert_eq!(n.layers[1].left, vec!["U".to_string()]);
}

#[test]
fn realized_extension_collapses_on_its_own_unit() {
    let d = data();
    let e = extension_from_adjunction(&d);
    let u_cell = cell("A", &["U"]);
    let sharp = e.sharp(&u_cell, &gen2("eta")).unwrap();
    assert_eq!(sharp, TwoCellTerm::Id2(u_cell.clone()));
    let (m, minv) = e.mu(&u_cell, &gen2("eta")).unwrap();
    assert_eq!(m, ThreeCellTerm::Id3(gen2("eta")));
    assert_eq!(minv, m);
}

#[test]
fn mu_generic_boundary_canon_shape_and_inverses() {
    let (inst, d) = instance();
    let c = &inst.computad;
    let (m, minv) = mu_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let sharp = sharp_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let (src, tgt) = boundary3(c, &m).unwrap();
    let expected_src = TwoCellTerm::vcomp(
        TwoCellTerm::lwhisk(inst.big_g.clone(), gen2("eta")),
        TwoCellTerm::rwhisk(sharp, cell("X", &["F"])),
    );
    assert!(eq2(c, &src, &expected_src).unwrap());
    assert!(eq2(c, &tgt, &inst.g).unwrap());

    let n = canon3(c, &m).unwrap();
    assert_eq!(n.steps.len(), 2);
    assert_eq!(n.steps[0].pos, 0);
    assert!(n.steps[0].atom.inv);
    assert!(matches!(n.steps[0].atom.kind, NAtomKind::Ichg { .. }));
    assert_eq!(n.steps[1].pos, 1);
    assert!(n.steps[1].atom.inv);
    assert!(matches!(&n.steps[1].atom.kind, NAtomKind::Gen(g) if g == "s"));
    assert_eq!(n.steps[1].atom.lpath, vec!["K".to_string()]);

    let budget = Budget::default();
    for (a, b, frame) in [(&m, &minv, &src), (&minv, &m, &tgt)] {
        let comp = ThreeCellTerm::vcomp3(a.clone(), b.clone());
        let cert = prove_eq3(c, &comp, &ThreeCellTerm::Id3(frame.clone()), &budget)
            .unwrap()
            .expect("inverse pair certificate");
        assert!(cert
            .steps
            .iter()
            .all(|s| matches!(s.axiom, AxiomInstance::InverseCancel { .. })));
    }
}

#[test]
fn mu_on_the_counit_problem_strictly_normalizes_to_inverse_s() {
    let d = data();
    let c = &d.context;
    let f_cell = cell("X", &["F"]);
    let (m, minv) =
        mu_from_adjunction(&d, &f_cell, &cell("A", &[]), &TwoCellTerm::Id2(f_cell.clone()))
            .unwrap();
    assert_eq!(
        normalize3_strict(c, &m).unwrap(),
        normalize3_strict(c, &ThreeCellTerm::InvGen3("s".to_string())).unwrap()
    );
    let (src, _) = boundary3(c, &m).unwrap();
    let cert = prove_eq3(
        c,
        &ThreeCellTerm::vcomp3(m.clone(), minv),
        &ThreeCellTerm::Id3(src),
        &Budget::default(),
    )
    .unwrap()
    .expect("inverse cancellation certificate");
    assert!(!cert.steps.is_empty());
    assert!(cert
        .steps
        .iter()
        .all(|s| matches!(s.axiom, AxiomInstance::InverseCancel { .. })));
}

#[test]
fn lift_generic_canon_shape_and_wrong_target_is_rejected() {
    let (inst, d) = instance();
    let c = &inst.computad;
    let lift =
        lift_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g, &inst.k, &inst.omega).unwrap();
    let sharp = sharp_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let (src, tgt) = boundary3(c, &lift).unwrap();
    assert!(eq2(c, &src, &inst.k).unwrap());
    assert!(eq2(c, &tgt, &sharp).unwrap());

    let n = canon3(c, &lift).unwrap();
    assert_eq!(n.steps.len(), 3);
    assert_eq!(n.steps[0].pos, 0);
    assert!(n.steps[0].atom.inv);
    assert!(matches!(&n.steps[0].atom.kind, NAtomKind::Gen(g) if g == "t"));
    assert_eq!(n.steps[0].atom.lpath, vec!["G".to_string()]);
    assert_eq!(n.steps[1].pos, 1);
    assert!(n.steps[1].atom.inv);
    assert!(matches!(n.steps[1].atom.kind, NAtomKind::Ichg { .. }));
    assert_eq!(n.steps[2].pos, 0);
    assert!(!n.steps[2].atom.inv);
    assert!(matches!(&n.steps[2].atom.kind, NAtomKind::Gen(g) if g == "omega"));
    assert_eq!(n.steps[2].atom.rpath, vec!["U".to_string()]);

    let bad_k = TwoCellTerm::Id2(cell("A", &["U", "G"]));
    let err = lift_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g, &bad_k, &inst.omega)
        .unwrap_err();
    assert!(err.to_string().contains("`k`"));
}

#[test]
fn uniqueness_instance_is_certified_within_the_default_budget() {
    let (inst, d) = instance();
    let r = verify_uniqueness_instance(&d, &inst.big_g, &inst.big_k, &inst.g, &Budget::default())
        .unwrap();
    assert_eq!(r.overall, Verdict::Pass);
    let cert = item(&r, "uniqueness-instance").certificate.as_ref().unwrap();
    assert!(cert.steps.len() <= Budget::default().max_depth);
    check_certificate(&inst.computad, cert).unwrap();
}

#[test]
fn extension_equation_generic_is_certified() {
    let (inst, d) = instance();
    let r = verify_extension_equation(
        &d,
        &inst.big_g,
        &inst.big_k,
        &inst.g,
        &inst.k,
        &inst.omega,
        &Budget::default(),
    )
    .unwrap();
    assert_eq!(r.overall, Verdict::Pass);
    let cert = item(&r, "extension-equation").certificate.as_ref().unwrap();
    assert!(cert.steps.len() <= 20);
    check_certificate(&inst.computad, cert).unwrap();
}

#[test]
fn extension_equation_degenerate_instance_is_certified() {
    let (inst, d) = instance();
    let sharp = sharp_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let (m, _) = mu_from_adjunction(&d, &inst.big_g, &inst.big_k, &inst.g).unwrap();
    let r = verify_extension_equation(
        &d,
        &inst.big_g,
        &inst.big_k,
        &inst.g,
        &sharp,
        &m,
        &Budget::default(),
    )
    .unwrap();
    assert_eq!(r.overall, Verdict::Pass);
    let cert = item(&r, "extension-equation").certificate.as_ref().unwrap();
    check_certificate(&inst.computad, cert).unwrap();
}

#[test]
fn extension_equation_with_zero_budget_is_unknown() {
    let (inst, d) = instance();
    let r = verify_extension_equation(
        &d,
        &inst.big_g,
        &inst.big_k,
        &inst.g,
        &inst.k,
        &inst.omega,
        &Budget { max_visited: 0, max_depth: 0 },
    )
    .unwrap();
    assert_eq!(r.overall, Verdict::Unknown);
}

#[test]
fn roundtrip_recovers_the_adjunction() {
    let d = data();
    let c = d.context.clone();
    let e = extension_from_adjunction(&d);
    let w = preservation_witness(&d, &cell("X", &["F"])).unwrap();
    let (d2, r) = adjunction_from_extension(&e, Some(&w), &Budget::default()).unwrap();
    assert_eq!(r.overall, Verdict::Pass);

    assert_eq!(
        normalize2(&c, &d2.eps).unwrap(),
        normalize2(&c, &gen2("eps")).unwrap()
    );

    let s_inv = invert3(&c, &d2.s).unwrap();
    let cert_s = prove_eq3(&c, &s_inv, &ThreeCellTerm::InvGen3("s".to_string()), &Budget::default())
        .unwrap()
        .expect("derived s certificate");
    assert_eq!(cert_s.steps.len(), 1);

    let cert_t = prove_eq3(&c, &d2.t, &ThreeCellTerm::Gen3("t".to_string()), &Budget::default())
        .unwrap()
        .expect("derived t certificate");
    check_certificate(&c, &cert_t).unwrap();

    for name in ["swallowtail-1", "swallowtail-2-hypothesis"] {
        let it = item(&r, name);
        assert_eq!(it.verdict, Verdict::Pass, "{name}");
        check_certificate(&c, it.certificate.as_ref().unwrap()).unwrap();
    }

    assert_eq!(r.derived_relations.len(), 1);
    assert_eq!(r.derived_relations[0].name, "swallowtail2_derived");
    assert!(r.derived_relations[0].justification.contains("unique"));
    let frag = r.gray_fragment.as_ref().unwrap();
    assert!(frag.starts_with("# derived-by-uniqueness"));
    assert!(frag.contains("relation swallowtail2_derived :"));
}

#[test]
fn roundtrip_requires_the_preservation_witness() {
    let d = data();
    let e = extension_from_adjunction(&d);
    let err = adjunction_from_extension(&e, None, &Budget::default()).unwrap_err();
    assert!(err.to_string().contains("preservation by F required"));

    let w_bad = preservation_witness(&d, &cell("X", &[])).unwrap();
    let err = adjunction_from_extension(&e, Some(&w_bad), &Budget::default()).unwrap_err();
    assert!(err.to_string().contains("preservation by F required"));
}

#[test]
fn op_duality_preserves_verdicts_and_certificates() {
    let d = data();
    let dop = dualize_adjunction(&d, Duality::Op).unwrap();
    let r = check_pseudoadjunction(&dop);
    assert_eq!(r.overall, Verdict::Pass);
    for (name, rel) in [("swallowtail-1", "swallowtail1"), ("swallowtail-2", "swallowtail2")] {
        let cert = item(&r, name).certificate.as_ref().unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(matches!(&cert.steps[0].axiom, AxiomInstance::Relation { id, .. } if id == rel));
    }
}

#[test]
fn co_duality_swaps_the_swallowtail_roles() {
    let d = data();
    let dco = dualize_adjunction(&d, Duality::Co).unwrap();
    let r = check_pseudoadjunction(&dco);
    assert_eq!(r.overall, Verdict::Pass);
    for (name, rel) in [("swallowtail-1", "swallowtail2"), ("swallowtail-2", "swallowtail1")] {
        let cert = item(&r, name).certificate.as_ref().unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(matches!(&cert.steps[0].axiom, AxiomInstance::Relation { id, .. } if id == rel));
    }
}
