//! Oracle tests for cell terms: boundaries, formal inverses, and term duality.

use graycat::presentation::{dualize, Duality};
use graycat::psadj;
use graycat::terms::{
    boundary1, boundary2, boundary3, dual_one, dual_three, dual_two, invert3, OneCellTerm,
    ThreeCellTerm, TwoCellTerm, TypeError,
};

fn one(base: &str, path: &[&str]) -> OneCellTerm {
    OneCellTerm { base: base.into(), path: path.iter().map(|s| s.to_string()).collect() }
}

#[test]
fn boundary1_of_paths() {
    let c = psadj();
    assert_eq!(boundary1(&c, &one("X", &["F"])).unwrap(), ("X".to_string(), "A".to_string()));
    assert_eq!(boundary1(&c, &one("X", &[])).unwrap(), ("X".to_string(), "X".to_string()));
    assert_eq!(
        boundary1(&c, &one("X", &["F", "U", "F"])).unwrap(),
        ("X".to_string(), "A".to_string())
    );
    assert!(matches!(
        boundary1(&c, &one("X", &["U"])),
        Err(TypeError::Mismatch { .. })
    ));
    assert!(matches!(
        boundary1(&c, &one("X", &["Q"])),
        Err(TypeError::UnknownGenerator { dimension: 1, .. })
    ));
}

#[test]
fn boundary2_of_generators_and_whiskers() {
    let c = psadj();
    let eta = TwoCellTerm::Gen2("eta".into());
    assert_eq!(
        boundary2(&c, &eta).unwrap(),
        (one("X", &[]), one("X", &["F", "U"]))
    );
    // U < eps : U . F . U => U
    let ue = TwoCellTerm::lwhisk(one("A", &["U"]), TwoCellTerm::Gen2("eps".into()));
    assert_eq!(
        boundary2(&c, &ue).unwrap(),
        (one("A", &["U", "F", "U"]), one("A", &["U"]))
    );
    let idf = TwoCellTerm::Id2(one("X", &["F"]));
    assert_eq!(boundary2(&c, &idf).unwrap(), (one("X", &["F"]), one("X", &["F"])));
}

#[test]
fn boundary2_rejects_non_composable_vcomp() {
    let c = psadj();
    let bad = TwoCellTerm::vcomp(
        TwoCellTerm::Gen2("eta".into()),
        TwoCellTerm::Gen2("eta".into()),
    );
    match boundary2(&c, &bad) {
        Err(TypeError::Mismatch { position, .. }) => assert!(!position.is_empty()),
        other => panic!("expected mismatch, got {other:?}"),
    }
}

#[test]
fn boundary3_of_declared_generators() {
    let c = psadj();
    let f = one("X", &["F"]);
    let (src_s, tgt_s) = boundary3(&c, &ThreeCellTerm::Gen3("s".into())).unwrap();
    assert_eq!(src_s, TwoCellTerm::Id2(f.clone()));
    assert_eq!(
        tgt_s,
        TwoCellTerm::vcomp(
            TwoCellTerm::lwhisk(f.clone(), TwoCellTerm::Gen2("eta".into())),
            TwoCellTerm::rwhisk(TwoCellTerm::Gen2("eps".into()), f.clone()),
        )
    );
    let u = one("A", &["U"]);
    let (src_t, tgt_t) = boundary3(&c, &ThreeCellTerm::Gen3("t".into())).unwrap();
    assert_eq!(tgt_t, TwoCellTerm::Id2(u.clone()));
    assert_eq!(
        src_t,
        TwoCellTerm::vcomp(
            TwoCellTerm::rwhisk(TwoCellTerm::Gen2("eta".into()), u.clone()),
            TwoCellTerm::lwhisk(u.clone(), TwoCellTerm::Gen2("eps".into())),
        )
    );
}

#[test]
fn boundary3_of_inverse_generators_swaps_sides() {
    let c = psadj();
    let (src, tgt) = boundary3(&c, &ThreeCellTerm::InvGen3("s".into())).unwrap();
    let (s_src, s_tgt) = boundary3(&c, &ThreeCellTerm::Gen3("s".into())).unwrap();
    assert_eq!(src, s_tgt);
    assert_eq!(tgt, s_src);
}

#[test]
fn boundary3_of_interchanger_follows_the_sliding_square() {
    let c = psadj();
    let eta = TwoCellTerm::Gen2("eta".into());
    let id_x = one("X", &[]);
    let uf = one("X", &["F", "U"]);
    let (src, tgt) = boundary3(&c, &ThreeCellTerm::ichg(eta.clone(), eta.clone())).unwrap();
    // src: (beta > src1(alpha)) then (tgt1(beta) < alpha)
    assert_eq!(
        src,
        TwoCellTerm::vcomp(
            TwoCellTerm::rwhisk(eta.clone(), id_x.clone()),
            TwoCellTerm::lwhisk(uf.clone(), eta.clone()),
        )
    );
    // tgt: (src1(beta) < alpha) then (beta > tgt1(alpha))
    assert_eq!(
        tgt,
        TwoCellTerm::vcomp(
            TwoCellTerm::lwhisk(id_x, eta.clone()),
            TwoCellTerm::rwhisk(eta, uf),
        )
    );
    // Inverse interchanger swaps the two sides.
    let beta = TwoCellTerm::Gen2("eta".into());
    let (isrc, itgt) =
        boundary3(&c, &ThreeCellTerm::inv_ichg(beta.clone(), beta.clone())).unwrap();
    let (fsrc, ftgt) = boundary3(&c, &ThreeCellTerm::ichg(beta.clone(), beta)).unwrap();
    assert_eq!(isrc, ftgt);
    assert_eq!(itgt, fsrc);
}

#[test]
fn vcomp3_requires_matching_interface_up_to_normalization() {
    let c = psadj();
    let s = ThreeCellTerm::Gen3("s".into());
    // s ; s is ill-typed: tgt of s is the triangle, src of s is the identity.
    assert!(boundary3(&c, &ThreeCellTerm::vcomp3(s.clone(), s.clone())).is_err());
    // s ; s^{-1} is fine.
    let ok = ThreeCellTerm::vcomp3(s.clone(), ThreeCellTerm::InvGen3("s".into()));
    let (src, tgt) = boundary3(&c, &ok).unwrap();
    assert_eq!(src, TwoCellTerm::Id2(one("X", &["F"])));
    assert_eq!(tgt, TwoCellTerm::Id2(one("X", &["F"])));
}

#[test]
fn hcomp3_requires_a_shared_one_cell_interface() {
    let c = psadj();
    let id_eta = ThreeCellTerm::Id3(TwoCellTerm::Gen2("eta".into()));
    let us = ThreeCellTerm::lwhisk1(one("A", &["U"]), ThreeCellTerm::Gen3("s".into()));
    let (src, _tgt) = boundary3(&c, &ThreeCellTerm::hcomp3(id_eta.clone(), us)).unwrap();
    // Source pastes eta under U < id2(F)-side of s.
    match src {
        TwoCellTerm::VComp(a, _) => assert_eq!(*a, TwoCellTerm::Gen2("eta".into())),
        other => panic!("expected a vertical composite, got {other:?}"),
    }
    // eta then eta shares no 1-cell interface.
    assert!(boundary3(&c, &ThreeCellTerm::hcomp3(id_eta.clone(), id_eta)).is_err());
}

#[test]
fn invert3_distributes_and_rejects_unflagged_generators() {
    let c = psadj();
    let s = ThreeCellTerm::Gen3("s".into());
    let t = ThreeCellTerm::Gen3("t".into());
    assert_eq!(invert3(&c, &s).unwrap(), ThreeCellTerm::InvGen3("s".into()));
    let v = ThreeCellTerm::vcomp3(s.clone(), ThreeCellTerm::InvGen3("s".into()));
    assert_eq!(
        invert3(&c, &v).unwrap(),
        ThreeCellTerm::vcomp3(s.clone(), ThreeCellTerm::InvGen3("s".into()))
    );
    let eta = TwoCellTerm::Gen2("eta".into());
    assert_eq!(
        invert3(&c, &ThreeCellTerm::ichg(eta.clone(), eta.clone())).unwrap(),
        ThreeCellTerm::inv_ichg(eta.clone(), eta.clone())
    );
    // A non-invertible generator refuses a formal inverse.
    let text = "\
object X
1cell E : X -> X
2cell m : E . E => E
3cell w : (m > E) ; m -> (E < m) ; m
";
    let c2 = graycat::presentation::load_presentation(text).unwrap();
    match invert3(&c2, &ThreeCellTerm::Gen3("w".into())) {
        Err(TypeError::NotInvertible { name }) => assert_eq!(name, "w"),
        other => panic!("expected NotInvertible, got {other:?}"),
    }
    assert_eq!(invert3(&c, &t).unwrap(), ThreeCellTerm::InvGen3("t".into()));
}

#[test]
fn dualization_of_terms_is_involutive() {
    let c = psadj();
    let op = dualize(&c, Duality::Op);
    let co = dualize(&c, Duality::Co);
    let uf = one("X", &["F", "U"]);
    assert_eq!(dual_one(&op, Duality::Op, &dual_one(&c, Duality::Op, &uf).unwrap()).unwrap(), uf);
    let tri = TwoCellTerm::vcomp(
        TwoCellTerm::lwhisk(one("X", &["F"]), TwoCellTerm::Gen2("eta".into())),
        TwoCellTerm::rwhisk(TwoCellTerm::Gen2("eps".into()), one("X", &["F"])),
    );
    assert_eq!(dual_two(&op, Duality::Op, &dual_two(&c, Duality::Op, &tri).unwrap()).unwrap(), tri);
    assert_eq!(dual_two(&co, Duality::Co, &dual_two(&c, Duality::Co, &tri).unwrap()).unwrap(), tri);
    let paste = ThreeCellTerm::vcomp3(
        ThreeCellTerm::Gen3("s".into()),
        ThreeCellTerm::InvGen3("s".into()),
    );
    assert_eq!(
        dual_three(&op, Duality::Op, &dual_three(&c, Duality::Op, &paste).unwrap()).unwrap(),
        paste
    );
    assert_eq!(
        dual_three(&co, Duality::Co, &dual_three(&c, Duality::Co, &paste).unwrap()).unwrap(),
        paste
    );
}

#[test]
fn dualization_commutes_with_boundaries() {
    let c = psadj();
    let op = dualize(&c, Duality::Op);
    let co = dualize(&c, Duality::Co);

    // op reverses 1-cells: boundary endpoints swap.
    let ufu = one("A", &["U", "F", "U"]);
    let (s0, t0) = boundary1(&c, &ufu).unwrap();
    let d = dual_one(&c, Duality::Op, &ufu).unwrap();
    let (s1, t1) = boundary1(&op, &d).unwrap();
    assert_eq!((s1, t1), (t0, s0));

    // op keeps 2-cell direction but dualizes the 1-cell boundaries.
    let ue = TwoCellTerm::lwhisk(one("A", &["U"]), TwoCellTerm::Gen2("eps".into()));
    let (a0, b0) = boundary2(&c, &ue).unwrap();
    let ued = dual_two(&c, Duality::Op, &ue).unwrap();
    let (a1, b1) = boundary2(&op, &ued).unwrap();
    assert_eq!(a1, dual_one(&c, Duality::Op, &a0).unwrap());
    assert_eq!(b1, dual_one(&c, Duality::Op, &b0).unwrap());

    // co swaps 2-cell boundaries and keeps 1-cells.
    let uec = dual_two(&c, Duality::Co, &ue).unwrap();
    let (a2, b2) = boundary2(&co, &uec).unwrap();
    assert_eq!(a2, b0);
    assert_eq!(b2, a0);

    // 3-cells keep direction under both dualities.
    let s = ThreeCellTerm::Gen3("s".into());
    let (p0, q0) = boundary3(&c, &s).unwrap();
    let sd = dual_three(&c, Duality::Op, &s).unwrap();
    let (p1, q1) = boundary3(&op, &sd).unwrap();
    assert_eq!(p1, dual_two(&c, Duality::Op, &p0).unwrap());
    assert_eq!(q1, dual_two(&c, Duality::Op, &q0).unwrap());
}
