use graded_pi::abgroup::AbGroup;
use graded_pi::central::{test_generic, test_generic_product};
use graded_pi::freegr::GradedPoly;
use graded_pi::galg::{AlgebraSpec, Cocycle, GradedAlgebra};
use graded_pi::primeness::{
    build_formanek_p, degree3_exhaustive, regular_counterexample, twisted_counterexample, Conclusion, ElementaryM3,
    PrimenessWitness,
};
use graded_pi::regular::{analyze, Verdict};

fn build(json: &str) -> GradedAlgebra {
    serde_json::from_str::<AlgebraSpec>(json).unwrap().build().unwrap()
}

/// Recomputes the three verdicts of a refuting witness from its printed polynomials.
fn reverify(a: &GradedAlgebra, w: &PrimenessWitness) {
    assert!(w.refutes());
    let f = GradedPoly::parse(&w.f, a.group()).unwrap();
    let g = GradedPoly::parse(&w.g, a.group()).unwrap();
    let (vf, vg) = (test_generic(&f, a).unwrap(), test_generic(&g, a).unwrap());
    let vfg = test_generic_product(&[f, g], a).unwrap();
    assert_eq!(Some(&vf), w.verdict_f.as_ref());
    assert_eq!(Some(&vg), w.verdict_g.as_ref());
    assert_eq!(Some(&vfg), w.verdict_fg.as_ref());
    assert!(vfg.is_proper_central && !(vf.is_proper_central && vg.is_proper_central));
}

#[test]
fn regular_gradings_refute_and_reverify() {
    for (json, nmax) in [
        (r#"{"kind":"pauli","n":2}"#, 6),
        (r#"{"kind":"pauli","n":3}"#, 6),
        (r#"{"kind":"grassmann","k":4}"#, 4),
        (r#"{"kind":"twisted","group":"Z2xZ2","cocycle":"klein"}"#, 6),
    ] {
        let a = build(json);
        let cert = analyze(&a, nmax).unwrap();
        assert!(cert.is_regular(), "{json}");
        let w = regular_counterexample(&a, &cert, None).unwrap();
        reverify(&a, &w);
    }
}

#[test]
fn non_minimal_grading_is_coarsened_first() {
    let a = build(r#"{"kind":"tensor","left":{"kind":"grassmann","k":4},"right":{"kind":"twisted","group":"Z2","cocycle":"trivial"}}"#);
    let cert = analyze(&a, 4).unwrap();
    assert_eq!(cert.minimal, Some(false));
    let w = regular_counterexample(&a, &cert, None).unwrap();
    assert!(w.refutes());
    assert!(w.notes.iter().any(|n| n.contains("coarsening")));
}

#[test]
fn trivial_group_is_inconclusive() {
    let a = build(r#"{"kind":"twisted","group":"trivial","cocycle":"trivial"}"#);
    let cert = analyze(&a, 3).unwrap();
    let w = regular_counterexample(&a, &cert, None).unwrap();
    assert_eq!(w.conclusion, Conclusion::Inconclusive);
}

#[test]
fn non_regular_grading_is_rejected() {
    let a = build(r#"{"kind":"elementary","group":"Z2","tuple":["0","1"]}"#);
    let cert = analyze(&a, 4).unwrap();
    assert!(matches!(cert.verdict, Verdict::NotRegular { .. }));
    assert!(regular_counterexample(&a, &cert, None).is_err());
}

#[test]
fn twisted_product_is_central_only_for_r_one() {
    let alpha = Cocycle::klein_standard();
    let g = alpha.group().clone();
    let q = g.el(&[1, 1]);
    let one = twisted_counterexample(&alpha, 1, &[g.zero()], Some(&q)).unwrap();
    assert!(one.witness.refutes());
    assert!(one.c.is_minus_one());
    let two = twisted_counterexample(&alpha, 2, &[g.zero(), g.el(&[1, 0])], Some(&q)).unwrap();
    assert!(two.x_q_noncentral && two.product_is_x0);
    assert!(!two.witness.verdict_fg.unwrap().is_central);
}

#[test]
fn witness_json_round_trip() {
    let a = build(r#"{"kind":"pauli","n":2}"#);
    let w = regular_counterexample(&a, &analyze(&a, 4).unwrap(), None).unwrap();
    let back: PrimenessWitness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(back, w);
}

#[test]
fn numeric_instance_on_other_groups() {
    for (orders, g3) in [(vec![2], vec![1]), (vec![4], vec![1]), (vec![2, 2], vec![0, 1])] {
        let group = AbGroup::new(orders).unwrap();
        let r = ElementaryM3::new(&group, group.zero(), group.el(&g3)).unwrap();
        let fp = build_formanek_p(&r).unwrap();
        assert_eq!(fp.p.homogeneous_degree(), Some(group.zero()));
        let v = fp.evaluate(&r, &r.diag([0, 1, 2]), [&r.e(1, 3), &r.e(3, 2), &r.e(2, 1)]).unwrap();
        assert_eq!(v, r.diag([4, 4, -4]), "{group}");
    }
}

#[test]
fn degree3_over_z4_and_z2() {
    let z4 = AbGroup::cyclic(4);
    let r = ElementaryM3::new(&z4, z4.el(&[1]), z4.el(&[2])).unwrap();
    let rep = degree3_exhaustive(&r).unwrap();
    assert!(rep.no_proper_central);
    assert!(rep.remark.unwrap().pattern_holds);
    let z2 = AbGroup::cyclic(2);
    let edge = ElementaryM3::new(&z2, z2.zero(), z2.el(&[1])).unwrap();
    let rep = degree3_exhaustive(&edge).unwrap();
    assert!(rep.no_proper_central && rep.remark.is_none() && !rep.notes.is_empty());
}
