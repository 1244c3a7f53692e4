use std::collections::BTreeMap;

use glblab::gflinalg::FieldCtx;
use glblab::ipfamily::*;
use glblab::measures::{characteristic_measure, CentralMeasure};
use glblab::rational::{ratio, Rational};
use glblab::symfun::{GroundParams, ThomaSpec};
use num_traits::One;

fn f(q: u32) -> std::sync::Arc<FieldCtx> {
    FieldCtx::new(q).unwrap()
}

#[test]
fn gl_level_sizes() {
    let l = build_gl_ip_level(1, &f(2)).unwrap();
    assert_eq!(l.upper.order(), 6);
    assert_eq!(l.p.len(), 2);
    assert_eq!(l.kernel.len(), 2);
    assert_eq!(l.lower.order(), 1);
    let l = build_gl_ip_level(1, &f(3)).unwrap();
    assert_eq!(l.kernel.len(), 6);
    assert_eq!(l.p.len(), l.lower.order() * l.kernel.len());
    let l = build_gl_ip_level(2, &f(2)).unwrap();
    assert_eq!((l.upper.order(), l.lower.order(), l.kernel.len()), (168, 6, 4));
}

#[test]
fn affine_level_sizes() {
    assert_eq!(build_affine_ip_level(1, &f(2)).unwrap().kernel.len(), 2);
    let l = build_affine_ip_level(1, &f(3)).unwrap();
    assert_eq!(l.kernel.len(), 3);
    let g = build_gl_ip_level(1, &f(3)).unwrap();
    for (x, a) in l.p.iter().zip(&l.pi) {
        assert_eq!(g.pi_of(*x), Some(*a));
    }
}

#[test]
fn wreath_level_sizes() {
    let z2 = FiniteGroupTable::cyclic(2).unwrap();
    let w = build_wreath_ip_level(1, &z2).unwrap();
    assert_eq!((w.level.upper.order(), w.level.p.len(), w.level.kernel.len()), (8, 4, 2));
    let t = FiniteGroupTable::trivial();
    for m in 1..=3 {
        let w = build_wreath_ip_level(m, &t).unwrap();
        assert_eq!(w.level.kernel.len(), 1);
        assert_eq!(w.level.upper.order(), (1..=m + 1).product::<usize>());
    }
}

#[test]
fn convolution_basics() {
    let g = FiniteGroupTable::cyclic(5).unwrap();
    let h = FiniteGroupTable::cyclic(5).unwrap();
    let a = GroupAlgElem::delta(&g, 2);
    let b = GroupAlgElem::delta(&g, 4);
    assert_eq!(convolve(&a, &b, &g).unwrap(), GroupAlgElem::delta(&g, 1));
    assert_eq!(convolve(&a, &GroupAlgElem::unit(&g), &g).unwrap(), a);
    assert!(convolve(&a, &GroupAlgElem::delta(&h, 1), &g).is_err());
    // anti-automorphism on the non-abelian group of order 6
    let s3 = build_gl_ip_level(1, &f(2)).unwrap().upper;
    let x = GroupAlgElem { group: s3.id(), coeffs: BTreeMap::from([(0, ratio(1, 2)), (3, ratio(-2, 3))]) };
    let y = GroupAlgElem { group: s3.id(), coeffs: BTreeMap::from([(1, ratio(5, 1)), (4, ratio(1, 7)), (5, ratio(1, 1))]) };
    let s = s3.as_ref();
    let lhs = involution(&convolve(&x, &y, s).unwrap(), s).unwrap();
    let rhs = convolve(&involution(&y, s).unwrap(), &involution(&x, s).unwrap(), s).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn embedding_gl_and_affine() {
    for q in [2, 3] {
        for m in 1..=2 {
            let v = check_embedding(&build_gl_ip_level(m, &f(q)).unwrap()).unwrap();
            assert!(v.passed(), "gl m={m} q={q}: {v:?}");
            let v = check_embedding(&build_affine_ip_level(m, &f(q)).unwrap()).unwrap();
            assert!(v.passed(), "affine m={m} q={q}: {v:?}");
        }
    }
}

#[test]
fn embedding_wreath() {
    for h in [FiniteGroupTable::cyclic(2).unwrap(), FiniteGroupTable::cyclic(3).unwrap()] {
        for m in 1..=2 {
            let w = build_wreath_ip_level(m, &h).unwrap();
            assert!(check_embedding(&w.level).unwrap().passed());
        }
    }
}

#[test]
fn flag_induction() {
    for (m, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let v = flag_induction_check(m, &f(q)).unwrap();
        assert!(v.passed, "{v:?}");
        let total: usize = v.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, build_gl_ip_level(m, &f(q)).unwrap().upper.order());
    }
}

#[test]
fn de_finetti() {
    let z2 = FiniteGroupTable::cyclic(2).unwrap();
    assert!(de_finetti_central_check(3, &z2, &[ratio(1, 2), ratio(1, 2)]).unwrap().central);
    assert!(de_finetti_central_check(3, &z2, &[ratio(3, 4), ratio(1, 4)]).unwrap().central);
    let skew = |v: &[usize]| if v == [1, 0, 0] { ratio(1, 4) } else { ratio(3, 28) };
    let verdict = is_g_central(3, &z2, &skew).unwrap();
    assert!(!verdict.central);
    assert!(verdict.witness.is_some());
    assert!(de_finetti_central_check(3, &z2, &[ratio(1, 2), ratio(1, 3)]).is_err());
    let z3 = FiniteGroupTable::cyclic(3).unwrap();
    assert!(de_finetti_central_check(2, &z3, &[ratio(1, 2), ratio(1, 3), ratio(1, 6)]).unwrap().central);
}

#[test]
fn coherence_bridge() {
    let ctx = f(2);
    let g = GroundParams::from_int(2).unwrap();
    let haar = CentralMeasure::haar(g.clone());
    let spec = ThomaSpec::atoms(&[ratio(1, 2)], &[ratio(1, 2)]).unwrap();
    let meas = characteristic_measure(&spec, &g).unwrap();
    for n in 0..=3 {
        assert!(unitriangular_coherence_bridge(&haar, n, &ctx).unwrap().passed);
        assert!(unitriangular_coherence_bridge(&meas, n, &ctx).unwrap().passed);
    }
    let bad = CentralMeasure::haar(g);
    bad.level(3).unwrap();
    bad.insert_override(&glblab::Partition::row(3), Rational::one());
    assert!(!unitriangular_coherence_bridge(&bad, 2, &ctx).unwrap().passed);
}
