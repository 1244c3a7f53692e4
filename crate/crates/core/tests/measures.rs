use glblab::gflinalg::{count_unitriangular_by_type, FieldCtx};
use glblab::measures::*;
use glblab::partitions::enumerate_partitions;
use glblab::rational::{int, pow, ratio, Rational};
use glblab::symfun::{GroundParams, ThomaSpec};
use glblab::Partition;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn g(q: u32) -> GroundParams {
    GroundParams::from_int(q).unwrap()
}

fn atoms(a: &[(i64, i64)], b: &[(i64, i64)]) -> ThomaSpec {
    let f = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| ratio(x, y)).collect::<Vec<_>>();
    ThomaSpec::atoms(&f(a), &f(b)).unwrap()
}

fn specs() -> Vec<ThomaSpec> {
    vec![
        atoms(&[(1, 1)], &[]),
        atoms(&[(1, 2), (1, 2)], &[]),
        atoms(&[(2, 3), (1, 3)], &[]),
        atoms(&[], &[(1, 1)]),
        atoms(&[(1, 2)], &[(1, 2)]),
        atoms(&[(3, 5), (1, 5)], &[(1, 5)]),
    ]
}

#[test]
fn haar_cylinders() {
    for q in [2u32, 3] {
        let m = CentralMeasure::haar(g(q));
        for n in 0..=6 {
            for rho in enumerate_partitions(n).unwrap() {
                assert_eq!(m.cylinder_prob(&rho).unwrap(), pow(&ratio(1, q as i64), (n * n.saturating_sub(1) / 2) as i64));
            }
        }
    }
    let m = CentralMeasure::haar(g(2));
    assert_eq!(m.cylinder_prob(&p(&[2])).unwrap(), ratio(1, 2));
    assert_eq!(m.cylinder_prob(&p(&[1, 1])).unwrap(), ratio(1, 2));
}

#[test]
fn level_one_is_one() {
    for s in specs() {
        for q in [2, 3, 5] {
            let m = characteristic_measure(&s, &g(q)).unwrap();
            assert!(m.cylinder_prob(&p(&[1])).unwrap().is_one());
            assert!(characteristic_cylinder_via_r(&s, &p(&[1]), &g(q)).unwrap().is_one());
        }
    }
}

#[test]
fn trivial_character_gives_haar() {
    let m = characteristic_measure(&atoms(&[(1, 1)], &[]), &g(2)).unwrap();
    let haar = CentralMeasure::haar(g(2));
    for n in 1..=5 {
        for rho in enumerate_partitions(n).unwrap() {
            assert_eq!(m.cylinder_prob(&rho).unwrap(), haar.cylinder_prob(&rho).unwrap());
        }
    }
}

#[test]
fn two_routes_agree() {
    for s in specs() {
        for q in [2, 3] {
            let m = characteristic_measure(&s, &g(q)).unwrap();
            for n in 1..=5 {
                for rho in enumerate_partitions(n).unwrap() {
                    assert_eq!(
                        m.cylinder_prob(&rho).unwrap(),
                        characteristic_cylinder_via_r(&s, &rho, &g(q)).unwrap(),
                        "{rho} q={q}"
                    );
                }
            }
        }
    }
}

#[test]
fn coherence_and_normalization() {
    let ctx = FieldCtx::new(2).unwrap();
    let haar = CentralMeasure::haar(g(2));
    assert!(check_coherence(&haar, 6, &ctx).unwrap().passed());
    let merged = characteristic_measure(&atoms(&[(2, 3), (1, 3)], &[]), &g(2)).unwrap();
    let r = check_coherence(&merged, 6, &ctx).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, (0..6).map(|n| enumerate_partitions(n).unwrap().len()).sum::<usize>());
    assert!(check_normalization(&haar, 4, &ctx).unwrap().passed());
    let half = characteristic_measure(&atoms(&[(1, 2), (1, 2)], &[]), &g(2)).unwrap();
    assert!(check_normalization(&half, 4, &ctx).unwrap().passed());
    for s in specs() {
        let m = characteristic_measure(&s, &g(2)).unwrap();
        assert!(check_normalization(&m, 1, &ctx).unwrap().total.is_one());
        assert!(check_normalization(&m, 0, &ctx).unwrap().total.is_one());
    }
}

#[test]
fn perturbation_is_reported() {
    let ctx = FieldCtx::new(2).unwrap();
    let haar = CentralMeasure::haar(g(2));
    haar.level(2).unwrap();
    haar.insert_override(&p(&[2]), ratio(3, 4));
    let r = check_coherence(&haar, 3, &ctx).unwrap();
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.rho == p(&[1])));
    assert!(r.violations.iter().all(|v| v.rho.size() <= 2));
}

#[test]
fn closed_form_source_agrees() {
    let ctx = FieldCtx::new(3).unwrap();
    let m = characteristic_measure(&atoms(&[(3, 5), (1, 5)], &[(1, 5)]), &g(3)).unwrap();
    let a = check_coherence_with(&m, 5, &ctx, CountSource::BruteForce).unwrap();
    let b = check_coherence_with(&m, 5, &ctx, CountSource::ClosedForm).unwrap();
    assert!(a.passed() && b.passed());
}

#[test]
fn path_counts_match_census() {
    for (n, q) in [(4, 2u32), (5, 2), (3, 3), (4, 3)] {
        let ctx = FieldCtx::new(q).unwrap();
        assert_eq!(unitriangular_counts_from_paths(n, &BigInt::from(q)).unwrap(), count_unitriangular_by_type(n, &ctx).unwrap());
    }
}

#[test]
fn probabilities_in_unit_interval() {
    for s in specs() {
        let m = characteristic_measure(&s, &g(2)).unwrap();
        for n in 0..=6 {
            for (_, v) in m.level(n).unwrap() {
                assert!(v >= Rational::zero() && v <= Rational::one());
            }
        }
    }
}

#[test]
fn shipped_specs_are_distinct() {
    let ss = specs();
    for i in 0..ss.len() {
        for j in i + 1..ss.len() {
            let a = characteristic_measure(&ss[i], &g(2)).unwrap();
            let b = characteristic_measure(&ss[j], &g(2)).unwrap();
            let differs = (1..=6).any(|n| a.level(n).unwrap() != b.level(n).unwrap());
            assert!(differs, "{i} vs {j}");
        }
    }
}

#[test]
fn field_mismatch_rejected() {
    let ctx = FieldCtx::new(3).unwrap();
    assert!(check_coherence(&CentralMeasure::haar(g(2)), 3, &ctx).is_err());
}

#[test]
fn convention_names_round_trip() {
    for c in Convention::ALL {
        assert_eq!(c.name().parse::<Convention>().unwrap(), c);
    }
    assert!("expand-gamma".parse::<Convention>().is_err());
    let _ = int(0);
}

#[test]
fn pure_beta_measure_sits_on_identity() {
    for q in [2, 3] {
        let m = characteristic_measure(&atoms(&[], &[(1, 1)]), &g(q)).unwrap();
        for n in 1..=5 {
            for (rho, v) in m.level(n).unwrap() {
                let expect = if rho == Partition::column(n) { Rational::one() } else { Rational::zero() };
                assert_eq!(v, expect, "{rho}");
            }
        }
    }
}
