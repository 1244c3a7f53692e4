use std::collections::HashMap;

use glblab::partitions::{enumerate_partitions, enumerate_ssyt, Partition};
use glblab::rational::{int, pow, ratio, to_f64, Rational};
use glblab::symfun::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn charge_examples() {
    for n in 1..=6 {
        let col = enumerate_ssyt(&Partition::column(n), &Partition::column(n)).unwrap();
        assert_eq!(col.len(), 1);
        assert_eq!(charge(&col[0]).unwrap(), 0);
        let row = enumerate_ssyt(&Partition::row(n), &Partition::column(n)).unwrap();
        assert_eq!(charge(&row[0]).unwrap(), n * (n - 1) / 2);
    }
    let mut c: Vec<usize> =
        enumerate_ssyt(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap().iter().map(|t| charge(t).unwrap()).collect();
    c.sort();
    assert_eq!(c, vec![1, 2]);
}

#[test]
fn kostka_examples() {
    let k = kostka_numbers(3).unwrap();
    assert_eq!(k.data[0][2], int(1));
    assert_eq!(k.data[1][2], int(2));
    for n in 1..=6 {
        let k = kostka_numbers(n).unwrap();
        for i in 0..k.n {
            assert_eq!(k.data[i][i], int(1));
        }
    }
}

#[test]
fn kostka_foulkes_one_row_and_t_one() {
    let t = ratio(1, 3);
    for n in 1..=6 {
        let kf = kostka_foulkes(n, &t).unwrap();
        for (j, rho) in enumerate_partitions(n).unwrap().iter().enumerate() {
            assert_eq!(kf.data[0][j], pow(&t, rho.n_stat() as i64));
        }
        assert_eq!(kostka_foulkes(n, &int(1)).unwrap(), kostka_numbers(n).unwrap());
    }
    let kf = kostka_foulkes(3, &ratio(1, 2)).unwrap();
    assert_eq!(kf.data[2][2], int(1));
    // K_{(2,1),(1^3)}(t) = t + t^2
    assert_eq!(kf.data[1][2], ratio(1, 2) + ratio(1, 4));
}

#[test]
fn kostka_foulkes_unitriangular_in_dominance() {
    let t = ratio(2, 5);
    for n in 1..=8 {
        let list = enumerate_partitions(n).unwrap();
        let kf = kostka_foulkes(n, &t).unwrap();
        for (i, lam) in list.iter().enumerate() {
            assert_eq!(kf.data[i][i], int(1));
            for (j, mu) in list.iter().enumerate() {
                if !lam.dominates(mu) {
                    assert!(kf.data[i][j].is_zero(), "{lam} {mu}");
                }
            }
        }
    }
}

type Poly = HashMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, n, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out.into_iter()
        .map(|w| {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            let s = if inv % 2 == 0 { 1 } else { -1 };
            (w, s)
        })
        .collect()
}

/// Schur coefficients of P_λ(x_1..x_n; t), n = |λ|, by explicit
/// symmetrization of x^λ Π_{i<j}(x_i − t x_j).
fn hl_p_by_symmetrization(lam: &Partition, t: &Rational) -> HashMap<Partition, Rational> {
    let n = lam.size();
    let mut f: Poly = Poly::new();
    let mut e0 = vec![0u32; n];
    for i in 0..n {
        e0[i] = lam.part(i) as u32;
    }
    f.insert(e0, Rational::one());
    for i in 0..n {
        for j in i + 1..n {
            let mut fac = Poly::new();
            let mut ei = vec![0u32; n];
            ei[i] = 1;
            let mut ej = vec![0u32; n];
            ej[j] = 1;
            fac.insert(ei, Rational::one());
            fac.insert(ej, -t.clone());
            f = poly_mul(&f, &fac);
        }
    }
    let mut a = Poly::new();
    for (w, s) in permutations(n) {
        for (e, c) in &f {
            let mut we = vec![0u32; n];
            for k in 0..n {
                we[w[k]] = e[k];
            }
            *a.entry(we).or_insert_with(Rational::zero) += c * Rational::from_integer(s.into());
        }
    }
    // v_λ(t)
    let one = Rational::one();
    let mut mult = lam.multiplicities();
    mult.push(n - lam.len());
    let mut v = Rational::one();
    for m in mult {
        for j in 1..=m {
            v *= (&one - pow(t, j as i64)) / (&one - t);
        }
    }
    let mut out = HashMap::new();
    for (e, c) in a {
        if c.is_zero() || !e.windows(2).all(|w| w[0] > w[1]) {
            continue;
        }
        let kappa: Vec<usize> = e.iter().enumerate().map(|(i, &x)| x as usize - (n - 1 - i)).filter(|&x| x > 0).collect();
        out.insert(Partition::new(kappa).unwrap(), c / &v);
    }
    out
}

#[test]
fn hall_littlewood_matches_symmetrization() {
    for t in [ratio(1, 2), ratio(1, 3)] {
        for n in 1..=5 {
            let list = enumerate_partitions(n).unwrap();
            let kf = kostka_foulkes(n, &t).unwrap();
            let kf_inv = kf.inverse().unwrap();
            let (hl_p, _, _) = hl_transition(n, &t).unwrap();
            let kostka = kostka_numbers(n).unwrap();
            for (i, lam) in list.iter().enumerate() {
                let oracle = hl_p_by_symmetrization(lam, &t);
                for (j, kappa) in list.iter().enumerate() {
                    let o = oracle.get(kappa).cloned().unwrap_or_else(Rational::zero);
                    assert_eq!(kf_inv.data[i][j], o, "P_{lam} at s_{kappa}, t = {t}");
                }
                // same row expressed in monomials
                let mono: Vec<Rational> = (0..list.len())
                    .map(|j| (0..list.len()).map(|k| &kf_inv.data[i][k] * &kostka.data[k][j]).sum())
                    .collect();
                assert_eq!(mono, hl_p.data[i]);
            }
        }
    }
}

#[test]
fn hall_littlewood_examples() {
    let t = ratio(1, 2);
    for n in 1..=6 {
        let col = Partition::column(n);
        let pm = SymFuncVec::hl_p(&col, &t).to_monomial().unwrap();
        assert_eq!(pm, SymFuncVec::monomial(&col));
    }
    let q1 = SymFuncVec::hl_q(&p(&[1]), &t).to_monomial().unwrap();
    assert_eq!(q1.coeff(&p(&[1])), ratio(1, 2));
    for n in 1..=5 {
        for lam in enumerate_partitions(n).unwrap() {
            let at0 = SymFuncVec::hl_p(&lam, &int(0)).to_monomial().unwrap();
            assert_eq!(at0, SymFuncVec::schur(&lam).to_monomial().unwrap());
        }
    }
    // P_(2) = m_2 + (1 − t) m_11
    let p2 = SymFuncVec::hl_p(&p(&[2]), &t).to_monomial().unwrap();
    assert_eq!(p2.coeff(&p(&[2])), int(1));
    assert_eq!(p2.coeff(&p(&[1, 1])), ratio(1, 2));
}

fn random_atom_spec(seed: u64) -> ThomaSpec {
    // small deterministic family of normalized specs
    let a = ratio((seed % 5 + 1) as i64, 12);
    let mut b = ratio((seed % 3 + 1) as i64, 24);
    let mut c = ratio(((seed / 3) % 4 + 1) as i64, 30);
    let used = &a + &b + &c;
    let rest = Rational::one() - &used;
    let mut alphas = vec![rest, a];
    alphas.sort_by(|x, y| y.cmp(x));
    if b < c {
        std::mem::swap(&mut b, &mut c);
    }
    if seed % 2 == 0 {
        ThomaSpec::atoms(&alphas, &[b, c]).unwrap()
    } else {
        ThomaSpec::atoms(&alphas, &[b]).unwrap()
    }
}

#[test]
fn power_sum_expansions() {
    let s11 = SymFuncVec::schur(&p(&[1, 1])).to_power_sums().unwrap();
    assert_eq!(s11.coeff(&p(&[1, 1])), ratio(1, 2));
    assert_eq!(s11.coeff(&p(&[2])), ratio(-1, 2));
    let m11 = SymFuncVec::monomial(&p(&[1, 1])).to_power_sums().unwrap();
    assert_eq!(m11, s11);
    let p3 = SymFuncVec::power(&p(&[3])).to_power_sums().unwrap();
    assert_eq!(p3, SymFuncVec::power(&p(&[3])));
    let t = ratio(1, 2);
    for seed in 0..3 {
        let spec = random_atom_spec(seed);
        let at = spec.at(&t);
        let lhs = evaluate(&SymFuncVec::schur(&p(&[1, 1])), &at).unwrap();
        let p1 = at.power_sum(1);
        let p2 = at.power_sum(2);
        assert_eq!(lhs, (&p1 * &p1 - p2) / int(2));
    }
}

#[test]
fn power_sum_value_examples() {
    let t = ratio(1, 2);
    for seed in 0..5 {
        assert_eq!(power_sum_value(&random_atom_spec(seed), &t, 1), int(1));
    }
    let geo = ThomaSpec::haar();
    let v = power_sum_value(&geo, &t, 2);
    assert_eq!(v, ratio(1, 3));
    let approx: f64 = (0..40).map(|j| 0.5f64.powi(j + 1).powi(2)).sum();
    assert!((to_f64(&v) - approx).abs() < 1e-15);
    let b = ratio(2, 7);
    let spec = ThomaSpec::atoms(&[Rational::one() - &b], &[b.clone()]).unwrap();
    let only_alpha = pow(&(Rational::one() - &b), 2);
    assert_eq!(power_sum_value(&spec, &t, 2), only_alpha - &b * &b);
}

#[test]
fn evaluate_examples() {
    let t = ratio(1, 2);
    let alpha1 = ThomaSpec::trivial();
    let beta1 = ThomaSpec::atoms(&[], &[int(1)]).unwrap();
    for n in 1..=6 {
        assert_eq!(evaluate(&SymFuncVec::schur(&Partition::row(n)), &alpha1.at(&t)).unwrap(), int(1));
    }
    assert_eq!(evaluate(&SymFuncVec::schur(&p(&[1, 1])), &alpha1.at(&t)).unwrap(), int(0));
    assert_eq!(evaluate(&SymFuncVec::schur(&p(&[1, 1])), &beta1.at(&t)).unwrap(), int(1));
}

/// m_μ at an explicit list of variables by a DP over variables: each
/// variable takes at most one part; equal parts are unordered.
fn monomial_at_variables_f64(mu: &Partition, xs: &[f64]) -> f64 {
    let mult = mu.multiplicities();
    let distinct: Vec<usize> = (0..mult.len()).filter(|&i| mult[i] > 0).collect();
    let dims: Vec<usize> = distinct.iter().map(|&i| mult[i] + 1).collect();
    let size: usize = dims.iter().product();
    let mut dp = vec![0f64; size];
    dp[0] = 1.0;
    let encode = |st: &[usize]| st.iter().zip(&dims).rev().fold(0, |acc, (s, d)| acc * d + s);
    let decode = |mut k: usize| {
        dims.iter()
            .map(|d| {
                let v = k % d;
                k /= d;
                v
            })
            .collect::<Vec<_>>()
    };
    for &x in xs {
        let mut next = dp.clone();
        for s in 0..size {
            if dp[s] == 0.0 {
                continue;
            }
            let st = decode(s);
            for (k, &pi) in distinct.iter().enumerate() {
                if st[k] < mult[pi] {
                    let mut ns = st.clone();
                    ns[k] += 1;
                    next[encode(&ns)] += dp[s] * x.powi((pi + 1) as i32);
                }
            }
        }
        dp = next;
    }
    dp[size - 1]
}

fn monomial_at_variables_exact(mu: &Partition, xs: &[Rational]) -> Rational {
    let parts = mu.parts();
    fn rec(parts: &[usize], xs: &[Rational], used: &mut Vec<bool>, acc: Rational, out: &mut Rational) {
        let Some((&first, rest)) = parts.split_first() else {
            *out += acc;
            return;
        };
        for i in 0..xs.len() {
            if !used[i] {
                used[i] = true;
                rec(rest, xs, used, &acc * pow(&xs[i], first as i64), out);
                used[i] = false;
            }
        }
    }
    let mut out = Rational::zero();
    rec(parts, xs, &mut vec![false; xs.len()], Rational::one(), &mut out);
    let sym: usize = mu.multiplicities().iter().map(|&m| (1..=m).product::<usize>()).product();
    out / Rational::from_integer(sym.into())
}

#[test]
fn specialization_consistency() {
    let t = ratio(1, 2);
    for seed in 0..20u64 {
        // α-only specs: two atoms, optionally one geometric family
        let x = ratio((seed % 7 + 2) as i64, 20);
        let y = ratio((seed % 3 + 1) as i64, 20);
        let (a1, a2) = if x >= y { (x, y) } else { (y, x) };
        let rest = Rational::one() - &a1 - &a2;
        let geometric = seed % 2 == 0;
        let spec = if geometric {
            ThomaSpec::new(
                vec![ThomaEntry::atom(a1.clone()), ThomaEntry::atom(a2.clone()), ThomaEntry::geometric(rest.clone())],
                vec![],
                Rational::zero(),
            )
            .unwrap()
        } else {
            let mut v = vec![a1.clone(), a2.clone(), rest.clone()];
            v.sort_by(|x, y| y.cmp(x));
            ThomaSpec::atoms(&v, &[]).unwrap()
        };
        let at = spec.at(&t);
        for n in 1..=5 {
            for lam in enumerate_partitions(n).unwrap() {
                let m_val = evaluate(&SymFuncVec::monomial(&lam), &at).unwrap();
                let s_val = evaluate(&SymFuncVec::schur(&lam), &at).unwrap();
                let kost = kostka_numbers(n).unwrap();
                let list = enumerate_partitions(n).unwrap();
                let li = list.iter().position(|x| x == &lam).unwrap();
                if geometric {
                    let mut xs = vec![to_f64(&a1), to_f64(&a2)];
                    let r = to_f64(&rest);
                    xs.extend((0..60).map(|j| 0.5 * 0.5f64.powi(j) * r));
                    let m_trunc = monomial_at_variables_f64(&lam, &xs);
                    assert!((to_f64(&m_val) - m_trunc).abs() < 1e-12, "m_{lam}");
                    let s_trunc: f64 = list
                        .iter()
                        .enumerate()
                        .map(|(j, mu)| to_f64(&kost.data[li][j]) * monomial_at_variables_f64(mu, &xs))
                        .sum();
                    assert!((to_f64(&s_val) - s_trunc).abs() < 1e-12, "s_{lam}");
                } else {
                    let xs = vec![a1.clone(), a2.clone(), rest.clone()];
                    assert_eq!(m_val, monomial_at_variables_exact(&lam, &xs));
                    let s_exact: Rational = list
                        .iter()
                        .enumerate()
                        .map(|(j, mu)| &kost.data[li][j] * monomial_at_variables_exact(mu, &xs))
                        .sum();
                    assert_eq!(s_val, s_exact);
                }
            }
        }
    }
}

#[test]
fn beta_side_is_conjugate() {
    let t = ratio(1, 3);
    let vals = [ratio(1, 2), ratio(1, 3), ratio(1, 6)];
    let a = ThomaSpec::atoms(&vals, &[]).unwrap();
    let b = ThomaSpec::atoms(&[], &vals).unwrap();
    for n in 1..=6 {
        for lam in enumerate_partitions(n).unwrap() {
            let x = evaluate(&SymFuncVec::schur(&lam), &a.at(&t)).unwrap();
            let y = evaluate(&SymFuncVec::schur(&lam.conjugate()), &b.at(&t)).unwrap();
            assert_eq!(x, y);
        }
    }
}

#[test]
fn geometric_merge_examples() {
    let t = ratio(1, 2);
    let merged = ThomaSpec::trivial().geometric_merge().unwrap();
    assert_eq!(merged, ThomaSpec::haar());
    let e = expected_frequency_multiset(&ThomaSpec::trivial(), &t, 4).unwrap();
    assert_eq!(e.rows, vec![ratio(1, 2), ratio(1, 4), ratio(1, 8), ratio(1, 16)]);
    let empty = ThomaSpec::atoms(&[], &[int(1)]).unwrap();
    assert_eq!(empty.geometric_merge().unwrap(), empty);
    let two = ThomaSpec::atoms(&[ratio(3, 5), ratio(2, 5)], &[]).unwrap();
    let e = expected_frequency_multiset(&two, &t, 5).unwrap();
    assert_eq!(e.rows, vec![ratio(3, 10), ratio(1, 5), ratio(3, 20), ratio(1, 10), ratio(3, 40)]);
    assert!(expected_frequency_multiset(&empty, &t, 5).unwrap().rows.is_empty());
    for seed in 0..10 {
        let s = random_atom_spec(seed);
        assert_eq!(s.geometric_merge().unwrap().alpha_mass(), s.alpha_mass());
    }
}

#[test]
fn power_substitution_examples() {
    let t = ratio(1, 2);
    let a = ratio(3, 5);
    let b = ratio(2, 5);
    let spec = ThomaSpec::atoms(&[a.clone()], &[b.clone()]).unwrap();
    let at = spec.at(&t);
    let e1 = power_substitution(&at, 1);
    for m in 1..6 {
        assert_eq!(e1.power_sum(m), at.power_sum(m));
    }
    let e2 = power_substitution(&at, 2);
    assert_eq!(e2.power_sum(1), &a * &a - &b * &b);
    for d in [2i64, 3] {
        let x = ratio(2, 7);
        let lhs = pow(&int(-1), d + 1) * pow(&x, d);
        let rhs = -pow(&-x.clone(), d);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn r_function_examples() {
    let t = ratio(1, 2);
    for n in 1..=6 {
        for rho in enumerate_partitions(n).unwrap() {
            assert_eq!(r_function(&rho, &ThomaSpec::trivial(), &t).unwrap(), int(1));
        }
    }
    for seed in 0..5 {
        assert_eq!(r_function(&p(&[1]), &random_atom_spec(seed), &t).unwrap(), int(1));
    }
    let beta = ThomaSpec::atoms(&[], &[int(1)]).unwrap();
    assert_eq!(r_function(&p(&[1, 1]), &beta, &t).unwrap(), int(2));
}

#[test]
fn r_function_sparse_route_agrees() {
    let t = ratio(1, 3);
    for seed in 0..4 {
        let spec = random_atom_spec(seed);
        for n in 1..=7 {
            for rho in enumerate_partitions(n).unwrap() {
                let dense = r_function_dense(&rho, &spec.at(&t), &t).unwrap();
                let sparse = r_function_sparse(&rho, &spec.at(&t), &t, spec.hook_bound()).unwrap();
                assert_eq!(dense, sparse);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn power_substitution_law(a in 1i64..9, b in 1i64..9, d in 1usize..5) {
        let total = a + b + 3;
        let spec = ThomaSpec::atoms(&[ratio(a.max(b), total), ratio(a.min(b), total)], &[ratio(3, total)]).unwrap();
        let at = spec.at(&ratio(1, 3));
        let e = power_substitution(&at, d);
        for m in 1..=(12 / d) {
            prop_assert_eq!(e.power_sum(m), at.power_sum(m * d));
        }
    }

    #[test]
    fn merge_preserves_mass(a in 1i64..20, b in 1i64..20) {
        let total = a + b;
        let spec = ThomaSpec::atoms(&[ratio(a.max(b), total), ratio(a.min(b), total)], &[]).unwrap();
        let merged = spec.geometric_merge().unwrap();
        prop_assert_eq!(merged.alpha_mass(), spec.alpha_mass());
        prop_assert_eq!(power_sum_value(&merged, &ratio(1, 2), 1), int(1));
    }
}
