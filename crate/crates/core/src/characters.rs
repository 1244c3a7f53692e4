//! Unipotent and induced character values of GL_n(F_q) and values of the
//! characters of the inductive limit group.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gflinalg::{canonical_unipotent, count_fixed_flags, ConjClassType, FieldCtx, FlagType, MatGF};
use crate::partitions::{check_degree, factorial, partition_index, Partition};
use crate::rational::{pow, RatMatrix, Rational};
use crate::symfun::{
    base_tables, dense_degree_limit, monomial_values, power_substitution, r_function, r_function_dense,
    r_function_sparse, schur_values, transitions, GroundParams, ThomaSpec,
};

fn q_int(n: i64, q: &Rational) -> Rational {
    pow(q, n) - Rational::one()
}

/// q^{n(λ)} Π_{j ≤ n}(q^j − 1) / Π_{b ∈ λ}(q^{h(b)} − 1).
pub fn unipotent_dim(lam: &Partition, q: &Rational) -> Rational {
    let num: Rational = (1..=lam.size() as i64).map(|j| q_int(j, q)).product();
    let den: Rational = lam.hook_lengths().into_iter().map(|h| q_int(h as i64, q)).product();
    pow(q, lam.n_stat() as i64) * num / den
}

/// n! / Π h(b).
pub fn sym_dim(lam: &Partition) -> BigInt {
    let den: BigInt = lam.hook_lengths().into_iter().map(BigInt::from).product();
    factorial(lam.size()) / den
}

fn q_factorial(n: usize, q: &Rational) -> Rational {
    let one = Rational::one();
    (1..=n as i64).map(|j| q_int(j, q) / (q - &one)).product()
}

/// Gaussian multinomial [n]! / Π [μ_j]!.
pub fn induced_dim(mu: &FlagType, q: &Rational) -> Rational {
    let den: Rational = mu.parts().iter().map(|&k| q_factorial(k, q)).product();
    q_factorial(mu.size(), q) / den
}

fn same_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch(format!("degrees {a} and {b} differ")));
    }
    Ok(())
}

/// Matrix X with X[λ][ρ] = q^{n(ρ)} K_{λρ}(1/q), in reverse-lex index order.
pub fn chi_matrix(n: usize, q: &Rational) -> Result<RatMatrix> {
    check_degree(n)?;
    let t = q.recip();
    let tr = transitions(n, &t)?;
    let mut x = tr.kostka_foulkes.clone();
    for (j, rho) in tr.index().list.iter().enumerate() {
        let s = pow(q, rho.n_stat() as i64);
        for row in x.data.iter_mut() {
            row[j] *= &s;
        }
    }
    Ok(x)
}

/// χ^λ_ρ(q) = q^{n(ρ)} K_{λρ}(1/q).
pub fn chi_unipotent(lam: &Partition, rho: &Partition, q: &Rational) -> Result<Rational> {
    same_size(lam.size(), rho.size())?;
    let n = lam.size();
    let ix = partition_index(n)?;
    let x = chi_matrix(n, q)?;
    Ok(x.data[ix.position(lam).unwrap()][ix.position(rho).unwrap()].clone())
}

/// ψ^μ_ρ(q) = Σ_λ K_{λμ} χ^λ_ρ(q); μ may be any composition.
pub fn psi_unipotent(mu: &FlagType, rho: &Partition, q: &Rational) -> Result<Rational> {
    same_size(mu.size(), rho.size())?;
    let n = rho.size();
    let ix = partition_index(n)?;
    let sorted = Partition::from_composition(mu.parts());
    let (i, j) = (ix.position(&sorted).unwrap(), ix.position(rho).unwrap());
    let k = &base_tables(n)?.kostka;
    let x = chi_matrix(n, q)?;
    Ok((0..ix.len()).map(|l| &k.data[l][i] * &x.data[l][j]).sum())
}

/// ψ^ν at a primary element of degree d with partition ρ: ψ^{ν/d}_ρ(q^d),
/// or 0 when some part of ν is not divisible by d.
pub fn psi_at_primary(nu: &Partition, d: usize, rho: &Partition, q: &Rational) -> Result<Rational> {
    if d == 0 {
        return Err(Error::OutOfRange("polynomial degree must be positive".into()));
    }
    same_size(nu.size(), d * rho.size())?;
    if nu.parts().iter().any(|&x| x % d != 0) {
        return Ok(Rational::zero());
    }
    let mu = FlagType::new(nu.parts().iter().map(|&x| x / d).collect())?;
    psi_unipotent(&mu, rho, &pow(q, d as i64))
}

/// χ^{(α;β)} at a unipotent element of type ρ.
pub fn glb_character_unipotent(spec: &ThomaSpec, rho: &Partition, ground: &GroundParams) -> Result<Rational> {
    r_function(rho, spec, &ground.t)
}

/// Product over f of r_{φ(f)} at (α^{d_f}; −(−β)^{d_f}; t^{d_f}).
pub fn glb_character_general(spec: &ThomaSpec, phi: &ConjClassType, ground: &GroundParams) -> Result<Rational> {
    let mut acc = Rational::one();
    for (f, rho) in &phi.0 {
        let d = f.degree().ok_or_else(|| Error::InvalidSpec("zero polynomial in class type".into()))?;
        let base = spec.at(&ground.t);
        let sub = power_substitution(&base, d);
        let td = pow(&ground.t, d as i64);
        acc *= if rho.size() <= dense_degree_limit() {
            r_function_dense(rho, &sub, &td)?
        } else {
            r_function_sparse(rho, &sub, &td, None)?
        };
    }
    Ok(acc)
}

/// Σ_ν ψ^ν(g) m_ν(spec) with ψ^ν(g) counted as g-fixed flags.
pub fn glb_character_by_flags(spec: &ThomaSpec, g: &MatGF, ground: &GroundParams) -> Result<Rational> {
    let n = g.nrows();
    let ix = partition_index(n)?;
    let m = monomial_values(n, &spec.at(&ground.t))?;
    let mut acc = Rational::zero();
    for (nu, mv) in ix.list.iter().zip(m) {
        if mv.is_zero() {
            continue;
        }
        acc += Rational::from_integer(count_fixed_flags(g, &FlagType::from(nu))?) * mv;
    }
    Ok(acc)
}

/// Both sides of Σ_λ χ^λ_ρ s_λ(spec) = Σ_ν ψ^ν_ρ m_ν(spec).
pub fn two_decompositions(spec: &ThomaSpec, rho: &Partition, ground: &GroundParams) -> Result<(Rational, Rational)> {
    let n = rho.size();
    let ix = partition_index(n)?;
    let j = ix.position(rho).unwrap();
    let at = spec.at(&ground.t);
    let x = chi_matrix(n, &ground.q)?;
    let s = schur_values(n, &at)?;
    let m = monomial_values(n, &at)?;
    let k = &base_tables(n)?.kostka;
    let left: Rational = (0..ix.len()).map(|l| &x.data[l][j] * &s[l]).sum();
    let right: Rational = (0..ix.len())
        .map(|v| {
            let psi: Rational = (0..ix.len()).map(|l| &k.data[l][v] * &x.data[l][j]).sum();
            psi * &m[v]
        })
        .sum();
    Ok((left, right))
}

/// χ recovered from fixed-flag counts: ψ^μ_ρ = #fixed flags of type μ of
/// the canonical unipotent of type ρ, then ψ = Kᵀχ solved by substitution.
pub fn chi_via_flag_oracle(n: usize, ctx: &Arc<FieldCtx>) -> Result<RatMatrix> {
    let ix = partition_index(n)?;
    let len = ix.len();
    let mut psi = RatMatrix::zero(len);
    for (j, rho) in ix.list.iter().enumerate() {
        let u = canonical_unipotent(rho, ctx);
        for (i, mu) in ix.list.iter().enumerate() {
            psi.data[i][j] = Rational::from_integer(count_fixed_flags(&u, &FlagType::from(mu))?);
        }
    }
    let k = &base_tables(n)?.kostka;
    let mut chi = RatMatrix::zero(len);
    for mu in 0..len {
        for j in 0..len {
            let mut v = psi.data[mu][j].clone();
            for l in 0..mu {
                if !k.data[l][mu].is_zero() {
                    v -= &k.data[l][mu] * &chi.data[l][j];
                }
            }
            chi.data[mu][j] = v;
        }
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionVerdict {
    pub n: usize,
    #[serde(with = "crate::io::rational_str")]
    pub q: Rational,
    pub passed: bool,
    pub mismatches: usize,
}

/// s_λ = Σ_ρ χ^λ_ρ(q) P̃_ρ with P̃_ρ = q^{−n(ρ)} P_ρ(x; 1/q), checked as a
/// matrix identity in the monomial basis.
pub fn frobenius_transition_check(n: usize, q: &Rational) -> Result<TransitionVerdict> {
    check_degree(n)?;
    let t = q.recip();
    let tr = transitions(n, &t)?;
    let mut p_tilde = tr.hl_p.clone();
    for (row, rho) in p_tilde.data.iter_mut().zip(&tr.index().list) {
        let s = pow(q, -(rho.n_stat() as i64));
        for x in row.iter_mut() {
            *x *= &s;
        }
    }
    let lhs = &tr.base.kostka;
    let rhs = chi_matrix(n, q)?.mul(&p_tilde);
    let mismatches =
        lhs.data.iter().flatten().zip(rhs.data.iter().flatten()).filter(|(a, b)| a != b).count();
    Ok(TransitionVerdict { n, q: q.clone(), passed: mismatches == 0, mismatches })
}
