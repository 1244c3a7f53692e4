//! Exact symmetric functions at a fixed rational t.
//!
//! Evaluation at a specialization always goes through power sums: any
//! function is rewritten in the power-sum basis and each p_ρ is replaced by
//! the product of the specialization's p_{ρ_k}.

pub mod charge;
pub mod spec;
pub mod tables;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{check_degree, enumerate_ssyt, partition_index, Partition};
use crate::rational::{determinant, pow, RatMatrix, Rational};

pub use charge::{charge, charge_word, kostka_foulkes_entry, kostka_foulkes_hook};
pub use spec::{
    expected_frequency_multiset, finite_alphabet, power_substitution, ExpectedFrequencies, FixedPowerSums,
    GroundParams, PowerSubstitution, PowerSums, SpecAt, SuperMode, ThomaEntry, ThomaSpec,
};
pub use tables::{b_coefficient, base_tables, kostka_foulkes_matrix, transitions, Transitions};

static DENSE_LIMIT: AtomicUsize = AtomicUsize::new(12);

/// Largest degree at which full transition matrices are built on demand
/// (default 12). Above it, r-values use one Kostka–Foulkes column at a time.
pub fn dense_degree_limit() -> usize {
    DENSE_LIMIT.load(Ordering::Relaxed)
}

pub fn set_dense_degree_limit(n: usize) {
    DENSE_LIMIT.store(n, Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Schur,
    PowerSum,
    #[serde(rename = "hlP")]
    HlP,
    #[serde(rename = "hlQ")]
    HlQ,
}

/// A homogeneous symmetric function with exact coefficients in a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFuncVec {
    pub degree: usize,
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, Rational>,
    /// Needed for the Hall–Littlewood bases.
    pub t: Option<Rational>,
}

impl SymFuncVec {
    /// The single basis element indexed by `lam`.
    pub fn basis_element(basis: Basis, lam: &Partition, t: Option<Rational>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lam.clone(), Rational::one());
        SymFuncVec { degree: lam.size(), basis, coeffs, t }
    }

    pub fn schur(lam: &Partition) -> Self {
        Self::basis_element(Basis::Schur, lam, None)
    }

    pub fn monomial(lam: &Partition) -> Self {
        Self::basis_element(Basis::Monomial, lam, None)
    }

    pub fn power(rho: &Partition) -> Self {
        Self::basis_element(Basis::PowerSum, rho, None)
    }

    pub fn hl_p(lam: &Partition, t: &Rational) -> Self {
        Self::basis_element(Basis::HlP, lam, Some(t.clone()))
    }

    pub fn hl_q(lam: &Partition, t: &Rational) -> Self {
        Self::basis_element(Basis::HlQ, lam, Some(t.clone()))
    }

    fn dense(&self) -> Result<Vec<Rational>> {
        let ix = partition_index(self.degree)?;
        let mut v = vec![Rational::zero(); ix.len()];
        for (p, c) in &self.coeffs {
            let i = ix
                .position(p)
                .ok_or_else(|| Error::SizeMismatch(format!("{p} has size != {}", self.degree)))?;
            v[i] += c;
        }
        Ok(v)
    }

    fn from_dense(degree: usize, basis: Basis, t: Option<Rational>, v: Vec<Rational>) -> Result<Self> {
        let ix = partition_index(degree)?;
        let coeffs = ix.list.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymFuncVec { degree, basis, coeffs, t })
    }

    fn t_value(&self) -> Result<&Rational> {
        self.t.as_ref().ok_or_else(|| Error::OutOfRange("Hall-Littlewood basis needs t".into()))
    }

    pub fn to_monomial(&self) -> Result<SymFuncVec> {
        check_degree(self.degree)?;
        let v = self.dense()?;
        let out = match self.basis {
            Basis::Monomial => v,
            Basis::Schur => base_tables(self.degree)?.kostka.left_apply(&v),
            Basis::PowerSum => base_tables(self.degree)?.p_in_m.left_apply(&v),
            Basis::HlP => transitions(self.degree, self.t_value()?)?.hl_p.left_apply(&v),
            Basis::HlQ => transitions(self.degree, self.t_value()?)?.hl_q.left_apply(&v),
        };
        Self::from_dense(self.degree, Basis::Monomial, None, out)
    }

    pub fn to_power_sums(&self) -> Result<SymFuncVec> {
        if self.basis == Basis::PowerSum {
            return Ok(self.clone());
        }
        let m = self.to_monomial()?.dense()?;
        let out = base_tables(self.degree)?.m_in_p.left_apply(&m);
        Self::from_dense(self.degree, Basis::PowerSum, None, out)
    }

    /// Coefficient of one basis element (zero if absent).
    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.coeffs.get(lam).cloned().unwrap_or_else(Rational::zero)
    }
}

/// p_ρ(spec) = Π_k p_{ρ_k}(spec), given `ptab[m-1] = p_m`.
pub fn power_product(rho: &Partition, ptab: &[Rational]) -> Rational {
    rho.parts().iter().fold(Rational::one(), |acc, &k| acc * &ptab[k - 1])
}

pub fn evaluate<P: PowerSums + ?Sized>(f: &SymFuncVec, spec: &P) -> Result<Rational> {
    let g = f.to_power_sums()?;
    let ptab = spec.table(f.degree);
    Ok(g.coeffs.iter().map(|(rho, c)| c * power_product(rho, &ptab)).sum())
}

/// Values of all p_ρ, ρ ⊢ n, in index order.
pub fn power_products(n: usize, spec: &(impl PowerSums + ?Sized)) -> Result<Vec<Rational>> {
    let ix = partition_index(n)?;
    let ptab = spec.table(n);
    Ok(ix.list.iter().map(|rho| power_product(rho, &ptab)).collect())
}

/// Values of all m_μ, μ ⊢ n, in index order.
pub fn monomial_values(n: usize, spec: &(impl PowerSums + ?Sized)) -> Result<Vec<Rational>> {
    Ok(base_tables(n)?.m_in_p.apply(&power_products(n, spec)?))
}

/// Values of all s_λ, λ ⊢ n, in index order.
pub fn schur_values(n: usize, spec: &(impl PowerSums + ?Sized)) -> Result<Vec<Rational>> {
    Ok(base_tables(n)?.kostka.apply(&monomial_values(n, spec)?))
}

/// h_0..h_n from power sums by Newton's identity k h_k = Σ p_i h_{k−i}.
pub fn complete_from_power(ptab: &[Rational], n: usize) -> Vec<Rational> {
    let mut h = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            acc += &ptab[i - 1] * &h[k - i];
        }
        h.push(acc / Rational::from_integer(k.into()));
    }
    h
}

/// s_λ(spec) by the Jacobi–Trudi determinant det(h_{λ_i − i + j}).
pub fn schur_jacobi_trudi(lam: &Partition, h: &[Rational]) -> Rational {
    let l = lam.len();
    let hk = |k: i64| -> Rational {
        if k < 0 {
            Rational::zero()
        } else {
            h[k as usize].clone()
        }
    };
    let m: Vec<Vec<Rational>> = (0..l)
        .map(|i| (0..l).map(|j| hk(lam.part(i) as i64 - i as i64 + j as i64)).collect())
        .collect();
    determinant(m)
}

pub fn kostka_numbers(n: usize) -> Result<RatMatrix> {
    Ok(base_tables(n)?.kostka.clone())
}

pub fn kostka_foulkes(n: usize, t: &Rational) -> Result<RatMatrix> {
    check_degree(n)?;
    kostka_foulkes_matrix(n, t)
}

/// (P-in-monomial, Q-in-monomial, b coefficients).
pub fn hl_transition(n: usize, t: &Rational) -> Result<(RatMatrix, RatMatrix, Vec<Rational>)> {
    check_degree(n)?;
    let tr = transitions(n, t)?;
    Ok((tr.hl_p.clone(), tr.hl_q.clone(), tr.b.clone()))
}

pub fn power_sum_value(spec: &ThomaSpec, t: &Rational, m: usize) -> Rational {
    spec.at(t).power_sum(m)
}

/// r_ρ = t^{−n(ρ)} Σ_λ K_{λρ}(t) s_λ(spec) using the full tables; needs
/// n within the dense limit.
pub fn r_function_dense<P: PowerSums + ?Sized>(rho: &Partition, spec: &P, t: &Rational) -> Result<Rational> {
    let n = rho.size();
    check_degree(n)?;
    let tr = transitions(n, t)?;
    let j = tr.index().position(rho).unwrap();
    let s = schur_values(n, spec)?;
    let acc: Rational = (0..s.len()).map(|i| &tr.kostka_foulkes.data[i][j] * &s[i]).sum();
    Ok(acc * pow(t, -(rho.n_stat() as i64)))
}

/// Same value with one Kostka–Foulkes column computed from tableaux (hooks
/// in closed form) and
/// Schur values from Jacobi–Trudi; λ restricted to `hook` (α atoms, β atoms)
/// when given.
pub fn r_function_sparse<P: PowerSums + ?Sized>(
    rho: &Partition,
    spec: &P,
    t: &Rational,
    hook: Option<(usize, usize)>,
) -> Result<Rational> {
    let n = rho.size();
    check_degree(n)?;
    let ix = partition_index(n)?;
    let h = complete_from_power(&spec.table(n), n);
    let mut acc = Rational::zero();
    for lam in &ix.list {
        if let Some((a, b)) = hook {
            if lam.part(a) > b {
                continue;
            }
        }
        if !lam.dominates(rho) {
            continue;
        }
        let s = schur_jacobi_trudi(lam, &h);
        if s.is_zero() {
            continue;
        }
        let k = if lam.part(1) <= 1 {
            kostka_foulkes_hook(lam.len() - 1, rho, t)?
        } else {
            let mut k = Rational::zero();
            for tab in enumerate_ssyt(lam, rho)? {
                k += pow(t, charge(&tab)? as i64);
            }
            k
        };
        acc += k * s;
    }
    Ok(acc * pow(t, -(rho.n_stat() as i64)))
}

/// r_ρ(spec) at ratio t, choosing the dense or sparse route by degree.
pub fn r_function(rho: &Partition, spec: &ThomaSpec, t: &Rational) -> Result<Rational> {
    let at = spec.at(t);
    if rho.size() <= dense_degree_limit() {
        r_function_dense(rho, &at, t)
    } else {
        r_function_sparse(rho, &at, t, spec.hook_bound())
    }
}
