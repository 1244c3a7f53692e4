//! Transition matrices between monomial, Schur, power-sum and
//! Hall–Littlewood bases, cached per degree (and per t where t matters).
//!
//! Row `i` of a transition matrix expands the i-th basis element of the
//! source basis in monomials (or the stated target basis); indices follow
//! [`partition_index`].

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{partition_index, Partition, PartitionIndex};
use crate::rational::{pow, RatMatrix, Rational};
use crate::symfun::charge::{charge_histogram, eval_histogram};

const CACHE_FORMAT: &str = "glblab-charge-histograms";
const CACHE_VERSION: u32 = 1;

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| RwLock::new(None))
}

/// Directory for serialized charge tables; `None` disables disk caching.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_slot().read().unwrap().clone()
}

/// Charge histograms for every pair (λ, μ) of one degree: `hist[λ][μ][c]`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ChargeTable {
    format: String,
    version: u32,
    pub n: usize,
    pub partitions: Vec<String>,
    pub hist: Vec<Vec<Vec<u64>>>,
}

fn load_from_disk(n: usize, ix: &PartitionIndex) -> Option<ChargeTable> {
    let path = cache_dir()?.join(format!("charge-v{CACHE_VERSION}-n{n}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    let table: ChargeTable = serde_json::from_str(&text).ok()?;
    let names: Vec<String> = ix.list.iter().map(|p| p.to_string()).collect();
    (table.format == CACHE_FORMAT && table.version == CACHE_VERSION && table.n == n && table.partitions == names)
        .then_some(table)
}

fn store_to_disk(table: &ChargeTable) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let path = dir.join(format!("charge-v{CACHE_VERSION}-n{}.json", table.n));
    let tmp = path.with_extension("tmp");
    if let Ok(text) = serde_json::to_string(table) {
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

/// Built once per degree, then shared read-only.
pub fn charge_table(n: usize) -> Result<Arc<ChargeTable>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<ChargeTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let ix = partition_index(n)?;
    let table = match load_from_disk(n, &ix) {
        Some(t) => t,
        None => {
            let hist = ix
                .list
                .par_iter()
                .map(|lam| ix.list.iter().map(|mu| charge_histogram(lam, mu)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let t = ChargeTable {
                format: CACHE_FORMAT.into(),
                version: CACHE_VERSION,
                n,
                partitions: ix.list.iter().map(|p| p.to_string()).collect(),
                hist,
            };
            store_to_disk(&t);
            t
        }
    };
    let table = Arc::new(table);
    Ok(cache.write().unwrap().entry(n).or_insert(table).clone())
}

/// Number of ways to distribute the (labelled) parts of ρ into rows with
/// row sums λ: the coefficient of m_λ in p_ρ.
fn power_to_monomial_coeff(rho: &[usize], cap: &mut [usize]) -> u64 {
    let Some((&first, rest)) = rho.split_first() else {
        return cap.iter().all(|&c| c == 0) as u64;
    };
    let mut total = 0;
    for i in 0..cap.len() {
        if cap[i] >= first {
            cap[i] -= first;
            total += power_to_monomial_coeff(rest, cap);
            cap[i] += first;
        }
    }
    total
}

/// t-independent tables of one degree.
#[derive(Debug)]
pub struct BaseTables {
    pub n: usize,
    pub index: Arc<PartitionIndex>,
    /// Kostka numbers: row λ is s_λ in monomials.
    pub kostka: RatMatrix,
    /// Row ρ is p_ρ in monomials.
    pub p_in_m: RatMatrix,
    /// Row μ is m_μ in power sums.
    pub m_in_p: RatMatrix,
    pub charges: Arc<ChargeTable>,
}

pub fn base_tables(n: usize) -> Result<Arc<BaseTables>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<BaseTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let index = partition_index(n)?;
    let charges = charge_table(n)?;
    let len = index.len();
    let mut kostka = RatMatrix::zero(len);
    for i in 0..len {
        for j in 0..len {
            let c: u64 = charges.hist[i][j].iter().sum();
            kostka.data[i][j] = Rational::from_integer(c.into());
        }
    }
    let mut p_in_m = RatMatrix::zero(len);
    for (i, rho) in index.list.iter().enumerate() {
        for (j, lam) in index.list.iter().enumerate() {
            let mut cap = lam.parts().to_vec();
            let c = power_to_monomial_coeff(rho.parts(), &mut cap);
            p_in_m.data[i][j] = Rational::from_integer(c.into());
        }
    }
    let m_in_p = p_in_m.inverse().ok_or_else(|| Error::Internal("power-sum transition singular".into()))?;
    let t = Arc::new(BaseTables { n, index, kostka, p_in_m, m_in_p, charges });
    Ok(cache.write().unwrap().entry(n).or_insert(t).clone())
}

/// b_λ(t) = Π_i Π_{k=1}^{m_i(λ)} (1 − t^k).
pub fn b_coefficient(lam: &Partition, t: &Rational) -> Rational {
    let one = Rational::one();
    let mut acc = Rational::one();
    for m in lam.multiplicities() {
        for k in 1..=m {
            acc *= &one - pow(t, k as i64);
        }
    }
    acc
}

/// Tables depending on t.
#[derive(Debug)]
pub struct Transitions {
    pub base: Arc<BaseTables>,
    pub t: Rational,
    /// K_{λμ}(t).
    pub kostka_foulkes: RatMatrix,
    /// Row μ is P_μ in monomials.
    pub hl_p: RatMatrix,
    /// Row μ is Q_μ in monomials.
    pub hl_q: RatMatrix,
    pub b: Vec<Rational>,
}

impl Transitions {
    pub fn index(&self) -> &PartitionIndex {
        &self.base.index
    }
}

pub fn kostka_foulkes_matrix(n: usize, t: &Rational) -> Result<RatMatrix> {
    let base = base_tables(n)?;
    let len = base.index.len();
    let mut k = RatMatrix::zero(len);
    for i in 0..len {
        for j in 0..len {
            k.data[i][j] = eval_histogram(&base.charges.hist[i][j], t);
        }
    }
    Ok(k)
}

pub fn transitions(n: usize, t: &Rational) -> Result<Arc<Transitions>> {
    type Key = (usize, Rational);
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<Transitions>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, t.clone());
    if let Some(tr) = cache.read().unwrap().get(&key) {
        return Ok(tr.clone());
    }
    let base = base_tables(n)?;
    let kf = kostka_foulkes_matrix(n, t)?;
    let len = base.index.len();
    for i in 0..len {
        if !kf.data[i][i].is_one() || (0..i).any(|j| !kf.data[i][j].is_zero()) {
            return Err(Error::Internal("Kostka-Foulkes matrix is not unitriangular".into()));
        }
    }
    let kf_inv = upper_unitriangular_inverse(&kf);
    let hl_p = kf_inv.mul(&base.kostka);
    let b: Vec<Rational> = base.index.list.iter().map(|l| b_coefficient(l, t)).collect();
    let mut hl_q = hl_p.clone();
    for (row, bi) in hl_q.data.iter_mut().zip(&b) {
        for x in row.iter_mut() {
            *x *= bi;
        }
    }
    let tr = Arc::new(Transitions { base, t: t.clone(), kostka_foulkes: kf, hl_p, hl_q, b });
    Ok(cache.write().unwrap().entry(key).or_insert(tr).clone())
}

/// Inverse of an upper unitriangular matrix by back substitution.
pub fn upper_unitriangular_inverse(m: &RatMatrix) -> RatMatrix {
    let n = m.n;
    let mut inv = RatMatrix::identity(n);
    for i in (0..n).rev() {
        for j in i + 1..n {
            let mut acc = Rational::zero();
            for k in i + 1..=j {
                if !m.data[i][k].is_zero() && !inv.data[k][j].is_zero() {
                    acc += &m.data[i][k] * &inv.data[k][j];
                }
            }
            inv.data[i][j] = -acc;
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_in_m_degree_two() {
        let b = base_tables(2).unwrap();
        // p_2 = m_2, p_11 = m_2 + 2 m_11
        assert_eq!(b.p_in_m.data[0], vec![Rational::one(), Rational::zero()]);
        assert_eq!(b.p_in_m.data[1], vec![Rational::one(), Rational::from_integer(2.into())]);
    }
}
