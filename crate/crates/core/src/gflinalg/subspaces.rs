//! Subspace enumeration, invariant subspaces, fixed flags and
//! unitriangular census.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::classes::jordan_type_unipotent;
use super::field::FieldCtx;
use super::matrix::{row_echelon, MatGF};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest number of objects a brute-force enumeration here will visit.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

/// Dimension vector of a partial flag: an ordered list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagType(Vec<usize>);

impl FlagType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("composition {parts:?} has a zero part")));
        }
        Ok(FlagType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Partial sums μ_1, μ_1+μ_2, …, n.
    pub fn dims(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect()
    }
}

impl From<&Partition> for FlagType {
    fn from(p: &Partition) -> Self {
        FlagType(p.parts().to_vec())
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A subspace of F_q^n held by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn span(n: usize, vectors: &[Vec<u8>], f: &FieldCtx) -> Self {
        Subspace { n, rows: row_echelon(&mut vectors.to_vec(), f) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains_space(&self, other: &Subspace, f: &FieldCtx) -> bool {
        if other.dim() > self.dim() {
            return false;
        }
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        row_echelon(&mut all, f).len() == self.dim()
    }

    /// g·W ⊆ W, with g acting on column vectors.
    pub fn is_invariant(&self, g: &MatGF) -> bool {
        let images: Vec<Vec<u8>> = self.rows.iter().map(|r| g.apply(r)).collect();
        self.contains_space(&Subspace::span(self.n, &images, g.field()), g.field())
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect()
    }
}

fn check_limit(count: u64, what: &str) -> Result<()> {
    if count > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit(format!("{what}: {count} objects exceeds {ENUMERATION_LIMIT}")));
    }
    Ok(())
}

/// All m-dimensional subspaces of F_q^n, by enumerating reduced echelon forms.
pub fn subspaces_of_dim(n: usize, m: usize, ctx: &Arc<FieldCtx>) -> Result<Vec<Subspace>> {
    let q = ctx.q() as u64;
    check_limit(q.saturating_pow((m * (n - m.min(n))) as u32), "subspace enumeration")?;
    let mut out = Vec::new();
    if m > n {
        return Ok(out);
    }
    let mut pivots = Vec::with_capacity(m);
    choose(n, m, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| ((piv[i] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u8; n]; m];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut c = code;
            for &(i, col) in &free {
                rows[i][col] = (c % q) as u8;
                c /= q;
            }
            out.push(Subspace { n, rows });
        }
    });
    Ok(out)
}

fn choose(n: usize, m: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == m {
        f(acc);
        return;
    }
    for c in start..n {
        acc.push(c);
        choose(n, m, c + 1, acc, f);
        acc.pop();
    }
}

/// Every subspace of F_q^n grouped by dimension.
pub fn all_subspaces(n: usize, ctx: &Arc<FieldCtx>) -> Result<Vec<Vec<Subspace>>> {
    (0..=n).map(|m| subspaces_of_dim(n, m, ctx)).collect()
}

/// g-invariant subspaces grouped by dimension.
pub fn invariant_subspaces(g: &MatGF) -> Result<Vec<Vec<Subspace>>> {
    let all = all_subspaces(g.nrows(), g.field())?;
    Ok(all.into_iter().map(|level| level.into_par_iter().filter(|w| w.is_invariant(g)).collect()).collect())
}

/// Number of g-invariant partial flags 0 ⊂ V_1 ⊂ … ⊂ F_q^n with
/// dim V_i = μ_1 + … + μ_i.
pub fn count_fixed_flags(g: &MatGF, mu: &FlagType) -> Result<BigInt> {
    let n = g.nrows();
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("flag type {mu} does not sum to {n}")));
    }
    let levels = invariant_subspaces(g)?;
    let f = g.field();
    let dims = mu.dims();
    let mut prev: Vec<(Subspace, BigInt)> = vec![(levels[0][0].clone(), BigInt::from(1))];
    for &d in &dims {
        prev = levels[d]
            .par_iter()
            .map(|w| {
                let c: BigInt = prev.iter().filter(|(v, _)| w.contains_space(v, f)).map(|(_, c)| c).sum();
                (w.clone(), c)
            })
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect();
    }
    Ok(prev.into_iter().map(|(_, c)| c).sum())
}

/// Census of Jordan types over all upper unitriangular n×n matrices.
pub fn count_unitriangular_by_type(n: usize, ctx: &Arc<FieldCtx>) -> Result<BTreeMap<Partition, BigInt>> {
    let q = ctx.q() as u64;
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let total = q
        .checked_pow(slots.len() as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::SizeLimit(format!("unitriangular census at n={n}, q={q}")))?;
    let merged = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Partition, u64>, code| {
            let mut m = MatGF::identity(n, ctx);
            let mut c = code;
            for &(i, j) in &slots {
                m.set(i, j, (c % q) as u8);
                c /= q;
            }
            *acc.entry(jordan_type_unipotent(&m).expect("unitriangular")).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(merged.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect())
}
