//! One-column unitriangular extensions and their type counts.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::classes::{canonical_unipotent, jordan_type_unipotent};
use super::echelon::{Echelon, FqSpace};
use super::field::FieldCtx;
use super::matrix::MatGF;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest q^n the brute-force count will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 22;

/// Largest |ρ| (for q ∈ {2, 3}) on which the closed form has been checked
/// against brute force.
pub const CLOSED_FORM_VALIDATED_SIZE: usize = 10;

static FAST_PATH: AtomicBool = AtomicBool::new(false);

/// Allows closed-form counts outside the validated range.
pub fn enable_fast_path(on: bool) {
    FAST_PATH.store(on, Ordering::SeqCst);
}

pub fn fast_path_enabled() -> bool {
    FAST_PATH.load(Ordering::SeqCst)
}

pub fn in_validated_range(n: usize, q: u32) -> bool {
    n <= CLOSED_FORM_VALIDATED_SIZE && (q == 2 || q == 3)
}

/// Jordan type of [[u, b], [0, 1]].
pub fn extend_type(u: &MatGF, b: &[u8]) -> Result<Partition> {
    let n = u.nrows();
    if b.len() != n {
        return Err(Error::SizeMismatch(format!("column of length {} for {n}×{n} matrix", b.len())));
    }
    let mut m = MatGF::identity(n + 1, u.field());
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, u.get(i, j));
        }
        m.set(i, n, b[i]);
    }
    jordan_type_unipotent(&m)
}

/// Images of N^k, k = 0..=n, for the nilpotent part N = u − I, with the
/// powers themselves.
struct Filtration {
    sp: FqSpace,
    nil: MatGF,
    images: Vec<Echelon<FqSpace>>,
    ranks: Vec<usize>,
}

impl Filtration {
    fn new(u: &MatGF) -> Self {
        let n = u.nrows();
        let f = u.field();
        let sp = FqSpace { len: n, field: f.clone() };
        let nil = u.sub(&MatGF::identity(n, f));
        let mut pw = MatGF::identity(n, f);
        let mut images = Vec::with_capacity(n + 2);
        let mut ranks = Vec::with_capacity(n + 2);
        for _ in 0..=n + 1 {
            let mut e = Echelon::new();
            for j in 0..n {
                e.insert(&sp, &pw.column(j));
            }
            ranks.push(e.dim());
            images.push(e);
            pw = pw.mul(&nil);
        }
        Filtration { sp, nil, images, ranks }
    }

    /// rank((M−I)^k) = rank N^k + [N^{k−1}b ∉ Im N^k].
    fn classify(&self, b: &[u8]) -> Partition {
        let n = self.nil.nrows();
        let mut v = b.to_vec();
        let mut nullities = Vec::with_capacity(n + 1);
        for k in 1..=n + 1 {
            let fresh = !self.sp.is_zero_vec(&v) && !self.images[k].contains(&self.sp, &v);
            let rank = self.ranks[k] + usize::from(fresh);
            nullities.push(n + 1 - rank);
            if rank == 0 {
                break;
            }
            v = self.nil.apply(&v);
        }
        nullities_to_partition(&nullities)
    }
}

fn nullities_to_partition(nu: &[usize]) -> Partition {
    let mut cols = Vec::new();
    let mut prev = 0;
    for &x in nu {
        if x == prev {
            break;
        }
        cols.push(x - prev);
        prev = x;
    }
    Partition::new(cols).expect("nullity jumps decrease").conjugate()
}

trait ZeroVec {
    fn is_zero_vec(&self, v: &[u8]) -> bool;
}

impl ZeroVec for FqSpace {
    fn is_zero_vec(&self, v: &[u8]) -> bool {
        v.iter().all(|&x| x == 0)
    }
}

fn decode(mut code: u64, n: usize, q: u64) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let d = (code % q) as u8;
            code /= q;
            d
        })
        .collect()
}

/// Counts of b ∈ F_q^n by the type of [[u, b], [0, 1]] for a given
/// unipotent u.
pub fn extension_counts_of(u: &MatGF) -> Result<BTreeMap<Partition, BigInt>> {
    jordan_type_unipotent(u)?;
    let n = u.nrows();
    let q = u.q() as u64;
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT)
        .ok_or_else(|| Error::SizeLimit(format!("extension counts at n={n}, q={q}")))?;
    let filt = Filtration::new(u);
    let merged = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Partition, u64>, code| {
            *acc.entry(filt.classify(&decode(code, n, q))).or_default() += 1;
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

/// Brute-force c_{ρσ}(q) over the canonical matrix of type ρ.
pub fn extension_counts(rho: &Partition, ctx: &Arc<FieldCtx>) -> Result<BTreeMap<Partition, BigInt>> {
    extension_counts_of(&canonical_unipotent(rho, ctx))
}

/// Closed form: adding a box in column j gives q^{n−ρ'_j} − q^{n−ρ'_{j−1}}
/// (q^{n−ρ'_1} for j = 1).
pub fn extension_counts_closed_form(rho: &Partition, q: &BigInt) -> BTreeMap<Partition, BigInt> {
    let n = rho.size();
    let conj = rho.conjugate();
    let col = |j: usize| conj.parts().get(j - 1).copied().unwrap_or(0);
    let qp = |e: usize| -> BigInt { num_traits::pow(q.clone(), e) };
    let mut out = BTreeMap::new();
    for sigma in rho.covers_up() {
        let j = rho.added_box_column(&sigma).expect("cover");
        let c = if j == 1 { qp(n - col(1)) } else { qp(n - col(j)) - qp(n - col(j - 1)) };
        if !c.is_zero() {
            out.insert(sigma, c);
        }
    }
    out
}

/// Counts through the fastest admissible route: closed form inside the
/// validated range or when enabled, brute force otherwise.
pub fn extension_counts_auto(rho: &Partition, ctx: &Arc<FieldCtx>) -> Result<BTreeMap<Partition, BigInt>> {
    if in_validated_range(rho.size(), ctx.q()) || fast_path_enabled() {
        return Ok(extension_counts_closed_form(rho, &BigInt::from(ctx.q())));
    }
    extension_counts(rho, ctx)
}

/// Exhaustive comparison of the closed form with brute force for all
/// ρ ⊢ n ≤ `max_size`. Returns the first disagreeing ρ, if any.
pub fn check_closed_form(max_size: usize, ctx: &Arc<FieldCtx>) -> Result<Option<Partition>> {
    let q = BigInt::from(ctx.q());
    for n in 0..=max_size {
        for rho in crate::partitions::enumerate_partitions(n)? {
            let brute = extension_counts(&rho, ctx)?;
            let closed = extension_counts_closed_form(&rho, &q);
            if brute != closed {
                return Ok(Some(rho));
            }
        }
    }
    Ok(None)
}

/// q^n, the total of every count table at size n.
pub fn total_extensions(n: usize, q: u32) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, _| acc * q)
}
