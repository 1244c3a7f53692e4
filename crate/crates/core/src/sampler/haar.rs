//! Direct growth of a Haar-random unitriangular matrix, one column at a time.

use std::sync::Arc;

use super::rng::{trial_rng, uniform_field_elements};
use crate::error::{Error, Result};
use crate::gflinalg::{Echelon, FieldCtx, FqSpace, Gf2Space, MatGF, VecSpace};
use crate::partitions::Partition;

pub const DEFAULT_REFRESH: usize = 64;
pub const DEFAULT_N_MAX_CAP: usize = 600;

/// State of one growing matrix u = I + N with N strictly upper triangular.
///
/// Columns of N are stored as vectors of the fixed length `n_max`; the
/// images of N^k (k ≥ 1) are kept incrementally.
#[derive(Clone)]
pub struct GrowthState<S: VecSpace> {
    sp: S,
    q: u32,
    n_max: usize,
    cols: Vec<S::V>,
    images: Vec<Echelon<S>>,
    rows: Vec<usize>,
    conj: Vec<usize>,
    pub seed: u64,
    pub trial: u64,
    pub refresh: usize,
}

impl GrowthState<Gf2Space> {
    pub fn new_gf2(n_max: usize, seed: u64, trial: u64) -> Self {
        Self::with_space(Gf2Space::new(n_max), 2, n_max, seed, trial)
    }
}

impl GrowthState<FqSpace> {
    pub fn new_fq(ctx: &Arc<FieldCtx>, n_max: usize, seed: u64, trial: u64) -> Self {
        let sp = FqSpace { len: n_max, field: ctx.clone() };
        Self::with_space(sp, ctx.q(), n_max, seed, trial)
    }
}

impl<S: VecSpace> GrowthState<S> {
    fn with_space(sp: S, q: u32, n_max: usize, seed: u64, trial: u64) -> Self {
        GrowthState {
            sp,
            q,
            n_max,
            cols: Vec::new(),
            images: Vec::new(),
            rows: Vec::new(),
            conj: Vec::new(),
            seed,
            trial,
            refresh: DEFAULT_REFRESH,
        }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn rho(&self) -> Partition {
        Partition::new(self.rows.clone()).expect("rows stay weakly decreasing")
    }

    /// Row lengths ρ_1 ≥ ρ_2 ≥ …
    pub fn row_lengths(&self) -> &[usize] {
        &self.rows
    }

    /// N·w = Σ_j w_j b_j.
    fn apply(&self, w: &S::V) -> S::V {
        let mut out = self.sp.zero();
        for (j, c) in self.sp.nonzeros(w) {
            self.sp.axpy(&mut out, c, &self.cols[j]);
        }
        out
    }

    /// Appends the column `b` (entries for rows 0..n) and returns the
    /// 0-based row that received the new box.
    pub fn push_column(&mut self, b: &[u8]) -> Result<usize> {
        let n = self.n();
        if n >= self.n_max {
            return Err(Error::SizeLimit(format!("growth beyond n_max = {}", self.n_max)));
        }
        if b.len() != n {
            return Err(Error::SizeMismatch(format!("column of length {} at n = {n}", b.len())));
        }
        let mut v = self.sp.zero();
        for (i, &x) in b.iter().enumerate() {
            if x != 0 {
                self.sp.set(&mut v, i, x);
            }
        }
        // box lands in the first column k with N^{k-1}b ∈ Im N^k
        let mut k = 1;
        loop {
            if self.sp.is_zero(&v) {
                break;
            }
            if self.images.len() < k {
                self.images.push(Echelon::new());
            }
            if !self.images[k - 1].insert(&self.sp, &v) {
                break;
            }
            v = self.apply(&v);
            k += 1;
        }
        let col = k - 1;
        let row = self.conj.get(col).copied().unwrap_or(0);
        if col == self.conj.len() {
            self.conj.push(1);
        } else {
            self.conj[col] += 1;
        }
        if row == self.rows.len() {
            self.rows.push(1);
        } else {
            self.rows[row] += 1;
        }
        let mut stored = self.sp.zero();
        for (i, &x) in b.iter().enumerate() {
            if x != 0 {
                self.sp.set(&mut stored, i, x);
            }
        }
        self.cols.push(stored);
        if self.refresh > 0 && self.n() % self.refresh == 0 {
            self.rebuild_images()?;
        }
        Ok(row)
    }

    /// Recomputes Im N^k = N(Im N^{k−1}) from the columns and checks the
    /// dimensions against the tracked Jordan type.
    pub fn rebuild_images(&mut self) -> Result<()> {
        let n = self.n();
        let mut images: Vec<Echelon<S>> = Vec::new();
        let mut current: Vec<S::V> = self.cols.clone();
        loop {
            let mut e = Echelon::new();
            for v in &current {
                if !self.sp.is_zero(v) {
                    e.insert(&self.sp, v);
                }
            }
            if e.dim() == 0 {
                break;
            }
            current = e.basis().map(|v| self.apply(v)).collect();
            images.push(e);
        }
        let mut nullity = 0;
        for k in 0..images.len().max(self.conj.len()) {
            nullity += self.conj.get(k).copied().unwrap_or(0);
            let dim = images.get(k).map_or(0, |e| e.dim());
            if dim + nullity != n {
                return Err(Error::Internal(format!(
                    "image filtration disagrees with tracked type {} at k = {}",
                    self.rho(),
                    k + 1
                )));
            }
        }
        self.images = images;
        Ok(())
    }

    /// One step with a uniform column drawn from the (seed, trial, n) stream.
    pub fn step(&mut self) -> Result<usize> {
        let n = self.n();
        let b = uniform_field_elements(&mut trial_rng(self.seed, self.trial, n as u64), self.q, n);
        self.push_column(&b)
    }

    /// The matrix u = I + N over F_q.
    pub fn matrix(&self, ctx: &Arc<FieldCtx>) -> Result<MatGF> {
        if ctx.q() != self.q {
            return Err(Error::SizeMismatch(format!("field F_{} for a matrix over F_{}", ctx.q(), self.q)));
        }
        let n = self.n();
        let mut m = MatGF::identity(n, ctx);
        for (j, c) in self.cols.iter().enumerate() {
            for i in 0..j {
                m.set(i, j, self.sp.get(c, i));
            }
        }
        Ok(m)
    }
}

/// One Haar growth step, by value.
pub fn haar_grow_step<S: VecSpace>(mut state: GrowthState<S>) -> Result<GrowthState<S>> {
    state.step()?;
    Ok(state)
}

/// Row indices of the boxes added along one Haar trajectory of length `n`.
pub fn haar_path(q: u32, n: usize, seed: u64, trial: u64, refresh: usize) -> Result<Vec<u32>> {
    fn run<S: VecSpace>(mut st: GrowthState<S>, n: usize, refresh: usize) -> Result<Vec<u32>> {
        st.refresh = refresh;
        (0..n).map(|_| st.step().map(|r| r as u32)).collect()
    }
    if q == 2 {
        run(GrowthState::new_gf2(n, seed, trial), n, refresh)
    } else {
        run(GrowthState::new_fq(&FieldCtx::new(q)?, n, seed, trial), n, refresh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::jordan_type_unipotent;

    #[test]
    fn tracks_jordan_type() {
        for q in [2u32, 3] {
            let ctx = FieldCtx::new(q).unwrap();
            let mut st = GrowthState::new_fq(&ctx, 24, 11, q as u64);
            st.refresh = 5;
            for _ in 0..24 {
                st.step().unwrap();
                assert_eq!(jordan_type_unipotent(&st.matrix(&ctx).unwrap()).unwrap(), st.rho());
            }
        }
    }

    #[test]
    fn packed_and_dense_agree() {
        let ctx = FieldCtx::new(2).unwrap();
        let mut a = GrowthState::new_gf2(70, 5, 0);
        let mut b = GrowthState::new_fq(&ctx, 70, 5, 0);
        for _ in 0..70 {
            assert_eq!(a.step().unwrap(), b.step().unwrap());
        }
        assert_eq!(a.rho(), b.rho());
    }
}
