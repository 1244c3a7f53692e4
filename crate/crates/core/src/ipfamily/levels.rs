//! One level G_m ← P_{m+1} ⊆ G_{m+1} of an IP-family.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::algebra::GroupAlgElem;
use super::groups::{wreath_product, FiniteGroup, FiniteGroupTable, MatrixGroup, WreathElem};
use crate::error::{Error, Result};
use crate::gflinalg::{FieldCtx, MatGF};
use crate::rational::Rational;

pub struct IPLevel<U: FiniteGroup, L: FiniteGroup> {
    pub m: usize,
    /// G_{m+1}.
    pub upper: Arc<U>,
    /// G_m.
    pub lower: Arc<L>,
    /// Indices in G_{m+1} of P_{m+1}.
    pub p: Vec<usize>,
    /// π(p[k]) as an index in G_m.
    pub pi: Vec<usize>,
    /// Indices in G_{m+1} of N_m = π^{-1}(1).
    pub kernel: Vec<usize>,
    p_pos: HashMap<usize, usize>,
    section: Vec<usize>,
}

impl<U: FiniteGroup, L: FiniteGroup> IPLevel<U, L> {
    pub fn new(m: usize, upper: Arc<U>, lower: Arc<L>, p: Vec<usize>, pi: Vec<usize>) -> Result<Self> {
        let e = lower.identity();
        let kernel: Vec<usize> = p.iter().zip(&pi).filter(|(_, &g)| g == e).map(|(&x, _)| x).collect();
        let p_pos: HashMap<usize, usize> = p.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut section = vec![usize::MAX; lower.order()];
        for (&x, &g) in p.iter().zip(&pi) {
            if section[g] == usize::MAX {
                section[g] = x;
            }
        }
        if section.contains(&usize::MAX) {
            return Err(Error::Internal("π is not surjective".into()));
        }
        let level = IPLevel { m, upper, lower, p, pi, kernel, p_pos, section };
        level.validate()?;
        Ok(level)
    }

    fn validate(&self) -> Result<()> {
        if self.p.len() != self.lower.order() * self.kernel.len() {
            return Err(Error::Internal("|P| ≠ |G_m|·|N|".into()));
        }
        // P closed and π multiplicative, on all pairs up to a budget
        let n = self.p.len();
        let stride = if n * n <= 1 << 20 { 1 } else { (n * n) / (1 << 20) + 1 };
        let mut k = 0usize;
        while k < n * n {
            let (a, b) = (k / n, k % n);
            let c = self.upper.mul(self.p[a], self.p[b]);
            let pc = self.pi_of(c).ok_or_else(|| Error::Internal("P is not closed".into()))?;
            if pc != self.lower.mul(self.pi[a], self.pi[b]) {
                return Err(Error::Internal("π is not a homomorphism".into()));
            }
            k += stride;
        }
        Ok(())
    }

    pub fn in_p(&self, x: usize) -> bool {
        self.p_pos.contains_key(&x)
    }

    pub fn pi_of(&self, x: usize) -> Option<usize> {
        self.p_pos.get(&x).map(|&k| self.pi[k])
    }

    /// The first lift of g found in P.
    pub fn section(&self, g: usize) -> usize {
        self.section[g]
    }

    pub fn lifts(&self, g: usize) -> Vec<usize> {
        self.p.iter().zip(&self.pi).filter(|(_, &h)| h == g).map(|(&x, _)| x).collect()
    }

    /// i(g) = (1/|N|) Σ_{h ∈ N} s(g)h with the given section s.
    pub fn embed_with_section(&self, a: &GroupAlgElem, s: &dyn Fn(usize) -> usize) -> Result<GroupAlgElem> {
        if a.group != self.lower.id() {
            return Err(Error::GroupMismatch);
        }
        let mut out = GroupAlgElem::zero(self.upper.as_ref());
        let w = Rational::new(1.into(), (self.kernel.len() as i64).into());
        for (&g, c) in &a.coeffs {
            let lift = s(g);
            let term = c * &w;
            let piece = GroupAlgElem {
                group: self.upper.id(),
                coeffs: self.kernel.iter().map(|&h| (self.upper.mul(lift, h), term.clone())).collect(),
            };
            out = out.add(&piece)?;
        }
        Ok(out)
    }
}

/// i: C[G_m] → C[G_{m+1}] through the default section.
pub fn embed_i<U: FiniteGroup, L: FiniteGroup>(a: &GroupAlgElem, level: &IPLevel<U, L>) -> Result<GroupAlgElem> {
    level.embed_with_section(a, &|g| level.section(g))
}

/// Shared GL_n(F_q).
pub fn general_linear(n: usize, ctx: &Arc<FieldCtx>) -> Result<Arc<MatrixGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MatrixGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&(n, ctx.q())) {
        return Ok(g.clone());
    }
    let g = Arc::new(MatrixGroup::general_linear(n, ctx)?);
    Ok(cache.lock().unwrap().entry((n, ctx.q())).or_insert(g).clone())
}

pub type MatrixLevel = IPLevel<MatrixGroup, MatrixGroup>;

fn block_level(m: usize, ctx: &Arc<FieldCtx>, affine: bool) -> Result<MatrixLevel> {
    if m == 0 {
        return Err(Error::OutOfRange("levels start at m = 1".into()));
    }
    let upper = general_linear(m + 1, ctx)?;
    let lower = general_linear(m, ctx)?;
    let mut p = Vec::new();
    let mut pi = Vec::new();
    for (x, g) in upper.elements().iter().enumerate() {
        let last_row_ok = (0..m).all(|j| g.get(m, j) == 0) && (!affine || g.get(m, m) == 1);
        if !last_row_ok {
            continue;
        }
        let rows: Vec<Vec<u8>> = (0..m).map(|i| g.row(i)[..m].to_vec()).collect();
        let a = MatGF::from_rows(&rows, ctx)?;
        p.push(x);
        pi.push(lower.index_of(&a).ok_or_else(|| Error::Internal("leading block not invertible".into()))?);
    }
    IPLevel::new(m, upper, lower, p, pi)
}

/// G_m = GL_m(F_q), P_{m+1} = [[A, b], [0, a]], π = A.
pub fn build_gl_ip_level(m: usize, ctx: &Arc<FieldCtx>) -> Result<MatrixLevel> {
    block_level(m, ctx, false)
}

/// As `build_gl_ip_level` with a = 1.
pub fn build_affine_ip_level(m: usize, ctx: &Arc<FieldCtx>) -> Result<MatrixLevel> {
    block_level(m, ctx, true)
}

pub struct WreathLevel {
    pub level: IPLevel<FiniteGroupTable, FiniteGroupTable>,
    pub upper_elements: Vec<WreathElem>,
    pub lower_elements: Vec<WreathElem>,
}

/// G_m = H ≀ S_m; P_{m+1} fixes the last coordinate; π drops it.
pub fn build_wreath_ip_level(m: usize, h: &FiniteGroupTable) -> Result<WreathLevel> {
    let (upper_elements, upper) = wreath_product(m + 1, h)?;
    let (lower_elements, lower) = wreath_product(m, h)?;
    let index: HashMap<&WreathElem, usize> = lower_elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut p = Vec::new();
    let mut pi = Vec::new();
    for (x, e) in upper_elements.iter().enumerate() {
        if e.perm[m] != m {
            continue;
        }
        let head = WreathElem { perm: e.perm[..m].to_vec(), values: e.values[..m].to_vec() };
        p.push(x);
        pi.push(index[&head]);
    }
    let level = IPLevel::new(m, Arc::new(upper), Arc::new(lower), p, pi)?;
    Ok(WreathLevel { level, upper_elements, lower_elements })
}
