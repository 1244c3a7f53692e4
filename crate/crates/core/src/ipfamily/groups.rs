//! Finite groups by element index.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gflinalg::{FieldCtx, MatGF};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Largest group enumerated by the constructors here.
pub const GROUP_LIMIT: usize = 1_000_000;

/// Largest order for which associativity is checked on all triples.
pub const EXHAUSTIVE_AXIOMS: usize = 200;

pub trait FiniteGroup: Send + Sync {
    /// Distinguishes groups in group-algebra arithmetic.
    fn id(&self) -> u64;
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn label(&self, a: usize) -> String;

    fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }
}

/// Group with full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    id: u64,
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroupTable {
    /// Builds the table of the group generated by closing `elements`
    /// (which must already be the whole group) under `mul`.
    pub fn from_elements<T, F>(elements: Vec<T>, mul: F, label: impl Fn(&T) -> String) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        if n == 0 || n > GROUP_LIMIT || n.saturating_mul(n) > 1 << 28 {
            return Err(Error::SizeLimit(format!("group table of order {n}")));
        }
        let index: HashMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = index
                    .get(&mul(a, b))
                    .ok_or_else(|| Error::Internal("element list is not closed under multiplication".into()))?;
                table[i * n + j] = *c as u32;
            }
        }
        let labels = elements.iter().map(label).collect();
        Self::from_table(n, table, labels)
    }

    pub fn from_table(n: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| Error::Internal("no identity element".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| Error::Internal(format!("element {a} has no inverse")))? as u32;
        }
        let g = FiniteGroupTable { id: fresh_id(), n, table, inverse, identity, labels };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= EXHAUSTIVE_AXIOMS {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            let mut s: u64 = 0x2545f4914f6cdd1d;
            Box::new((0..20000).map(move |_| {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize)
            }))
        };
        for (a, b, c) in triples {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Internal(format!("associativity fails at ({a}, {b}, {c})")));
            }
        }
        Ok(())
    }

    /// Z/k.
    pub fn cyclic(k: usize) -> Result<Self> {
        Self::from_elements((0..k).collect(), |a, b| (a + b) % k, |a| a.to_string())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }
}

impl FiniteGroup for FiniteGroupTable {
    fn id(&self) -> u64 {
        self.id
    }

    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

/// A matrix group multiplied on demand and indexed by hashing.
#[derive(Debug)]
pub struct MatrixGroup {
    id: u64,
    elements: Vec<MatGF>,
    index: HashMap<MatGF, usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl MatrixGroup {
    pub fn new(elements: Vec<MatGF>) -> Result<Self> {
        if elements.is_empty() || elements.len() > GROUP_LIMIT {
            return Err(Error::SizeLimit(format!("matrix group of order {}", elements.len())));
        }
        let n = elements[0].nrows();
        let index: HashMap<MatGF, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let id_m = MatGF::identity(n, elements[0].field());
        let identity = *index.get(&id_m).ok_or_else(|| Error::Internal("identity missing".into()))?;
        let inverse = elements
            .iter()
            .map(|m| {
                let inv = m.inverse()?;
                index.get(&inv).copied().ok_or_else(|| Error::Internal("inverse missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixGroup { id: fresh_id(), elements, index, identity, inverse })
    }

    /// GL_n(F_q) by enumerating all invertible matrices.
    pub fn general_linear(n: usize, ctx: &Arc<FieldCtx>) -> Result<Self> {
        let q = ctx.q() as u64;
        let total = q
            .checked_pow((n * n) as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::SizeLimit(format!("GL_{n}(F_{q})")))?;
        let elements: Vec<MatGF> = (0..total)
            .filter_map(|mut code| {
                let mut m = MatGF::zeros(n, n, ctx);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, (code % q) as u8);
                        code /= q;
                    }
                }
                m.is_invertible().then_some(m)
            })
            .collect();
        Self::new(elements)
    }

    pub fn element(&self, a: usize) -> &MatGF {
        &self.elements[a]
    }

    pub fn elements(&self) -> &[MatGF] {
        &self.elements
    }

    pub fn index_of(&self, m: &MatGF) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }
}

impl FiniteGroup for MatrixGroup {
    fn id(&self) -> u64 {
        self.id
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn label(&self, a: usize) -> String {
        self.elements[a].to_string()
    }
}

/// Element of H ≀ S_n as a monomial matrix: row i has value values[i] in
/// column perm[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElem {
    pub perm: Vec<usize>,
    pub values: Vec<usize>,
}

impl WreathElem {
    /// Matrix product: row i of xy has value x_i·y_{σ(i)} in column τ(σ(i)).
    pub fn mul(&self, other: &WreathElem, h: &dyn FiniteGroup) -> WreathElem {
        let perm = self.perm.iter().map(|&s| other.perm[s]).collect();
        let values = self.values.iter().zip(&self.perm).map(|(&v, &s)| h.mul(v, other.values[s])).collect();
        WreathElem { perm, values }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut v = t.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Elements of H ≀ S_n in a fixed order, and the table.
pub fn wreath_product(n: usize, h: &FiniteGroupTable) -> Result<(Vec<WreathElem>, FiniteGroupTable)> {
    let size = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).and_then(|f| {
        h.order().checked_pow(n as u32).and_then(|x| x.checked_mul(f))
    });
    if size.is_none_or(|s| s > 20000) {
        return Err(Error::SizeLimit(format!("wreath product of order |H|^{n}·{n}!")));
    }
    let elements: Vec<WreathElem> = permutations(n)
        .into_iter()
        .flat_map(|perm| tuples(n, h.order()).into_iter().map(move |values| WreathElem { perm: perm.clone(), values }))
        .collect();
    let table = FiniteGroupTable::from_elements(elements.clone(), |a, b| a.mul(b, h), |e| format!("{:?}|{:?}", e.perm, e.values))?;
    Ok((elements, table))
}
