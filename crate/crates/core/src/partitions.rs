//! Integer partitions, the Young lattice, semistandard tableaux and Gaussian
//! binomials.
//!
//! Partitions of a fixed size are listed in reverse-lexicographic order:
//! `(n)` first, `(1^n)` last. Every matrix indexed by partitions uses this
//! order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(30);

/// Largest degree accepted by exact operations (default 30).
pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

pub fn set_max_degree(n: usize) {
    MAX_DEGREE.store(n, Ordering::Relaxed);
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    let max = max_degree();
    if n > max {
        Err(Error::DegreeLimit { degree: n, max })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    /// Validates a weakly decreasing list of positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros; used for compositions.
    pub fn from_composition(parts: &[usize]) -> Self {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((0..cols).map(|j| self.0.iter().take_while(|&&p| p > j).count()).collect())
    }

    /// n(λ) = Σ (k−1) λ_k.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(k, &p)| k * p).sum()
    }

    /// Hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + conj.part(j) - i - 1);
            }
        }
        out
    }

    /// m_i(λ) for i = 1..=λ_1, as a vector indexed by `i - 1`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0)];
        for &p in &self.0 {
            m[p - 1] += 1;
        }
        m
    }

    /// All partitions obtained by adding one box, top row first.
    pub fn covers_up(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut v = self.0.clone();
                if i == v.len() {
                    v.push(1);
                } else {
                    v[i] += 1;
                }
                out.push(Partition(v));
            }
        }
        out
    }

    /// All partitions obtained by removing one box.
    pub fn covers_down(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut v = self.0.clone();
                v[i] -= 1;
                if v[i] == 0 {
                    v.pop();
                }
                out.push(Partition(v));
            }
        }
        out
    }

    /// Column (1-based) of the box of `bigger / self`, if `bigger` covers `self`.
    pub fn added_box_column(&self, bigger: &Partition) -> Option<usize> {
        if bigger.size() != self.size() + 1 {
            return None;
        }
        let mut col = None;
        for i in 0..bigger.len() {
            let (a, b) = (self.part(i), bigger.part(i));
            if b == a + 1 && col.is_none() {
                col = Some(b);
            } else if b != a {
                return None;
            }
        }
        col
    }

    /// Dominance order: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses "3,1,1"; "-" or "" is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn partitions_bounded(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        partitions_bounded(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// Partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    Ok(partition_index(n)?.list.clone())
}

/// Reverse-lex list of partitions of one degree plus a position lookup.
#[derive(Debug)]
pub struct PartitionIndex {
    pub list: Vec<Partition>,
    pos: HashMap<Partition, usize>,
}

impl PartitionIndex {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.pos.get(p).copied()
    }
}

/// Shared, built-once index of the partitions of `n`.
pub fn partition_index(n: usize) -> Result<Arc<PartitionIndex>> {
    check_degree(n)?;
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<PartitionIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ix) = cache.read().unwrap().get(&n) {
        return Ok(ix.clone());
    }
    let mut list = Vec::new();
    partitions_bounded(n, n, &mut Vec::new(), &mut list);
    let pos = list.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let ix = Arc::new(PartitionIndex { list, pos });
    Ok(cache.write().unwrap().entry(n).or_insert(ix).clone())
}

/// Gaussian binomial [n choose m]_q by the product formula. At q = 1 the
/// ordinary binomial is returned.
pub fn gaussian_binomial(n: usize, m: usize, q: &Rational) -> Result<Rational> {
    if m > n {
        return Err(Error::OutOfRange(format!("m = {m} > n = {n}")));
    }
    if q.is_one() {
        return Ok(Rational::from_integer(binomial(n, m)));
    }
    let one = Rational::one();
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= (&one - pow(q, (n - i) as i64)) / (&one - pow(q, (i + 1) as i64));
    }
    Ok(acc)
}

/// Gaussian binomial as integer polynomial coefficients in q, low degree first.
pub fn gaussian_binomial_poly(n: usize, m: usize) -> Result<Vec<BigInt>> {
    if m > n {
        return Err(Error::OutOfRange(format!("m = {m} > n = {n}")));
    }
    // [n,m] = [n-1,m-1] + q^m [n-1,m]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for nn in 1..=n {
        let mut next = Vec::with_capacity(nn + 1);
        for mm in 0..=nn {
            let mut c = vec![BigInt::zero(); mm * (nn - mm) + 1];
            if mm > 0 {
                for (i, x) in row[mm - 1].iter().enumerate() {
                    c[i] += x;
                }
            }
            if mm < nn {
                for (i, x) in row[mm].iter().enumerate() {
                    c[i + mm] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Ok(row.swap_remove(m))
}

pub fn binomial(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigInt::one();
    for i in 0..m {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// A semistandard tableau stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub shape: Partition,
    pub content: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn is_semistandard(&self) -> bool {
        if self.rows.len() != self.shape.len() {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape.part(i) || row.iter().any(|&x| x == 0) {
                return false;
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if i > 0 && row.iter().enumerate().any(|(j, &x)| self.rows[i - 1][j] >= x) {
                return false;
            }
        }
        let mut counts = vec![0usize; self.content.len()];
        for &x in self.rows.iter().flatten() {
            if x > counts.len() {
                return false;
            }
            counts[x - 1] += 1;
        }
        counts == self.content.parts()
    }

    /// Rows from bottom to top, each read left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Shape occupied by entries `<= v`.
    pub fn sub_shape(&self, v: usize) -> Partition {
        Partition(self.rows.iter().map(|r| r.iter().filter(|&&x| x <= v).count()).filter(|&c| c > 0).collect())
    }
}

/// Recursively places horizontal strips: value `v` fills `strip` cells.
fn ssyt_rec(
    shape: &Partition,
    content: &[usize],
    v: usize,
    cur: &mut Vec<usize>,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if v == content.len() {
        if cur.as_slice() == shape.parts() {
            out.push(rows.clone());
        }
        return;
    }
    let need = content[v];
    let nrows = shape.len();
    // choose how many cells of value v+1 go into each row
    let mut add = vec![0usize; nrows];
    fn place(
        i: usize,
        left: usize,
        shape: &Partition,
        cur: &[usize],
        add: &mut Vec<usize>,
        cb: &mut dyn FnMut(&[usize]),
    ) {
        if i == add.len() {
            if left == 0 {
                cb(add);
            }
            return;
        }
        let cap_shape = shape.part(i) - cur[i];
        let cap_strip = if i == 0 { usize::MAX } else { cur[i - 1] - cur[i] };
        let cap = cap_shape.min(cap_strip).min(left);
        for a in (0..=cap).rev() {
            add[i] = a;
            place(i + 1, left - a, shape, cur, add, cb);
        }
        add[i] = 0;
    }
    let snapshot = cur.clone();
    let mut choices: Vec<Vec<usize>> = Vec::new();
    place(0, need, shape, &snapshot, &mut add, &mut |a| choices.push(a.to_vec()));
    for a in choices {
        for (i, &k) in a.iter().enumerate() {
            cur[i] += k;
            rows[i].extend(std::iter::repeat(v + 1).take(k));
        }
        ssyt_rec(shape, content, v + 1, cur, rows, out);
        for (i, &k) in a.iter().enumerate() {
            cur[i] -= k;
            let l = rows[i].len();
            rows[i].truncate(l - k);
        }
    }
}

/// All semistandard tableaux of the given shape and content.
pub fn enumerate_ssyt(shape: &Partition, content: &Partition) -> Result<Vec<Tableau>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch(format!("|{shape}| != |{content}|")));
    }
    let mut raw = Vec::new();
    let mut cur = vec![0; shape.len()];
    let mut rows = vec![Vec::new(); shape.len()];
    ssyt_rec(shape, content.parts(), 0, &mut cur, &mut rows, &mut raw);
    Ok(raw
        .into_iter()
        .map(|rows| Tableau { shape: shape.clone(), content: content.clone(), rows })
        .collect())
}

/// Same enumeration for an arbitrary composition as content (entries may
/// skip values). Only the count is returned.
pub fn count_ssyt_composition(shape: &Partition, content: &[usize]) -> usize {
    if shape.size() != content.iter().sum::<usize>() {
        return 0;
    }
    let mut raw = Vec::new();
    let mut cur = vec![0; shape.len()];
    let mut rows = vec![Vec::new(); shape.len()];
    ssyt_rec(shape, content, 0, &mut cur, &mut rows, &mut raw);
    raw.len()
}
