//! Schubert symbols and cells of finite Grassmannians.
//!
//! For a k-dimensional E ⊆ F_q^n and the principal flag V_i = span(e_1..e_i),
//! the symbol is ε_i = dim(E ∩ V_i) − dim(E ∩ V_{i−1}). With positions
//! indexed 1..n, the cell of ε has q^{Σ iε_i − k(k+1)/2} points: the
//! offset k(k+1)/2 is the dimension of the cell (1,…,1,0,…,0), which is a
//! single point.
//!
//! Worked example, Gr_1(F_2^2): span(e_1) has ε = (1,0), dimension 1, size
//! 2^{1−1} = 1; the two lines span(e_2), span(e_1+e_2) have ε = (0,1),
//! dimension 2, size 2^{2−1} = 2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gflinalg::matrix::row_echelon;
use crate::gflinalg::{subspaces_of_dim, FieldCtx};
use crate::partitions::gaussian_binomial;
use crate::rational::{pow, Rational};

/// Value of every position beyond the stored word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    #[default]
    Zeros,
    Ones,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertSymbol {
    pub word: Vec<u8>,
    #[serde(default)]
    pub tail: Tail,
}

impl SchubertSymbol {
    pub fn new(word: Vec<u8>, tail: Tail) -> Result<Self> {
        if word.iter().any(|&x| x > 1) {
            return Err(Error::Parse(format!("symbol entries must be 0 or 1: {word:?}")));
        }
        Ok(SchubertSymbol { word, tail })
    }

    pub fn finite(word: Vec<u8>) -> Result<Self> {
        Self::new(word, Tail::Zeros)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.word.iter().filter(|&&x| x == 1).count()
    }

    /// Σ i·ε_i over the stored word.
    pub fn weighted_sum(&self) -> u64 {
        self.word.iter().enumerate().map(|(i, &e)| (i as u64 + 1) * e as u64).sum()
    }

    /// All words of length n with k ones, tail zero.
    pub fn all(n: usize, k: usize) -> Vec<SchubertSymbol> {
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| SchubertSymbol { word: (0..n).map(|i| ((m >> i) & 1) as u8).collect(), tail: Tail::Zeros })
            .collect()
    }
}

impl fmt::Display for SchubertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: String = self.word.iter().map(|x| x.to_string()).collect();
        match self.tail {
            Tail::Zeros => write!(f, "{w}"),
            Tail::Ones => write!(f, "{w}(1)"),
        }
    }
}

impl FromStr for SchubertSymbol {
    type Err = Error;
    /// "0110", with a trailing "(1)" for an all-ones tail.
    fn from_str(s: &str) -> Result<Self> {
        let (w, tail) = match s.strip_suffix("(1)") {
            Some(w) => (w, Tail::Ones),
            None => (s, Tail::Zeros),
        };
        let word = w
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad symbol {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(word, tail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellDim {
    Finite(u64),
    Infinite,
}

/// Σ i·ε_i; infinite when the tail is all ones.
pub fn cell_dimension(e: &SchubertSymbol) -> CellDim {
    match e.tail {
        Tail::Zeros => CellDim::Finite(e.weighted_sum()),
        Tail::Ones => CellDim::Infinite,
    }
}

/// Number of points of the cell of `e` in Gr_k(F_q^n), n = |word|.
pub fn finite_cell_size(e: &SchubertSymbol, q: &Rational) -> Result<Rational> {
    if e.tail != Tail::Zeros {
        return Err(Error::OutOfRange("finite cell sizes need a zero tail".into()));
    }
    let k = e.ones() as u64;
    Ok(pow(q, (e.weighted_sum() - k * (k + 1) / 2) as i64))
}

/// q^{Σ i(ε_i − ε′_i)} for congruent symbols.
pub fn cocycle(e: &SchubertSymbol, f: &SchubertSymbol, q: &Rational) -> Result<Rational> {
    if e.len() != f.len() || e.tail != f.tail {
        return Err(Error::NotCongruent(format!("{e} and {f} have different shapes")));
    }
    if e.ones() != f.ones() {
        return Err(Error::NotCongruent(format!("{e} and {f} have different numbers of ones")));
    }
    Ok(pow(q, e.weighted_sum() as i64 - f.weighted_sum() as i64))
}

/// Symbol of the row space of an echelon basis in F_q^n.
pub fn symbol_of(rows: &[Vec<u8>], n: usize, ctx: &FieldCtx) -> SchubertSymbol {
    let k = rows.len();
    // dim(E ∩ V_i) = k − rank of E projected onto coordinates i+1..n
    let inter = |i: usize| -> usize {
        let mut tail: Vec<Vec<u8>> = rows.iter().map(|r| r[i..].to_vec()).collect();
        k - if i == n { 0 } else { row_echelon(&mut tail, ctx).len() }
    };
    let dims: Vec<usize> = (0..=n).map(inter).collect();
    SchubertSymbol { word: (1..=n).map(|i| (dims[i] - dims[i - 1]) as u8).collect(), tail: Tail::Zeros }
}

/// Brute-force cell sizes of Gr_k(F_q^n).
pub fn enumerate_schubert_cells(n: usize, k: usize, ctx: &Arc<FieldCtx>) -> Result<BTreeMap<SchubertSymbol, BigInt>> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let spaces = subspaces_of_dim(n, k, ctx)?;
    Ok(spaces
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<SchubertSymbol, BigInt>, w| {
            *acc.entry(symbol_of(&w.rows, n, ctx)).or_insert_with(BigInt::zero) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (s, c) in b {
                *a.entry(s).or_insert_with(BigInt::zero) += c;
            }
            a
        }))
}

/// Σ_m C(n,m)_q α1^m α2^{n−m}.
pub fn grassmann_mass(n: usize, a1: &Rational, a2: &Rational, q: &Rational) -> Result<Rational> {
    (0..=n)
        .map(|m| Ok(gaussian_binomial(n, m, q)? * pow(a1, m as i64) * pow(a2, (n - m) as i64)))
        .sum()
}

/// The same mass summed symbol by symbol: α1 per one, α2 per zero, times
/// the cell size.
pub fn grassmann_mass_by_symbols(n: usize, a1: &Rational, a2: &Rational, q: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in 0..=n {
        for e in SchubertSymbol::all(n, k) {
            acc += finite_cell_size(&e, q)? * pow(a1, k as i64) * pow(a2, (n - k) as i64);
        }
    }
    Ok(acc)
}

/// Weighted paths from the origin to (n−k, k); a vertical edge leaving
/// column j has weight q^j.
pub fn pascal_q_paths(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange(format!("vertex ({}, {k}) is outside the triangle", n as i64 - k as i64)));
    }
    let w = n - k;
    // row[x] = weight of paths to (x, y) for the current y
    let mut row: Vec<Rational> = vec![Rational::one(); w + 1];
    for _ in 0..k {
        let mut next: Vec<Rational> = Vec::with_capacity(w + 1);
        for x in 0..=w {
            let up = pow(q, x as i64) * &row[x];
            let left = if x == 0 { Rational::zero() } else { next[x - 1].clone() };
            next.push(up + left);
        }
        row = next;
    }
    Ok(row[w].clone())
}

/// Probability that a Bernoulli(α) symbol starts with `prefix`.
pub fn bernoulli_symbol_measure(alpha: &Rational, prefix: &[u8]) -> Result<Rational> {
    if *alpha < Rational::zero() || *alpha > Rational::one() {
        return Err(Error::OutOfRange("alpha must lie in [0, 1]".into()));
    }
    let beta = Rational::one() - alpha;
    prefix
        .iter()
        .map(|&e| match e {
            1 => Ok(alpha.clone()),
            0 => Ok(beta.clone()),
            _ => Err(Error::Parse("symbol entries must be 0 or 1".into())),
        })
        .product()
}
