//! Vectors over F_q (bit-packed when q = 2) and incremental echelon bases.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::field::FieldCtx;

/// Vector arithmetic for one fixed ambient length.
pub trait VecSpace: Send + Sync {
    type V: Clone + Send + Sync + PartialEq;
    fn zero(&self) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
    /// Lowest index with a nonzero entry.
    fn pivot(&self, v: &Self::V) -> Option<usize>;
    fn get(&self, v: &Self::V, i: usize) -> u8;
    fn set(&self, v: &mut Self::V, i: usize, x: u8);
    /// y ← y + a·x.
    fn axpy(&self, y: &mut Self::V, a: u8, x: &Self::V);
    fn scale(&self, v: &mut Self::V, a: u8);
    fn neg(&self, a: u8) -> u8;
    fn inv(&self, a: u8) -> u8;
    /// Indices of nonzero entries, with values.
    fn nonzeros(&self, v: &Self::V) -> Vec<(usize, u8)>;
    /// Lowest index `>= from` with a nonzero entry.
    fn next_nonzero(&self, v: &Self::V, from: usize) -> Option<usize>;
}

/// F_2 vectors packed in u64 words.
#[derive(Clone, Debug)]
pub struct Gf2Space {
    pub words: usize,
}

impl Gf2Space {
    pub fn new(len: usize) -> Self {
        Gf2Space { words: len.div_ceil(64).max(1) }
    }
}

impl VecSpace for Gf2Space {
    type V = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn is_zero(&self, v: &Vec<u64>) -> bool {
        v.iter().all(|&w| w == 0)
    }

    fn pivot(&self, v: &Vec<u64>) -> Option<usize> {
        v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    fn get(&self, v: &Vec<u64>, i: usize) -> u8 {
        ((v[i / 64] >> (i % 64)) & 1) as u8
    }

    #[inline]
    fn set(&self, v: &mut Vec<u64>, i: usize, x: u8) {
        if x & 1 == 1 {
            v[i / 64] |= 1 << (i % 64);
        } else {
            v[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    fn axpy(&self, y: &mut Vec<u64>, a: u8, x: &Vec<u64>) {
        if a & 1 == 1 {
            for (w, u) in y.iter_mut().zip(x) {
                *w ^= u;
            }
        }
    }

    fn scale(&self, v: &mut Vec<u64>, a: u8) {
        if a == 0 {
            v.iter_mut().for_each(|w| *w = 0);
        }
    }

    fn neg(&self, a: u8) -> u8 {
        a
    }

    fn inv(&self, a: u8) -> u8 {
        assert!(a == 1);
        1
    }

    fn nonzeros(&self, v: &Vec<u64>) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (k, &w) in v.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push((k * 64 + b, 1));
                w &= w - 1;
            }
        }
        out
    }

    fn next_nonzero(&self, v: &Vec<u64>, from: usize) -> Option<usize> {
        let mut k = from / 64;
        if k >= v.len() {
            return None;
        }
        let mut w = v[k] & (!0u64 << (from % 64));
        loop {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
            k += 1;
            if k == v.len() {
                return None;
            }
            w = v[k];
        }
    }
}

/// Dense vectors over a general table field.
#[derive(Clone, Debug)]
pub struct FqSpace {
    pub len: usize,
    pub field: Arc<FieldCtx>,
}

impl VecSpace for FqSpace {
    type V = Vec<u8>;

    fn zero(&self) -> Vec<u8> {
        vec![0; self.len]
    }

    fn is_zero(&self, v: &Vec<u8>) -> bool {
        v.iter().all(|&x| x == 0)
    }

    fn pivot(&self, v: &Vec<u8>) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    fn get(&self, v: &Vec<u8>, i: usize) -> u8 {
        v[i]
    }

    fn set(&self, v: &mut Vec<u8>, i: usize, x: u8) {
        v[i] = x;
    }

    fn axpy(&self, y: &mut Vec<u8>, a: u8, x: &Vec<u8>) {
        if a == 0 {
            return;
        }
        let f = &self.field;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = f.add(*yi, f.mul(a, xi));
            }
        }
    }

    fn scale(&self, v: &mut Vec<u8>, a: u8) {
        let f = &self.field;
        v.iter_mut().for_each(|x| *x = f.mul(*x, a));
    }

    fn neg(&self, a: u8) -> u8 {
        self.field.neg(a)
    }

    fn inv(&self, a: u8) -> u8 {
        self.field.inv(a)
    }

    fn nonzeros(&self, v: &Vec<u8>) -> Vec<(usize, u8)> {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
    }

    fn next_nonzero(&self, v: &Vec<u8>, from: usize) -> Option<usize> {
        (from..v.len()).find(|&i| v[i] != 0)
    }
}

/// A subspace held as vectors with distinct pivots (pivot entry 1).
#[derive(Clone, Debug)]
pub struct Echelon<S: VecSpace> {
    rows: BTreeMap<usize, S::V>,
}

impl<S: VecSpace> Default for Echelon<S> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<S: VecSpace> Echelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, sp: &S, v: &mut S::V) {
        let mut from = 0;
        loop {
            let Some(p) = sp.next_nonzero(v, from) else { return };
            if let Some(row) = self.rows.get(&p) {
                let c = sp.neg(sp.get(v, p));
                sp.axpy(v, c, row);
            }
            from = p + 1;
        }
    }

    pub fn contains(&self, sp: &S, v: &S::V) -> bool {
        let mut w = v.clone();
        self.reduce(sp, &mut w);
        sp.is_zero(&w)
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, sp: &S, v: &S::V) -> bool {
        let mut w = v.clone();
        self.reduce(sp, &mut w);
        match sp.pivot(&w) {
            None => false,
            Some(p) => {
                let c = sp.inv(sp.get(&w, p));
                sp.scale(&mut w, c);
                self.rows.insert(p, w);
                true
            }
        }
    }

    pub fn basis(&self) -> impl Iterator<Item = &S::V> {
        self.rows.values()
    }
}

/// Rank of bit-packed rows over F_2 (rows are consumed).
pub fn rank_gf2(rows: &mut [Vec<u64>], ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] & b != 0) else { continue };
        rows.swap(p, r);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
