//! Dense matrices over F_q.

use std::fmt;
use std::sync::Arc;

use super::field::FieldCtx;
use super::poly::FqPoly;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct MatGF {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
    field: Arc<FieldCtx>,
}

impl PartialEq for MatGF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.q() == other.q()
    }
}

impl Eq for MatGF {}

impl std::hash::Hash for MatGF {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.rows.hash(h);
        self.cols.hash(h);
        self.data.hash(h);
    }
}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatGF[F_{}]({})", self.q(), self)
    }
}

impl fmt::Display for MatGF {
    /// Rows separated by ';'; digits when q ≤ 10, else comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r = self.row(i);
                if self.q() <= 10 {
                    r.iter().map(|x| x.to_string()).collect::<String>()
                } else {
                    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl MatGF {
    pub fn zeros(rows: usize, cols: usize, field: &Arc<FieldCtx>) -> Self {
        MatGF { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(n: usize, field: &Arc<FieldCtx>) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], field: &Arc<FieldCtx>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|&x| x as u32 >= field.q()) {
            return Err(Error::Parse(format!("entry out of range for F_{}", field.q())));
        }
        Ok(MatGF { rows: r, cols: c, data: rows.concat(), field: field.clone() })
    }

    /// Parses "110;010;001" (or comma-separated entries per row).
    pub fn parse(text: &str, field: &Arc<FieldCtx>) -> Result<Self> {
        let rows = text
            .trim()
            .split(';')
            .map(|r| {
                let r = r.trim();
                if r.contains(',') {
                    r.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| Error::Parse(text.into()))).collect()
                } else {
                    r.chars()
                        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(text.into())))
                        .collect::<Result<Vec<u8>>>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows, field)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Self::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn add(&self, other: &MatGF) -> MatGF {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        MatGF { data, ..self.clone() }
    }

    pub fn sub(&self, other: &MatGF) -> MatGF {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        MatGF { data, ..self.clone() }
    }

    pub fn scale(&self, c: u8) -> MatGF {
        let f = &self.field;
        MatGF { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn pow(&self, mut k: usize) -> MatGF {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows, &self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> MatGF {
        let mut out = Self::zeros(self.cols, self.rows, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Rank; q = 2 uses word-packed rows.
    pub fn rank(&self) -> usize {
        if self.q() == 2 {
            let words = self.cols.div_ceil(64).max(1);
            let mut rows: Vec<Vec<u64>> = (0..self.rows)
                .map(|i| {
                    let mut w = vec![0u64; words];
                    for (j, &x) in self.row(i).iter().enumerate() {
                        if x != 0 {
                            w[j / 64] |= 1 << (j % 64);
                        }
                    }
                    w
                })
                .collect();
            return super::echelon::rank_gf2(&mut rows, self.cols);
        }
        row_echelon(&mut self.data.chunks(self.cols).map(|r| r.to_vec()).collect(), &self.field).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn block_diag(blocks: &[MatGF]) -> MatGF {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m, &blocks[0].field);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Companion matrix of a monic polynomial (ones on the subdiagonal,
    /// negated coefficients in the last column).
    pub fn companion(f: &FqPoly, field: &Arc<FieldCtx>) -> MatGF {
        let d = f.degree().expect("companion of zero polynomial");
        let mut m = Self::zeros(d, d, field);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f.coeff(i)));
        }
        m
    }

    /// f(self) by Horner's rule.
    pub fn eval_poly(&self, f: &FqPoly) -> MatGF {
        let mut acc = Self::zeros(self.rows, self.cols, &self.field);
        let id = Self::identity(self.rows, &self.field);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&id.scale(*c));
        }
        acc
    }

    /// Determinant by elimination.
    pub fn det(&self) -> u8 {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut a: Vec<Vec<u8>> = self.data.chunks(n).map(|r| r.to_vec()).collect();
        let mut det = 1u8;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
            if p != c {
                a.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, a[c][c]);
            let inv = f.inv(a[c][c]);
            for r in c + 1..n {
                if a[r][c] == 0 {
                    continue;
                }
                let factor = f.mul(a[r][c], inv);
                for k in c..n {
                    let v = f.mul(factor, a[c][k]);
                    a[r][k] = f.sub(a[r][k], v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<MatGF> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let f = &self.field;
        let n = self.rows;
        let mut a: Vec<Vec<u8>> = self.data.chunks(n).map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r][c] != 0).ok_or(Error::Singular)?;
            a.swap(p, c);
            inv.swap(p, c);
            let s = f.inv(a[c][c]);
            for k in 0..n {
                a[c][k] = f.mul(a[c][k], s);
                inv[c][k] = f.mul(inv[c][k], s);
            }
            for r in 0..n {
                if r != c && a[r][c] != 0 {
                    let factor = a[r][c];
                    for k in 0..n {
                        let x = f.mul(factor, a[c][k]);
                        a[r][k] = f.sub(a[r][k], x);
                        let y = f.mul(factor, inv[c][k]);
                        inv[r][k] = f.sub(inv[r][k], y);
                    }
                }
            }
        }
        MatGF::from_rows(&inv, f)
    }

    /// Characteristic polynomial det(xI − A) via reduction to Hessenberg form.
    pub fn char_poly(&self) -> FqPoly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut h: Vec<Vec<u8>> = self.data.chunks(n).map(|r| r.to_vec()).collect();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let inv = f.inv(h[j + 1][j]);
            for k in j + 2..n {
                if h[k][j] == 0 {
                    continue;
                }
                let u = f.mul(h[k][j], inv);
                for c in 0..n {
                    let v = f.mul(u, h[j + 1][c]);
                    h[k][c] = f.sub(h[k][c], v);
                }
                for row in h.iter_mut() {
                    let v = f.mul(u, row[k]);
                    row[j + 1] = f.add(row[j + 1], v);
                }
            }
        }
        // p_k = (x − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{m=i+1}^{k} h_{m,m−1}) p_{i−1}
        let mut polys: Vec<FqPoly> = vec![FqPoly::one()];
        for k in 0..n {
            let x_minus = FqPoly::new(vec![f.neg(h[k][k]), 1]);
            let mut pk = polys[k].mul(&x_minus, f);
            let mut prod = 1u8;
            for i in (0..k).rev() {
                prod = f.mul(prod, h[i + 1][i]);
                let c = f.mul(prod, h[i][k]);
                if c != 0 {
                    pk = pk.sub(&polys[i].scale(c, f), f);
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }
}

/// Row-reduces `rows` in place to reduced echelon form and returns the
/// nonzero rows.
pub fn row_echelon(rows: &mut Vec<Vec<u8>>, f: &FieldCtx) -> Vec<Vec<u8>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(p, r);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for k in 0..ncols {
                    let v = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], v);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.clone()
}
