//! Polynomials over F_q and irreducible enumeration by sieving.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::field::FieldCtx;
use crate::error::{Error, Result};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly(Vec<u8>);

impl FqPoly {
    pub fn new(mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly(coeffs)
    }

    pub fn one() -> Self {
        FqPoly(vec![1])
    }

    /// The polynomial t.
    pub fn x() -> Self {
        FqPoly(vec![0, 1])
    }

    /// t − a.
    pub fn linear(a: u8, f: &FieldCtx) -> Self {
        FqPoly::new(vec![f.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }

    pub fn add(&self, o: &FqPoly, f: &FieldCtx) -> FqPoly {
        let n = self.0.len().max(o.0.len());
        FqPoly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &FqPoly, f: &FieldCtx) -> FqPoly {
        let n = self.0.len().max(o.0.len());
        FqPoly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, c: u8, f: &FieldCtx) -> FqPoly {
        FqPoly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &FqPoly, f: &FieldCtx) -> FqPoly {
        if self.is_zero() || o.is_zero() {
            return FqPoly(vec![]);
        }
        let mut out = vec![0u8; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(out)
    }

    pub fn pow(&self, k: usize, f: &FieldCtx) -> FqPoly {
        (0..k).fold(FqPoly::one(), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder.
    pub fn divmod(&self, d: &FqPoly, f: &FieldCtx) -> (FqPoly, FqPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.0[dd]);
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (FqPoly(vec![]), self.clone());
        }
        let mut quot = vec![0u8; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &di) in d.0.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, di));
            }
        }
        (FqPoly::new(quot), FqPoly::new(r))
    }

    /// Parses a coefficient string low to high: "111" or "1,0,12".
    pub fn parse(text: &str, f: &FieldCtx) -> Result<FqPoly> {
        let t = text.trim();
        let coeffs: Vec<u8> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| Error::Parse(text.into()))).collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(text.into())))
                .collect::<Result<_>>()?
        };
        if coeffs.iter().any(|&c| c as u32 >= f.q()) {
            return Err(Error::Parse(format!("coefficient out of range in {text:?}")));
        }
        Ok(FqPoly::new(coeffs))
    }

    /// Coefficient string low to high (digits when all coefficients < 10).
    pub fn to_code(&self) -> String {
        if self.0.iter().all(|&c| c < 10) {
            self.0.iter().map(|c| c.to_string()).collect()
        } else {
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Index among monic polynomials of its degree: lower coefficients read
    /// as base-q digits.
    fn monic_index(&self, q: u32) -> usize {
        let d = self.degree().unwrap();
        self.0[..d].iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize)
    }

    fn monic_from_index(mut idx: usize, d: usize, q: u32) -> FqPoly {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((idx % q as usize) as u8);
            idx /= q as usize;
        }
        c.push(1);
        FqPoly(c)
    }
}

impl fmt::Display for FqPoly {
    /// Human form such as "t^2+t+1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

/// Largest q^d the sieve will enumerate.
pub const SIEVE_LIMIT: usize = 1 << 24;

/// Monic irreducible polynomials of degree `d` over F_q (t included),
/// ordered by index. Built by sieving out all products.
pub fn irreducibles(ctx: &Arc<FieldCtx>, d: usize) -> Result<Arc<Vec<FqPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, usize), Arc<Vec<FqPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (ctx.q(), d);
    if let Some(v) = cache.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let q = ctx.q();
    let size = (q as usize).checked_pow(d as u32).filter(|&s| s <= SIEVE_LIMIT).ok_or_else(|| {
        Error::SizeLimit(format!("sieving degree {d} over F_{q}"))
    })?;
    let mut composite = vec![false; size];
    for a in 1..=d / 2 {
        let small = irreducibles(ctx, a)?;
        let others = (q as usize).pow((d - a) as u32);
        for f in small.iter() {
            for gi in 0..others {
                let g = FqPoly::monic_from_index(gi, d - a, q);
                composite[f.mul(&g, ctx).monic_index(q)] = true;
            }
        }
    }
    let out: Vec<FqPoly> =
        (0..size).filter(|&i| !composite[i]).map(|i| FqPoly::monic_from_index(i, d, q)).collect();
    let out = Arc::new(if d == 0 { vec![] } else { out });
    Ok(cache.write().unwrap().entry(key).or_insert(out).clone())
}

/// Irreducible test by trial division against enumerated irreducibles.
pub fn is_irreducible(f: &FqPoly, ctx: &Arc<FieldCtx>) -> Result<bool> {
    let Some(d) = f.degree() else { return Ok(false) };
    if d == 0 {
        return Ok(false);
    }
    for a in 1..=d / 2 {
        for g in irreducibles(ctx, a)?.iter() {
            if f.divmod(g, ctx).1.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monic irreducible factorization (factor, multiplicity) by trial division.
pub fn factor(f: &FqPoly, ctx: &Arc<FieldCtx>) -> Result<Vec<(FqPoly, usize)>> {
    let mut rest = f.clone();
    let lead = *rest.coeffs().last().ok_or_else(|| Error::Internal("factor of zero".into()))?;
    rest = rest.scale(ctx.inv(lead), ctx);
    let mut out = Vec::new();
    let mut a = 1;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        if 2 * a > deg {
            out.push((rest.clone(), 1));
            break;
        }
        for g in irreducibles(ctx, a)?.iter() {
            let mut k = 0;
            loop {
                let (quot, r) = rest.divmod(g, ctx);
                if !r.is_zero() {
                    break;
                }
                rest = quot;
                k += 1;
            }
            if k > 0 {
                out.push((g.clone(), k));
            }
        }
        a += 1;
    }
    // merge a trailing irreducible cofactor that equals an earlier factor
    out.sort();
    let mut merged: Vec<(FqPoly, usize)> = Vec::new();
    for (g, k) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += k,
            _ => merged.push((g, k)),
        }
    }
    Ok(merged)
}
