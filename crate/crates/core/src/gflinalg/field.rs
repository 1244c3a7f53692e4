//! Finite fields with q ≤ 256 by lookup tables.
//!
//! An element of F_{p^e} is stored as the integer Σ c_i p^i standing for the
//! polynomial Σ c_i x^i modulo the defining polynomial below.
//!
//! | q | defining polynomial (low to high) |
//! |---|---|
//! | 4 | x²+x+1 |
//! | 8 | x³+x+1 |
//! | 16 | x⁴+x+1 |
//! | 32 | x⁵+x²+1 |
//! | 64 | x⁶+x⁴+x³+x+1 |
//! | 128 | x⁷+x+1 |
//! | 256 | x⁸+x⁴+x³+x²+1 |
//! | 9 | x²+2x+2 |
//! | 27 | x³+2x+1 |
//! | 81 | x⁴+2x³+2 |
//! | 243 | x⁵+2x+1 |
//! | 25 | x²+4x+2 |
//! | 125 | x³+3x+3 |
//! | 49 | x²+6x+3 |
//! | 121 | x²+7x+2 |
//! | 169 | x²+12x+2 |
//!
//! These are the Conway polynomials; x is a primitive element in each case.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Defining polynomials, coefficients low to high, monic.
pub const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, e)` with `q = p^e`, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, e))
}

#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    modulus: Vec<u32>,
}

impl FieldCtx {
    /// Shared context for F_q; q must be a supported prime power ≤ 256.
    pub fn new(q: u32) -> Result<Arc<FieldCtx>> {
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.read().unwrap().get(&q) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(q)?);
        Ok(cache.write().unwrap().entry(q).or_insert(f).clone())
    }

    fn build(q: u32) -> Result<FieldCtx> {
        if q > 256 {
            return Err(Error::UnsupportedField(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        let modulus: Vec<u32> = if e == 1 {
            vec![0, 1]
        } else {
            CONWAY
                .iter()
                .find(|(pp, ee, _)| *pp == p && *ee == e)
                .map(|(_, _, m)| m.to_vec())
                .ok_or(Error::UnsupportedField(q))?
        };
        let digits = |mut a: u32| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s) as u8;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce modulo the monic defining polynomial
                for k in (e as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (i, &m) in modulus.iter().enumerate() {
                        let idx = k - e as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[a as usize * qs + b as usize] = undigits(&prod[..e as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (0..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or_else(|| Error::Internal(format!("no inverse for {a} in F_{q}")))? as u8;
            }
        }
        let f = FieldCtx { p, e, q, add, mul, neg, inv, modulus };
        f.spot_check()?;
        Ok(f)
    }

    /// Associativity and distributivity on all triples (q ≤ 16) or on a
    /// fixed sample.
    fn spot_check(&self) -> Result<()> {
        let q = self.q;
        let triples: Box<dyn Iterator<Item = (u8, u8, u8)>> = if q <= 16 {
            Box::new((0..q).flat_map(move |a| {
                (0..q).flat_map(move |b| (0..q).map(move |c| (a as u8, b as u8, c as u8)))
            }))
        } else {
            let mut s: u64 = 0x9e3779b97f4a7c15;
            Box::new((0..4000).map(move |_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let x = (s >> 33) as u32;
                ((x % q) as u8, ((x / q) % q) as u8, ((x / (q * q)) % q) as u8)
            }))
        };
        for (a, b, c) in triples {
            let ok = self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
            if !ok {
                return Err(Error::Internal(format!("field axioms fail in F_{q} at {a},{b},{c}")));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Defining polynomial, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// The element x of F_{p^e} (equal to p as an integer code, or 1 when e = 1).
    pub fn generator_candidate(&self) -> u8 {
        if self.e == 1 {
            (2..self.q).find(|&g| self.order(g as u8) == self.q - 1).unwrap_or(1) as u8
        } else {
            self.p as u8
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u8) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
