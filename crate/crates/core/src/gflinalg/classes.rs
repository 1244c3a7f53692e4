//! Jordan types of unipotent matrices and conjugacy-class types.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::FieldCtx;
use super::matrix::MatGF;
use super::poly::{factor, is_irreducible, FqPoly};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Partition whose conjugate has column lengths given by successive
/// nullity jumps `nu[k] - nu[k-1]` divided by `d`.
fn partition_from_nullities(nu: &[usize], d: usize) -> Result<Partition> {
    let mut cols = Vec::new();
    let mut prev = 0;
    for &x in nu {
        if x == prev {
            break;
        }
        let jump = x - prev;
        if jump % d != 0 {
            return Err(Error::Internal(format!("nullity jump {jump} not divisible by {d}")));
        }
        cols.push(jump / d);
        prev = x;
    }
    Ok(Partition::new(cols)?.conjugate())
}

/// Jordan type of a unipotent matrix from the nullities of (u − I)^k.
pub fn jordan_type_unipotent(u: &MatGF) -> Result<Partition> {
    if !u.is_square() {
        return Err(Error::SizeMismatch("matrix is not square".into()));
    }
    let n = u.nrows();
    let nil = u.sub(&MatGF::identity(n, u.field()));
    let mut pw = MatGF::identity(n, u.field());
    let mut nu = Vec::with_capacity(n);
    for _ in 0..n {
        pw = pw.mul(&nil);
        let k = pw.nullity();
        nu.push(k);
        if k == n {
            break;
        }
    }
    if n > 0 && *nu.last().unwrap() != n {
        return Err(Error::NotUnipotent);
    }
    partition_from_nullities(&nu, 1)
}

/// Direct sum of upper-triangular Jordan blocks J_{ρ_1} ⊕ J_{ρ_2} ⊕ …
pub fn canonical_unipotent(rho: &Partition, ctx: &Arc<FieldCtx>) -> MatGF {
    let n = rho.size();
    let mut m = MatGF::identity(n, ctx);
    let mut start = 0;
    for &b in rho.parts() {
        for i in start..start + b - 1 {
            m.set(i, i + 1, 1);
        }
        start += b;
    }
    m
}

/// Conjugacy-class invariant: irreducible f (≠ t) ↦ partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClassType(pub BTreeMap<FqPoly, Partition>);

impl ConjClassType {
    /// Σ deg(f)·|φ(f)|.
    pub fn size(&self) -> usize {
        self.0.iter().map(|(f, p)| f.degree().unwrap_or(0) * p.size()).sum()
    }

    /// {t − 1 ↦ ρ} over the given field.
    pub fn unipotent_in(rho: &Partition, ctx: &FieldCtx) -> Self {
        let mut m = BTreeMap::new();
        if !rho.is_empty() {
            m.insert(FqPoly::linear(1, ctx), rho.clone());
        }
        ConjClassType(m)
    }

    /// Checks irreducibility, exclusion of t and distinctness.
    pub fn validate(&self, ctx: &Arc<FieldCtx>) -> Result<()> {
        for (f, p) in &self.0 {
            if !f.is_monic() || *f == FqPoly::x() || !is_irreducible(f, ctx)? {
                return Err(Error::Reducible(f.to_string()));
            }
            if p.is_empty() {
                return Err(Error::InvalidPartition(format!("empty partition for {f}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConjClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, l)| format!("{}:{}", p.to_code(), l)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Class type of an invertible matrix: factor the characteristic
/// polynomial, then read partitions from nullity jumps of f(g)^k.
pub fn conj_class_type(g: &MatGF) -> Result<ConjClassType> {
    if !g.is_square() {
        return Err(Error::SizeMismatch("matrix is not square".into()));
    }
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    let ctx = g.field().clone();
    let n = g.nrows();
    let mut out = BTreeMap::new();
    for (f, mult) in factor(&g.char_poly(), &ctx)? {
        let d = f.degree().unwrap();
        let fg = g.eval_poly(&f);
        let mut pw = MatGF::identity(n, &ctx);
        let mut nu = Vec::new();
        for _ in 0..mult {
            pw = pw.mul(&fg);
            let k = pw.nullity();
            nu.push(k);
            if k == d * mult {
                break;
            }
        }
        if *nu.last().unwrap() != d * mult {
            return Err(Error::Internal(format!("generalized eigenspace of {f} has wrong dimension")));
        }
        out.insert(f, partition_from_nullities(&nu, d)?);
    }
    let t = ConjClassType(out);
    debug_assert_eq!(t.size(), n);
    Ok(t)
}

/// Primary element of type {f ↦ μ}: block diagonal of companion matrices
/// of f^{μ_i}, or upper Jordan blocks J_{μ_i}(a) when f = t − a.
pub fn primary_element(f: &FqPoly, mu: &Partition, ctx: &Arc<FieldCtx>) -> Result<MatGF> {
    if !f.is_monic() || *f == FqPoly::x() || !is_irreducible(f, ctx)? {
        return Err(Error::Reducible(f.to_string()));
    }
    if mu.is_empty() {
        return Ok(MatGF::zeros(0, 0, ctx));
    }
    if f.degree() == Some(1) {
        let a = ctx.neg(f.coeff(0));
        let mut m = canonical_unipotent(mu, ctx);
        for i in 0..mu.size() {
            m.set(i, i, a);
        }
        return Ok(m);
    }
    let blocks: Vec<MatGF> = mu.parts().iter().map(|&k| MatGF::companion(&f.pow(k, ctx), ctx)).collect();
    Ok(MatGF::block_diag(&blocks))
}

/// Block-diagonal representative of a full class type.
pub fn class_representative(ty: &ConjClassType, ctx: &Arc<FieldCtx>) -> Result<MatGF> {
    let blocks =
        ty.0.iter().map(|(f, mu)| primary_element(f, mu, ctx)).collect::<Result<Vec<_>>>()?;
    if blocks.is_empty() {
        return Ok(MatGF::zeros(0, 0, ctx));
    }
    Ok(MatGF::block_diag(&blocks))
}
