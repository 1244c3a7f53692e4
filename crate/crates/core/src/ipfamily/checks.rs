//! Exhaustive checks on finite levels.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::{convolve, involution, GroupAlgElem};
use super::groups::{wreath_product, FiniteGroup, FiniteGroupTable, WreathElem};
use super::levels::{build_gl_ip_level, embed_i, IPLevel};
use crate::error::{Error, Result};
use crate::gflinalg::{conj_class_type, count_fixed_flags, extend_type, jordan_type_unipotent, FieldCtx, FlagType, MatGF};
use crate::measures::CentralMeasure;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub pairs: usize,
    pub multiplicative: bool,
    pub involutive: bool,
    pub section_independent: bool,
    pub unit_preserved: bool,
    pub idempotent: bool,
}

impl EmbeddingVerdict {
    /// Everything expected of i: multiplicative, compatible with #,
    /// independent of the section, e = i(1) idempotent, and 1 ↦ e ≠ 1.
    pub fn passed(&self) -> bool {
        self.multiplicative && self.involutive && self.section_independent && self.idempotent && !self.unit_preserved
    }
}

/// i(g)*i(h) = i(gh) and i(g)^# = i(g^{-1}) on all pairs of G_m.
pub fn check_embedding<U: FiniteGroup, L: FiniteGroup>(level: &IPLevel<U, L>) -> Result<EmbeddingVerdict> {
    let (up, low) = (level.upper.as_ref(), level.lower.as_ref());
    let n = low.order();
    let images: Vec<GroupAlgElem> =
        (0..n).map(|g| embed_i(&GroupAlgElem::delta(low, g), level)).collect::<Result<_>>()?;
    let multiplicative = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (g, h) = (k / n, k % n);
            Ok(convolve(&images[g], &images[h], up)? == images[low.mul(g, h)])
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let involutive = (0..n)
        .map(|g| Ok(involution(&images[g], up)? == images[low.inv(g)]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let last = |g: usize| *level.lifts(g).last().unwrap();
    let section_independent = (0..n)
        .map(|g| Ok(level.embed_with_section(&GroupAlgElem::delta(low, g), &last)? == images[g]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let e = &images[low.identity()];
    let idempotent = convolve(e, e, up)? == *e;
    let unit_preserved = *e == GroupAlgElem::unit(up);
    Ok(EmbeddingVerdict { pairs: n * n, multiplicative, involutive, section_independent, unit_preserved, idempotent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassComparison {
    pub class: String,
    pub size: usize,
    pub induced: String,
    pub direct: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagInductionVerdict {
    pub m: usize,
    pub q: u32,
    pub classes: Vec<ClassComparison>,
    pub passed: bool,
}

/// Ind_{P}^{G}(σ_m ∘ π) against σ_{m+1}, both as characters on every
/// conjugacy class of GL_{m+1}(F_q); σ_k is the permutation character on
/// complete flags.
pub fn flag_induction_check(m: usize, ctx: &Arc<FieldCtx>) -> Result<FlagInductionVerdict> {
    let level = build_gl_ip_level(m, ctx)?;
    let (up, low) = (level.upper.as_ref(), level.lower.as_ref());
    let complete = |k: usize| FlagType::new(vec![1; k]);
    // left coset representatives of G/P
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for x in 0..up.order() {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x);
        for &p in &level.p {
            seen.insert(up.mul(x, p));
        }
    }
    // one representative per conjugacy class, keyed by class type
    let mut classes: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (x, g) in up.elements().iter().enumerate() {
        let key = conj_class_type(g)?.to_string();
        classes.entry(key).and_modify(|e| e.1 += 1).or_insert((x, 1));
    }
    let sigma_low: HashMap<usize, BigInt> = (0..low.order())
        .into_par_iter()
        .map(|a| Ok((a, count_fixed_flags(low.element(a), &complete(m)?)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut passed = true;
    for (key, (g, size)) in classes {
        let mut induced = BigInt::zero();
        for &x in &reps {
            let y = up.mul(up.mul(up.inv(x), g), x);
            if let Some(a) = level.pi_of(y) {
                induced += &sigma_low[&a];
            }
        }
        let direct = count_fixed_flags(up.element(g), &complete(m + 1)?)?;
        passed &= induced == direct;
        out.push(ClassComparison { class: key, size, induced: induced.to_string(), direct: direct.to_string() });
    }
    Ok(FlagInductionVerdict { m, q: ctx.q(), classes: out, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralityVerdict {
    pub m: usize,
    pub checked: usize,
    pub central: bool,
    pub witness: Option<String>,
}

/// Whether a measure on H^m (the diagonal of H ≀ S_m) is invariant under
/// conjugation by all of H ≀ S_m.
pub fn is_g_central(m: usize, h: &FiniteGroupTable, measure: &dyn Fn(&[usize]) -> Rational) -> Result<CentralityVerdict> {
    let (elems, table) = wreath_product(m, h)?;
    let index: HashMap<&WreathElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let ident: Vec<usize> = (0..m).collect();
    let diag: Vec<usize> = elems.iter().enumerate().filter(|(_, e)| e.perm == ident).map(|(i, _)| i).collect();
    let mut checked = 0;
    for &d in &diag {
        let pd = measure(&elems[d].values);
        for x in 0..table.order() {
            let c = table.conj(x, d);
            let vals = &elems[c].values;
            debug_assert!(index.contains_key(&elems[c]) && elems[c].perm == ident);
            checked += 1;
            if measure(vals) != pd {
                return Ok(CentralityVerdict {
                    m,
                    checked,
                    central: false,
                    witness: Some(format!("{:?} vs {:?}", elems[d].values, vals)),
                });
            }
        }
    }
    Ok(CentralityVerdict { m, checked, central: true, witness: None })
}

/// Product measure Π M0(h_i) on H^m, checked for centrality.
pub fn de_finetti_central_check(m: usize, h: &FiniteGroupTable, m0: &[Rational]) -> Result<CentralityVerdict> {
    if m0.len() != h.order() {
        return Err(Error::SizeMismatch(format!("{} weights for a group of order {}", m0.len(), h.order())));
    }
    if m0.iter().any(|x| x.is_negative()) || !m0.iter().sum::<Rational>().is_one() {
        return Err(Error::InvalidSpec("M0 must be a probability vector".into()));
    }
    is_g_central(m, h, &|vals| vals.iter().map(|&v| m0[v].clone()).product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeVerdict {
    pub n: usize,
    pub matrices: usize,
    pub passed: bool,
}

/// Matrix-level coherence: with P(u) = M_{type(u)} on unitriangular n×n
/// matrices, P(u) = Σ_b P([[u, b], [0, 1]]) for every u.
pub fn unitriangular_coherence_bridge(meas: &CentralMeasure, n: usize, ctx: &Arc<FieldCtx>) -> Result<BridgeVerdict> {
    let q = ctx.q() as u64;
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let total = q.pow(slots.len() as u32);
    if total.saturating_mul(q.pow(n as u32)) > 1 << 22 {
        return Err(Error::SizeLimit(format!("coherence bridge at n={n}, q={q}")));
    }
    let mut passed = true;
    for code in 0..total {
        let mut u = MatGF::identity(n, ctx);
        let mut c = code;
        for &(i, j) in &slots {
            u.set(i, j, (c % q) as u8);
            c /= q;
        }
        let lhs = meas.cylinder_prob(&jordan_type_unipotent(&u)?)?;
        let mut rhs = Rational::zero();
        for bcode in 0..q.pow(n as u32) {
            let mut bc = bcode;
            let b: Vec<u8> = (0..n)
                .map(|_| {
                    let d = (bc % q) as u8;
                    bc /= q;
                    d
                })
                .collect();
            rhs += meas.cylinder_prob(&extend_type(&u, &b)?)?;
        }
        passed &= lhs == rhs;
    }
    Ok(BridgeVerdict { n, matrices: total as usize, passed })
}
