//! Young-lattice Markov growth with the exact conditional
//! p(σ | ρ) = c_{ρσ}(q)·M_σ / M_ρ.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rng::sample_exact;
use crate::error::{Error, Result};
use crate::gflinalg::extension::{fast_path_enabled, in_validated_range, BRUTE_FORCE_LIMIT};
use crate::gflinalg::{extension_counts, extension_counts_closed_form, FieldCtx};
use crate::measures::CentralMeasure;
use crate::partitions::Partition;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountsLabel {
    Exact,
    FastPath,
}

impl CountsLabel {
    pub fn text(self) -> &'static str {
        match self {
            CountsLabel::Exact => "exact counts",
            CountsLabel::FastPath => "fast-path counts",
        }
    }
}

/// c_{ρσ}(q) by the validated closed form, brute force, or (when enabled)
/// the unvalidated closed form.
pub fn counts_for(
    rho: &Partition,
    ctx: &Arc<FieldCtx>,
    allow_fast: bool,
) -> Result<(BTreeMap<Partition, BigInt>, CountsLabel)> {
    let n = rho.size();
    if in_validated_range(n, ctx.q()) {
        return Ok((extension_counts_closed_form(rho, &BigInt::from(ctx.q())), CountsLabel::Exact));
    }
    if allow_fast || fast_path_enabled() {
        return Ok((extension_counts_closed_form(rho, &BigInt::from(ctx.q())), CountsLabel::FastPath));
    }
    let feasible = (ctx.q() as u64).checked_pow(n as u32).is_some_and(|t| t <= BRUTE_FORCE_LIMIT);
    if feasible {
        return Ok((extension_counts(rho, ctx)?, CountsLabel::Exact));
    }
    Err(Error::OutOfRange(format!(
        "extension counts at |rho| = {n}, q = {} lie outside the validated range; enable the fast path",
        ctx.q()
    )))
}

#[derive(Clone, Debug)]
pub struct Conditional {
    pub rho: Partition,
    pub probs: Vec<(Partition, Rational)>,
    pub label: CountsLabel,
}

/// The exact one-step law out of ρ; its probabilities sum to 1 exactly.
pub fn markov_conditional(rho: &Partition, meas: &CentralMeasure, ctx: &Arc<FieldCtx>) -> Result<Conditional> {
    markov_conditional_with(rho, meas, ctx, false)
}

pub fn markov_conditional_with(
    rho: &Partition,
    meas: &CentralMeasure,
    ctx: &Arc<FieldCtx>,
    allow_fast: bool,
) -> Result<Conditional> {
    let q = Rational::from_integer(BigInt::from(ctx.q()));
    if meas.ground().q != q {
        return Err(Error::SizeMismatch(format!("measure over q = {} sampled over F_{}", meas.ground().q, ctx.q())));
    }
    let m_rho = meas.cylinder_prob(rho)?;
    if m_rho.is_zero() {
        return Err(Error::DeadBranch(rho.to_string()));
    }
    let (counts, label) = counts_for(rho, ctx, allow_fast)?;
    let mut probs = Vec::with_capacity(counts.len());
    for (sigma, c) in counts {
        let m = meas.cylinder_prob(&sigma)?;
        let p = Rational::from_integer(c) * m / &m_rho;
        if !p.is_zero() {
            probs.push((sigma, p));
        }
    }
    let total: Rational = probs.iter().map(|(_, p)| p).sum();
    if !total.is_one() {
        return Err(Error::Internal(format!("conditional out of {rho} sums to {total}, not 1")));
    }
    Ok(Conditional { rho: rho.clone(), probs, label })
}

pub fn markov_step(
    rho: &Partition,
    meas: &CentralMeasure,
    ctx: &Arc<FieldCtx>,
    rng: &mut impl rand_chacha::rand_core::RngCore,
) -> Result<Partition> {
    markov_step_with(rho, meas, ctx, rng, false)
}

pub fn markov_step_with(
    rho: &Partition,
    meas: &CentralMeasure,
    ctx: &Arc<FieldCtx>,
    rng: &mut impl rand_chacha::rand_core::RngCore,
    allow_fast: bool,
) -> Result<Partition> {
    let cond = markov_conditional_with(rho, meas, ctx, allow_fast)?;
    let p: Vec<Rational> = cond.probs.iter().map(|(_, p)| p.clone()).collect();
    let i = sample_exact(rng, &p)?;
    Ok(cond.probs[i].0.clone())
}

/// Haar chain law out of ρ: c_{ρσ}(q)/q^{|ρ|}.
pub fn haar_conditional(rho: &Partition, ctx: &Arc<FieldCtx>) -> Result<Vec<(Partition, Rational)>> {
    let (counts, _) = counts_for(rho, ctx, false)?;
    let total = Rational::from_integer(num_traits::pow(BigInt::from(ctx.q()), rho.size()));
    Ok(counts.into_iter().map(|(s, c)| (s, Rational::from_integer(c) / &total)).collect())
}
