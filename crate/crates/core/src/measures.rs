//! Central measures on the infinite unitriangular group.
//!
//! A cylinder probability M_ρ is the probability that the top-left n×n
//! corner of a random unitriangular matrix is one fixed matrix of Jordan
//! type ρ. It is computed as
//!
//! M_ρ = t^{n(n−1)/2} · t^{−n(ρ)} (1−t)^{−n} Q_ρ(spec; t)
//!
//! with Q_ρ evaluated under the Hall–Littlewood super specialization. The
//! leading factor turns the density with respect to Haar measure into an
//! actual probability, so the Haar measure has M_ρ = q^{−n(n−1)/2}.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gflinalg::{count_unitriangular_by_type, extension_counts, extension_counts_closed_form, FieldCtx};
use crate::partitions::{check_degree, enumerate_partitions, partition_index, Partition};
use crate::rational::{pow, render, Rational};
use crate::symfun::{dense_degree_limit, monomial_values, r_function, r_function_sparse, transitions, GroundParams, ThomaSpec};

/// Which side of (α; β) becomes geometric before Q is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    ExpandAlpha,
    ExpandBeta,
    ExpandNone,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::ExpandAlpha, Convention::ExpandBeta, Convention::ExpandNone];

    pub fn apply(self, spec: &ThomaSpec) -> Result<ThomaSpec> {
        match self {
            Convention::ExpandAlpha => spec.geometric_merge(),
            Convention::ExpandBeta => spec.geometric_merge_beta(),
            Convention::ExpandNone => Ok(spec.clone()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::ExpandAlpha => "expand-alpha",
            Convention::ExpandBeta => "expand-beta",
            Convention::ExpandNone => "expand-none",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Convention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown convention {s:?}")))
    }
}

/// A central measure with memoized cylinder probabilities.
/// Largest degree at which characteristic measures fill whole levels.
pub const LEVEL_ROUTE_LIMIT: usize = 10;

#[derive(Debug)]
pub struct CentralMeasure {
    spec: ThomaSpec,
    ground: GroundParams,
    convention: Convention,
    expanded: ThomaSpec,
    memo: RwLock<HashMap<Partition, Rational>>,
}

impl Clone for CentralMeasure {
    fn clone(&self) -> Self {
        CentralMeasure {
            spec: self.spec.clone(),
            ground: self.ground.clone(),
            convention: self.convention,
            expanded: self.expanded.clone(),
            memo: RwLock::new(self.memo.read().unwrap().clone()),
        }
    }
}

impl CentralMeasure {
    /// Measure whose parameters are used exactly as given.
    pub fn new(spec: ThomaSpec, ground: GroundParams) -> Self {
        Self::with_convention(spec.clone(), ground, Convention::ExpandNone).expect("no expansion")
    }

    pub fn with_convention(spec: ThomaSpec, ground: GroundParams, convention: Convention) -> Result<Self> {
        let expanded = convention.apply(&spec)?;
        Ok(CentralMeasure { spec, ground, convention, expanded, memo: RwLock::new(HashMap::new()) })
    }

    /// The Haar measure (geometric α = (1)).
    pub fn haar(ground: GroundParams) -> Self {
        Self::new(ThomaSpec::haar(), ground)
    }

    pub fn spec(&self) -> &ThomaSpec {
        &self.spec
    }

    /// Parameters after the convention's expansion.
    pub fn expanded_spec(&self) -> &ThomaSpec {
        &self.expanded
    }

    pub fn ground(&self) -> &GroundParams {
        &self.ground
    }

    fn single_value_route(&self) -> bool {
        self.convention == Convention::ExpandAlpha && !self.spec.has_geometric()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Replaces a memoized value; used for negative controls.
    pub fn insert_override(&self, rho: &Partition, value: Rational) {
        self.memo.write().unwrap().insert(rho.clone(), value);
    }

    /// Fills the memo for every ρ ⊢ n.
    pub fn level(&self, n: usize) -> Result<Vec<(Partition, Rational)>> {
        check_degree(n)?;
        let ix = partition_index(n)?;
        if let Some(v) = {
            let memo = self.memo.read().unwrap();
            ix.list.iter().map(|r| memo.get(r).map(|x| (r.clone(), x.clone()))).collect::<Option<Vec<_>>>()
        } {
            return Ok(v);
        }
        let vals = self.compute_level(n)?;
        let mut memo = self.memo.write().unwrap();
        let out = ix
            .list
            .iter()
            .zip(vals)
            .map(|(r, v)| {
                let v = memo.entry(r.clone()).or_insert(v).clone();
                (r.clone(), v)
            })
            .collect();
        Ok(out)
    }

    fn compute_level(&self, n: usize) -> Result<Vec<Rational>> {
        let t = &self.ground.t;
        let ix = partition_index(n)?;
        if n == 0 {
            return Ok(vec![Rational::one()]);
        }
        let tr = transitions(n, t)?;
        let m = monomial_values(n, &self.expanded.at_hl(t))?;
        let q_vals = tr.hl_q.apply(&m);
        let one = Rational::one();
        let lead = pow(t, (n * (n - 1) / 2) as i64) * pow(&(&one - t), -(n as i64));
        let mut out = Vec::with_capacity(q_vals.len());
        for (rho, qv) in ix.list.iter().zip(q_vals) {
            let v = &lead * pow(t, -(rho.n_stat() as i64)) * qv;
            if v.is_negative() {
                return Err(Error::NegativeCylinder { rho: rho.to_string(), value: render(&v) });
            }
            out.push(v);
        }
        Ok(out)
    }

    /// M_ρ. Above degree [`LEVEL_ROUTE_LIMIT`] characteristic measures
    /// (expand-α over atoms) are evaluated one value at a time through the
    /// Kostka–Foulkes route; other measures stop at the dense degree limit.
    pub fn cylinder_prob(&self, rho: &Partition) -> Result<Rational> {
        if let Some(v) = self.memo.read().unwrap().get(rho) {
            return Ok(v.clone());
        }
        let n = rho.size();
        if n > LEVEL_ROUTE_LIMIT.min(dense_degree_limit()) && self.single_value_route() {
            let t = &self.ground.t;
            let r = r_function_sparse(rho, &self.spec.at(t), t, self.spec.hook_bound())?;
            let v = pow(t, (n * (n - 1) / 2) as i64) * r;
            if v.is_negative() {
                return Err(Error::NegativeCylinder { rho: rho.to_string(), value: render(&v) });
            }
            return Ok(self.memo.write().unwrap().entry(rho.clone()).or_insert(v).clone());
        }
        if n > dense_degree_limit() {
            return Err(Error::DegreeLimit { degree: n, max: dense_degree_limit() });
        }
        let lvl = self.level(n)?;
        Ok(lvl.into_iter().find(|(r, _)| r == rho).map(|(_, v)| v).unwrap())
    }
}

/// Characteristic measure of the character with parameters `spec` under
/// the given convention.
pub fn characteristic_measure_with(
    spec: &ThomaSpec,
    ground: &GroundParams,
    convention: Convention,
) -> Result<CentralMeasure> {
    if spec.has_geometric() {
        return Err(Error::InvalidSpec("character parameters must be atoms".into()));
    }
    CentralMeasure::with_convention(spec.clone(), ground.clone(), convention)
}

pub fn characteristic_measure(spec: &ThomaSpec, ground: &GroundParams) -> Result<CentralMeasure> {
    characteristic_measure_with(spec, ground, Convention::default())
}

pub fn cylinder_prob(meas: &CentralMeasure, rho: &Partition) -> Result<Rational> {
    meas.cylinder_prob(rho)
}

/// t^{n(n−1)/2} r_ρ(spec): the cylinder probability through the
/// Kostka–Foulkes route.
pub fn characteristic_cylinder_via_r(spec: &ThomaSpec, rho: &Partition, ground: &GroundParams) -> Result<Rational> {
    let n = rho.size();
    let t = &ground.t;
    Ok(pow(t, (n * n.saturating_sub(1) / 2) as i64) * r_function(rho, spec, t)?)
}

/// Where c_{ρσ}(q) comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountSource {
    BruteForce,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceViolation {
    pub rho: Partition,
    #[serde(with = "crate::io::rational_str")]
    pub lhs: Rational,
    #[serde(with = "crate::io::rational_str")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub q: u32,
    pub n_max: usize,
    pub source: CountSource,
    pub checked: usize,
    pub violations: Vec<CoherenceViolation>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn field_for(meas: &CentralMeasure, ctx: &FieldCtx) -> Result<()> {
    if meas.ground.q != Rational::from_integer(ctx.q().into()) {
        return Err(Error::SizeMismatch(format!("measure has q = {}, field has q = {}", render(&meas.ground.q), ctx.q())));
    }
    Ok(())
}

fn level_map(meas: &CentralMeasure, n: usize) -> Result<BTreeMap<Partition, Rational>> {
    Ok(meas.level(n)?.into_iter().collect())
}

/// Checks M_ρ = Σ_σ c_{ρσ}(q) M_σ for every ρ ⊢ n < n_max.
pub fn check_coherence_with(
    meas: &CentralMeasure,
    n_max: usize,
    ctx: &Arc<FieldCtx>,
    source: CountSource,
) -> Result<CoherenceReport> {
    field_for(meas, ctx)?;
    let q = BigInt::from(ctx.q());
    let mut report = CoherenceReport { q: ctx.q(), n_max, source, checked: 0, violations: Vec::new() };
    for n in 0..n_max {
        let lower = level_map(meas, n)?;
        let upper = level_map(meas, n + 1)?;
        for rho in enumerate_partitions(n)? {
            let counts = match source {
                CountSource::BruteForce => extension_counts(&rho, ctx)?,
                CountSource::ClosedForm => extension_counts_closed_form(&rho, &q),
            };
            let rhs: Rational =
                counts.iter().map(|(s, c)| Rational::from_integer(c.clone()) * &upper[s]).sum();
            let lhs = lower[&rho].clone();
            report.checked += 1;
            if lhs != rhs {
                report.violations.push(CoherenceViolation { rho, lhs, rhs });
            }
        }
    }
    Ok(report)
}

pub fn check_coherence(meas: &CentralMeasure, n_max: usize, ctx: &Arc<FieldCtx>) -> Result<CoherenceReport> {
    check_coherence_with(meas, n_max, ctx, CountSource::BruteForce)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub q: u32,
    pub n: usize,
    #[serde(with = "crate::io::rational_str")]
    pub total: Rational,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.total.is_one()
    }
}

/// Σ_ρ N_ρ(q) M_ρ over all unitriangular n×n matrices.
pub fn check_normalization(meas: &CentralMeasure, n: usize, ctx: &Arc<FieldCtx>) -> Result<NormalizationReport> {
    field_for(meas, ctx)?;
    let lvl = level_map(meas, n)?;
    let total = if n == 0 {
        lvl[&Partition::empty()].clone()
    } else {
        count_unitriangular_by_type(n, ctx)?
            .into_iter()
            .map(|(rho, c)| Rational::from_integer(c) * &lvl[&rho])
            .sum()
    };
    Ok(NormalizationReport { q: ctx.q(), n, total })
}

/// Same sum with N_ρ(q) built from the closed-form extension counts along
/// all Young-lattice paths (no matrix enumeration).
pub fn unitriangular_counts_from_paths(n: usize, q: &BigInt) -> Result<BTreeMap<Partition, BigInt>> {
    let mut cur: BTreeMap<Partition, BigInt> = BTreeMap::from([(Partition::empty(), BigInt::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (rho, w) in &cur {
            for (s, c) in extension_counts_closed_form(rho, q) {
                *next.entry(s).or_insert_with(BigInt::zero) += w * c;
            }
        }
        cur = next;
    }
    Ok(cur)
}
