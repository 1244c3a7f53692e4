//! Law-of-large-numbers runs and frequency reports.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::haar::{haar_path, DEFAULT_N_MAX_CAP, DEFAULT_REFRESH};
use super::markov::{markov_conditional_with, CountsLabel};
use super::rng::{sample_exact, trial_rng};
use crate::error::{Error, Result};
use crate::gflinalg::FieldCtx;
use crate::measures::{characteristic_measure_with, CentralMeasure, Convention};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::symfun::{expected_frequency_multiset, GroundParams, ThomaSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LlnMode {
    Haar,
    Measure,
}

impl std::str::FromStr for LlnMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(LlnMode::Haar),
            "measure" => Ok(LlnMode::Measure),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LlnConfig {
    pub mode: LlnMode,
    /// Ignored in Haar mode (the trivial character α = (1) is used).
    pub spec: ThomaSpec,
    pub convention: Convention,
    pub q: u32,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub k_max: usize,
    pub refresh: usize,
    pub fast_path: bool,
    pub keep_trajectories: bool,
}

impl LlnConfig {
    pub fn haar(q: u32, n_max: usize, trials: usize, seed: u64) -> Self {
        LlnConfig {
            mode: LlnMode::Haar,
            spec: ThomaSpec::trivial(),
            convention: Convention::default(),
            q,
            n_max,
            trials,
            seed,
            k_max: 6,
            refresh: DEFAULT_REFRESH,
            fast_path: false,
            keep_trajectories: false,
        }
    }

    pub fn measure(spec: ThomaSpec, q: u32, n_max: usize, trials: usize, seed: u64) -> Self {
        LlnConfig { mode: LlnMode::Measure, spec, ..Self::haar(q, n_max, trials, seed) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub k: usize,
    pub mean: f64,
    pub se: f64,
    pub target: f64,
    pub target_exact: String,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Series {
    pub mean: Vec<f64>,
    pub se: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateRow {
    pub k: usize,
    pub mean: f64,
    pub se: f64,
    pub target: f64,
    pub within_3se: bool,
    pub within_abs: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateVerdict {
    pub passed: bool,
    pub rows: Vec<GateRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyReport {
    pub mode: LlnMode,
    pub spec: String,
    pub convention: String,
    pub q: u32,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub k_max: usize,
    pub counts: &'static str,
    /// `rows[k-1].mean[n-1]` estimates λ_k(n)/n.
    pub rows: Vec<Series>,
    pub columns: Vec<Series>,
    pub final_rows: Vec<Estimate>,
    pub final_columns: Vec<Estimate>,
    pub gate: Option<GateVerdict>,
    /// Per trial, the 0-based row receiving each box.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectories: Option<Vec<Vec<u32>>>,
}

impl FrequencyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per trial: comma-separated row indices.
    pub fn trajectories_csv(&self) -> Option<String> {
        let t = self.trajectories.as_ref()?;
        let mut out = String::from("trial,rows\n");
        for (i, p) in t.iter().enumerate() {
            let rows: Vec<String> = p.iter().map(|r| r.to_string()).collect();
            out.push_str(&format!("{i},{}\n", rows.join(" ")));
        }
        Some(out)
    }
}

fn markov_path(
    meas: &CentralMeasure,
    ctx: &Arc<FieldCtx>,
    cfg: &LlnConfig,
    trial: u64,
    label: &std::sync::Mutex<CountsLabel>,
) -> Result<Vec<u32>> {
    let mut rho = Partition::empty();
    let mut path = Vec::with_capacity(cfg.n_max);
    for step in 0..cfg.n_max {
        let mut rng = trial_rng(cfg.seed, trial, step as u64);
        let sigma = if rho.is_empty() {
            Partition::row(1)
        } else {
            let cond = markov_conditional_with(&rho, meas, ctx, cfg.fast_path)?;
            if cond.label == CountsLabel::FastPath {
                *label.lock().unwrap() = CountsLabel::FastPath;
            }
            let p: Vec<Rational> = cond.probs.iter().map(|(_, p)| p.clone()).collect();
            cond.probs[sample_exact(&mut rng, &p)?].0.clone()
        };
        let row = (0..sigma.len()).find(|&i| sigma.part(i) != rho.part(i)).expect("one box added");
        path.push(row as u32);
        rho = sigma;
    }
    Ok(path)
}

fn targets(spec: &ThomaSpec, q: u32, k_max: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let t = Rational::new(1.into(), q.into());
    let e = expected_frequency_multiset(spec, &t, k_max)?;
    let pad = |mut v: Vec<Rational>| {
        v.resize(k_max, Rational::from_integer(0.into()));
        v
    };
    Ok((pad(e.rows), pad(e.columns)))
}

struct Moments {
    sum: Vec<Vec<f64>>,
    sumsq: Vec<Vec<f64>>,
}

impl Moments {
    fn new(k_max: usize, n_max: usize) -> Self {
        Moments { sum: vec![vec![0.0; n_max]; k_max], sumsq: vec![vec![0.0; n_max]; k_max] }
    }

    fn add(&mut self, k: usize, n: usize, x: f64) {
        self.sum[k][n] += x;
        self.sumsq[k][n] += x * x;
    }

    fn series(&self, trials: usize) -> Vec<Series> {
        let t = trials as f64;
        self.sum
            .iter()
            .zip(&self.sumsq)
            .map(|(s, s2)| {
                let mean: Vec<f64> = s.iter().map(|x| x / t).collect();
                let se = s2
                    .iter()
                    .zip(&mean)
                    .map(|(x2, m)| {
                        if trials < 2 {
                            return 0.0;
                        }
                        let var = ((x2 - t * m * m) / (t - 1.0)).max(0.0);
                        (var / t).sqrt()
                    })
                    .collect();
                Series { mean, se }
            })
            .collect()
    }
}

fn finals(series: &[Series], target: &[Rational]) -> Vec<Estimate> {
    series
        .iter()
        .zip(target)
        .enumerate()
        .map(|(i, (s, t))| {
            let mean = *s.mean.last().unwrap_or(&0.0);
            let tf = t.to_f64().unwrap_or(f64::NAN);
            Estimate {
                k: i + 1,
                mean,
                se: *s.se.last().unwrap_or(&0.0),
                target: tf,
                target_exact: t.to_string(),
                distance: (mean - tf).abs(),
            }
        })
        .collect()
}

/// Haar gate: k = 1..4 within 3 standard errors, k = 1, 2 within 0.02.
pub fn haar_gate(final_rows: &[Estimate]) -> GateVerdict {
    let rows: Vec<GateRow> = final_rows
        .iter()
        .take(4)
        .map(|e| GateRow {
            k: e.k,
            mean: e.mean,
            se: e.se,
            target: e.target,
            within_3se: e.distance <= 3.0 * e.se,
            within_abs: (e.k <= 2).then_some(e.distance <= 0.02),
        })
        .collect();
    let passed = rows.len() == 4 && rows.iter().all(|r| r.within_3se && r.within_abs.unwrap_or(true));
    GateVerdict { passed, rows }
}

/// Runs all trials (in parallel, merged in trial order) and summarizes
/// row and column frequencies.
pub fn run_lln(cfg: &LlnConfig) -> Result<FrequencyReport> {
    if cfg.n_max == 0 || cfg.trials == 0 || cfg.k_max == 0 {
        return Err(Error::OutOfRange("n, trials and k_max must be positive".into()));
    }
    let ctx = FieldCtx::new(cfg.q)?;
    let label = std::sync::Mutex::new(CountsLabel::Exact);
    let (spec, paths) = match cfg.mode {
        LlnMode::Haar => {
            if cfg.n_max > DEFAULT_N_MAX_CAP {
                return Err(Error::SizeLimit(format!("Haar growth capped at n = {DEFAULT_N_MAX_CAP}")));
            }
            let paths = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|tr| haar_path(cfg.q, cfg.n_max, cfg.seed, tr, cfg.refresh))
                .collect::<Result<Vec<_>>>()?;
            (ThomaSpec::trivial(), paths)
        }
        LlnMode::Measure => {
            let ground = GroundParams::from_int(cfg.q)?;
            let meas = characteristic_measure_with(&cfg.spec, &ground, cfg.convention)?;
            // the first two steps fill the memo before the parallel phase
            meas.cylinder_prob(&Partition::row(1))?;
            let paths = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|tr| markov_path(&meas, &ctx, cfg, tr, &label))
                .collect::<Result<Vec<_>>>()?;
            (cfg.spec.clone(), paths)
        }
    };
    let (row_target, col_target) = targets(&spec, cfg.q, cfg.k_max)?;
    let mut rm = Moments::new(cfg.k_max, cfg.n_max);
    let mut cm = Moments::new(cfg.k_max, cfg.n_max);
    for path in &paths {
        let mut rows: Vec<usize> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for (step, &r) in path.iter().enumerate() {
            let r = r as usize;
            if r == rows.len() {
                rows.push(0);
            }
            rows[r] += 1;
            let c = rows[r] - 1;
            if c == cols.len() {
                cols.push(0);
            }
            cols[c] += 1;
            let n = step + 1;
            debug_assert_eq!(rows.iter().sum::<usize>(), n);
            for k in 0..cfg.k_max {
                rm.add(k, step, rows.get(k).copied().unwrap_or(0) as f64 / n as f64);
                cm.add(k, step, cols.get(k).copied().unwrap_or(0) as f64 / n as f64);
            }
        }
    }
    let rows = rm.series(cfg.trials);
    let columns = cm.series(cfg.trials);
    let final_rows = finals(&rows, &row_target);
    let final_columns = finals(&columns, &col_target);
    let gate = (cfg.mode == LlnMode::Haar).then(|| haar_gate(&final_rows));
    let counts = match cfg.mode {
        LlnMode::Haar => "direct matrix growth",
        LlnMode::Measure => label.into_inner().unwrap().text(),
    };
    Ok(FrequencyReport {
        mode: cfg.mode,
        spec: spec.to_string(),
        convention: cfg.convention.name().to_string(),
        q: cfg.q,
        n_max: cfg.n_max,
        trials: cfg.trials,
        seed: cfg.seed,
        k_max: cfg.k_max,
        counts,
        rows,
        columns,
        final_rows,
        final_columns,
        gate,
        trajectories: cfg.keep_trajectories.then_some(paths),
    })
}
