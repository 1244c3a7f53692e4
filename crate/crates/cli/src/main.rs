//! `glblab` command-line entry point.
//!
//! Every command prints one JSON document (or writes it to `--out`):
//! `{"schema": "glblab/1", "manifest": {...}, "result": {...}, "passed": bool?}`.
//! Exit codes: 0 success, 1 a failed verdict, 2 malformed arguments or input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use glblab::characters::{chi_unipotent, glb_character_unipotent, psi_unipotent};
use glblab::gflinalg::extension::CLOSED_FORM_VALIDATED_SIZE;
use glblab::gflinalg::{canonical_unipotent, count_fixed_flags, FieldCtx, FlagType, MatGF};
use glblab::grassmann::{cell_dimension, cocycle, enumerate_schubert_cells, finite_cell_size, CellDim, SchubertSymbol};
use glblab::io::{read_spec_file, ExactValue};
use glblab::ipfamily::{
    build_affine_ip_level, build_gl_ip_level, build_wreath_ip_level, check_embedding, flag_induction_check,
    FiniteGroupTable,
};
use glblab::measures::{characteristic_cylinder_via_r, characteristic_measure_with, check_coherence_with, CentralMeasure, Convention, CountSource};
use glblab::partitions::{enumerate_partitions, gaussian_binomial, Partition};
use glblab::rational::{int, parse as parse_rational, render, Rational};
use glblab::sampler::{run_lln, LlnConfig, LlnMode};
use glblab::symfun::tables::set_cache_dir;
use glblab::symfun::{kostka_foulkes_entry, kostka_foulkes_matrix, GroundParams, ThomaSpec};
use glblab::{Error, Result};

mod selftest;

pub const SCHEMA: &str = "glblab/1";
pub const CACHE_ENV: &str = "GLBLAB_CACHE_DIR";

#[derive(Parser)]
#[command(name = "glblab", version, about = "Characters and central measures for GL(n, F_q) and its inductive limit")]
struct Cli {
    /// Worker threads (default: all available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Unipotent,
    Induced,
    Glb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Gl,
    Affine,
    Wreath,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Brute,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Kostka–Foulkes matrix K(t) at degree n, or a single entry.
    KostkaFoulkes {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1/2")]
        t: String,
        #[arg(long, requires = "content")]
        shape: Option<String>,
        #[arg(long, requires = "shape")]
        content: Option<String>,
    },
    /// Exact cylinder probability M_ρ of a central measure.
    Cylinder {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        rho: String,
        #[arg(long, default_value = "expand-alpha")]
        convention: String,
    },
    /// Exact coherence of a central measure for all ρ ⊢ n < nmax.
    CoherenceCheck {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value = "expand-alpha")]
        convention: String,
        #[arg(long, value_enum, default_value = "brute")]
        source: Source,
    },
    /// Character values at unipotent classes.
    Character {
        #[arg(long, value_enum)]
        kind: Kind,
        /// λ for unipotent, the flag type μ for induced.
        #[arg(long)]
        label: Option<String>,
        /// Jordan type ρ of the unipotent class.
        #[arg(long)]
        class: String,
        #[arg(long)]
        q: String,
        /// Spec file for --kind glb.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Monte Carlo row/column frequencies.
    Lln {
        #[arg(long, value_enum, default_value = "haar")]
        mode: ModeArg,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, default_value_t = 64)]
        refresh: usize,
        /// Allow unvalidated closed-form counts (measure mode).
        #[arg(long)]
        fast_path: bool,
        /// Fail (exit 1) when the Haar gate does not pass.
        #[arg(long)]
        gate: bool,
        /// Also write per-trial trajectories as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Embed trajectories in the JSON report.
        #[arg(long)]
        trajectories: bool,
    },
    /// Number of μ-flags fixed by a matrix.
    FlagCount {
        /// Flag type as a composition "2,1".
        #[arg(long = "type")]
        flag_type: String,
        /// Matrix rows, e.g. "110;010;001".
        #[arg(long, conflicts_with = "rho")]
        matrix: Option<String>,
        /// Use the canonical unipotent matrix of this Jordan type.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        q: u32,
    },
    /// Schubert cells of Gr_k(F_q^n), their sizes and the cocycle table.
    Grassmann {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
    },
    /// Embedding and flag-induction verdicts for one IP-family level.
    IpfamilyCheck {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Order of the cyclic group H (wreath example).
        #[arg(long, default_value_t = 2)]
        h_order: usize,
    },
    /// Exact identity suites.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Haar,
    Measure,
}

pub struct Output {
    pub params: Value,
    pub result: Value,
    pub passed: Option<bool>,
}

pub fn exact(x: &Rational) -> Value {
    serde_json::to_value(ExactValue::from(x)).expect("exact value serializes")
}

pub fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn composition(s: &str) -> Result<FlagType> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| bad(format!("bad composition {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    FlagType::new(parts)
}

/// q from the flag, else from the spec file; the flag wins.
fn resolve_q(flag: Option<&str>, file_q: Option<Rational>) -> Result<GroundParams> {
    let q = match flag {
        Some(s) => parse_rational(s)?,
        None => file_q.ok_or_else(|| bad("q is required (flag or spec file)"))?,
    };
    GroundParams::new(q)
}

fn load_spec(path: &Path) -> Result<(ThomaSpec, Option<Rational>)> {
    let f = read_spec_file(path)?;
    Ok((f.spec()?, f.q()?))
}

/// Geometric specs are taken as already expanded; atom specs go through
/// the chosen convention.
fn measure_for(spec: &ThomaSpec, ground: &GroundParams, convention: &str) -> Result<CentralMeasure> {
    let conv: Convention = convention.parse()?;
    if spec.has_geometric() {
        Ok(CentralMeasure::new(spec.clone(), ground.clone()))
    } else {
        characteristic_measure_with(spec, ground, conv)
    }
}

fn integer_q(g: &GroundParams) -> Result<u32> {
    if !g.q.is_integer() {
        return Err(bad("this command needs an integer prime-power q"));
    }
    g.q.to_integer().try_into().map_err(|_| bad("q out of range"))
}

fn kostka_foulkes_cmd(n: Option<usize>, t: &str, shape: Option<&str>, content: Option<&str>) -> Result<Output> {
    let tv = parse_rational(t)?;
    if let (Some(s), Some(c)) = (shape, content) {
        let (lam, mu) = (partition(s)?, partition(c)?);
        let v = kostka_foulkes_entry(&lam, &mu, &tv)?;
        return Ok(Output {
            params: json!({"shape": lam.to_string(), "content": mu.to_string(), "t": render(&tv)}),
            result: json!({"value": exact(&v)}),
            passed: None,
        });
    }
    let n = n.ok_or_else(|| bad("give --n, or --shape with --content"))?;
    let k = kostka_foulkes_matrix(n, &tv)?;
    let labels: Vec<String> = enumerate_partitions(n)?.iter().map(|p| p.to_string()).collect();
    let rows: Vec<Vec<String>> = k.data.iter().map(|r| r.iter().map(render).collect()).collect();
    Ok(Output {
        params: json!({"n": n, "t": render(&tv)}),
        result: json!({"partitions": labels, "rows_shape_columns_content": rows}),
        passed: None,
    })
}

fn cylinder_cmd(spec_path: &Path, q: Option<&str>, rho: &str, convention: &str) -> Result<Output> {
    let (spec, fq) = load_spec(spec_path)?;
    let ground = resolve_q(q, fq)?;
    let rho = partition(rho)?;
    let meas = measure_for(&spec, &ground, convention)?;
    let v = meas.cylinder_prob(&rho)?;
    let mut checks = Map::new();
    let in_unit = v >= int(0) && v <= int(1);
    checks.insert("in_unit_interval".into(), json!(in_unit));
    let mut passed = in_unit;
    if !spec.has_geometric() {
        let ok = characteristic_cylinder_via_r(&spec, &rho, &ground)? == v;
        checks.insert("two_route".into(), json!(ok));
        passed &= ok;
    }
    Ok(Output {
        params: json!({
            "spec": spec.to_string(), "q": render(&ground.q), "rho": rho.to_string(),
            "convention": if spec.has_geometric() { "as-given" } else { convention },
        }),
        result: json!({
            "rho": rho.to_string(),
            "value_num": v.numer().to_string(),
            "value_den": v.denom().to_string(),
            "value": exact(&v),
            "checks": checks,
        }),
        passed: Some(passed),
    })
}

fn coherence_cmd(spec_path: &Path, q: Option<&str>, nmax: usize, convention: &str, source: Source) -> Result<Output> {
    let (spec, fq) = load_spec(spec_path)?;
    let ground = resolve_q(q, fq)?;
    let ctx = FieldCtx::new(integer_q(&ground)?)?;
    let meas = measure_for(&spec, &ground, convention)?;
    let src = match source {
        Source::Brute => CountSource::BruteForce,
        Source::Closed => CountSource::ClosedForm,
    };
    let rep = check_coherence_with(&meas, nmax, &ctx, src)?;
    let passed = rep.passed();
    Ok(Output {
        params: json!({"spec": spec.to_string(), "q": ctx.q(), "nmax": nmax, "convention": convention}),
        result: serde_json::to_value(&rep).expect("report serializes"),
        passed: Some(passed),
    })
}

fn character_cmd(kind: Kind, label: Option<&str>, class: &str, q: &str, spec: Option<&Path>) -> Result<Output> {
    let qv = parse_rational(q)?;
    let rho = partition(class)?;
    let (kind_name, label_text, v) = match kind {
        Kind::Unipotent => {
            let lam = partition(label.ok_or_else(|| bad("--label is required"))?)?;
            ("unipotent", lam.to_string(), chi_unipotent(&lam, &rho, &qv)?)
        }
        Kind::Induced => {
            let mu = composition(label.ok_or_else(|| bad("--label is required"))?)?;
            ("induced", mu.to_string(), psi_unipotent(&mu, &rho, &qv)?)
        }
        Kind::Glb => {
            let (s, _) = load_spec(spec.ok_or_else(|| bad("--spec is required for --kind glb"))?)?;
            ("glb", s.to_string(), glb_character_unipotent(&s, &rho, &GroundParams::new(qv.clone())?)?)
        }
    };
    Ok(Output {
        params: json!({"kind": kind_name, "label": label_text, "class": rho.to_string(), "q": render(&qv)}),
        result: json!({"value": exact(&v)}),
        passed: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn lln_cmd(
    mode: ModeArg,
    spec: Option<&Path>,
    q: u32,
    n: usize,
    trials: usize,
    seed: u64,
    k_max: usize,
    refresh: usize,
    fast_path: bool,
    gate: bool,
    csv: Option<&Path>,
    trajectories: bool,
) -> Result<Output> {
    let (mode, spec) = match mode {
        ModeArg::Haar => (LlnMode::Haar, ThomaSpec::trivial()),
        ModeArg::Measure => {
            let (s, _) = load_spec(spec.ok_or_else(|| bad("--spec is required in measure mode"))?)?;
            (LlnMode::Measure, s)
        }
    };
    let cfg = LlnConfig {
        mode,
        spec,
        convention: Convention::default(),
        q,
        n_max: n,
        trials,
        seed,
        k_max,
        refresh,
        fast_path,
        keep_trajectories: trajectories || csv.is_some(),
    };
    let mut rep = run_lln(&cfg)?;
    if let Some(path) = csv {
        let text = rep.trajectories_csv().expect("trajectories kept");
        std::fs::write(path, text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    }
    if !trajectories {
        rep.trajectories = None;
    }
    let passed = if gate { Some(rep.gate.as_ref().is_some_and(|g| g.passed)) } else { None };
    Ok(Output {
        params: json!({
            "mode": format!("{:?}", cfg.mode).to_lowercase(), "spec": cfg.spec.to_string(), "q": q, "n": n,
            "trials": trials, "seed": seed, "k_max": k_max, "refresh": refresh, "fast_path": fast_path,
        }),
        result: serde_json::to_value(&rep).expect("report serializes"),
        passed,
    })
}

fn flag_count_cmd(flag_type: &str, matrix: Option<&str>, rho: Option<&str>, q: u32) -> Result<Output> {
    let ctx = FieldCtx::new(q)?;
    let mu = composition(flag_type)?;
    let (g, source, predicted) = match (matrix, rho) {
        (Some(m), None) => (MatGF::parse(m, &ctx)?, m.to_string(), None),
        (None, Some(r)) => {
            let r = partition(r)?;
            let pred = psi_unipotent(&mu, &r, &int(q as i64))?;
            (canonical_unipotent(&r, &ctx), format!("unipotent {r}"), Some(pred))
        }
        _ => return Err(bad("give exactly one of --matrix, --rho")),
    };
    let count = count_fixed_flags(&g, &mu)?;
    let passed = predicted.as_ref().map(|p| *p == Rational::from_integer(count.clone()));
    Ok(Output {
        params: json!({"type": mu.to_string(), "matrix": source, "q": q}),
        result: json!({
            "count": count.to_string(),
            "character_value": predicted.as_ref().map(exact),
        }),
        passed,
    })
}

fn grassmann_cmd(n: usize, k: usize, q: u32) -> Result<Output> {
    let ctx = FieldCtx::new(q)?;
    let qq = int(q as i64);
    let cells = enumerate_schubert_cells(n, k, &ctx)?;
    let mut rows = Vec::new();
    let mut passed = true;
    for (e, size) in &cells {
        let formula = finite_cell_size(e, &qq)?;
        let ok = formula == Rational::from_integer(size.clone());
        passed &= ok;
        let dim = match cell_dimension(e) {
            CellDim::Finite(d) => json!(d),
            CellDim::Infinite => json!("inf"),
        };
        rows.push(json!({"symbol": e.to_string(), "dimension": dim, "size": size.to_string(), "formula_agrees": ok}));
    }
    let symbols: Vec<&SchubertSymbol> = cells.keys().collect();
    let table: Vec<Vec<String>> = symbols
        .iter()
        .map(|a| symbols.iter().map(|b| cocycle(a, b, &qq).map(|c| render(&c))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let total: Rational = cells.values().map(|s| Rational::from_integer(s.clone())).sum();
    let mass_ok = total == gaussian_binomial(n, k, &qq)?;
    passed &= mass_ok;
    Ok(Output {
        params: json!({"n": n, "k": k, "q": q}),
        result: json!({
            "cells": rows,
            "cocycle": {"symbols": symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "rows": table},
            "total_points": exact(&total),
        }),
        passed: Some(passed),
    })
}

fn ipfamily_cmd(example: Example, m: usize, q: u32, h_order: usize) -> Result<Output> {
    let (name, embedding, induction) = match example {
        Example::Gl => {
            let ctx = FieldCtx::new(q)?;
            let e = check_embedding(&build_gl_ip_level(m, &ctx)?)?;
            ("gl", e, Some(flag_induction_check(m, &ctx)?))
        }
        Example::Affine => ("affine", check_embedding(&build_affine_ip_level(m, &FieldCtx::new(q)?)?)?, None),
        Example::Wreath => {
            let h = FiniteGroupTable::cyclic(h_order)?;
            ("wreath", check_embedding(&build_wreath_ip_level(m, &h)?.level)?, None)
        }
    };
    let passed = embedding.passed() && induction.as_ref().is_none_or(|v| v.passed);
    Ok(Output {
        params: json!({"example": name, "m": m, "q": q, "h_order": h_order}),
        result: json!({"embedding": embedding, "embedding_passed": embedding.passed(), "flag_induction": induction}),
        passed: Some(passed),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::KostkaFoulkes { .. } => "kostka-foulkes",
        Command::Cylinder { .. } => "cylinder",
        Command::CoherenceCheck { .. } => "coherence-check",
        Command::Character { .. } => "character",
        Command::Lln { .. } => "lln",
        Command::FlagCount { .. } => "flag-count",
        Command::Grassmann { .. } => "grassmann",
        Command::IpfamilyCheck { .. } => "ipfamily-check",
        Command::Selftest { .. } => "selftest",
    }
}

fn dispatch(c: &Command) -> Result<Output> {
    match c {
        Command::KostkaFoulkes { n, t, shape, content } => {
            kostka_foulkes_cmd(*n, t, shape.as_deref(), content.as_deref())
        }
        Command::Cylinder { spec, q, rho, convention } => cylinder_cmd(spec, q.as_deref(), rho, convention),
        Command::CoherenceCheck { spec, q, nmax, convention, source } => {
            coherence_cmd(spec, q.as_deref(), *nmax, convention, *source)
        }
        Command::Character { kind, label, class, q, spec } => {
            character_cmd(*kind, label.as_deref(), class, q, spec.as_deref())
        }
        Command::Lln { mode, spec, q, n, trials, seed, k_max, refresh, fast_path, gate, csv, trajectories } => lln_cmd(
            *mode,
            spec.as_deref(),
            *q,
            *n,
            *trials,
            *seed,
            *k_max,
            *refresh,
            *fast_path,
            *gate,
            csv.as_deref(),
            *trajectories,
        ),
        Command::FlagCount { flag_type, matrix, rho, q } => flag_count_cmd(flag_type, matrix.as_deref(), rho.as_deref(), *q),
        Command::Grassmann { n, k, q } => grassmann_cmd(*n, *k, *q),
        Command::IpfamilyCheck { example, m, q, h_order } => ipfamily_cmd(*example, *m, *q, *h_order),
        Command::Selftest { level } => selftest::run(matches!(level, Level::Full)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("glblab: {e}");
            return ExitCode::from(2);
        }
    }
    if let Ok(dir) = std::env::var(CACHE_ENV) {
        set_cache_dir(Some(PathBuf::from(dir)));
    }
    let start = Instant::now();
    let out = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("glblab: {e}");
            return ExitCode::from(2);
        }
    };
    let mut doc = json!({
        "schema": SCHEMA,
        "manifest": {
            "command": command_name(&cli.command),
            "params": out.params,
            "version": env!("CARGO_PKG_VERSION"),
            "closed_form_validated_size": CLOSED_FORM_VALIDATED_SIZE,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        },
        "result": out.result,
    });
    if let Some(p) = out.passed {
        doc["passed"] = json!(p);
    }
    let text = serde_json::to_string_pretty(&doc).expect("document serializes") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("glblab: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    match out.passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
