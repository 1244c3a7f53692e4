//! Python bindings. Exact values cross the boundary as "p/q" strings so
//! callers can feed them to `fractions.Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use glblab::characters;
use glblab::gflinalg::{count_fixed_flags as count_flags, FieldCtx, FlagType, MatGF};
use glblab::io::parse_spec_json;
use glblab::measures::{characteristic_cylinder_via_r, characteristic_measure_with, CentralMeasure, Convention};
use glblab::rational::{parse, render};
use glblab::sampler::{self, LlnConfig};
use glblab::symfun::{self, GroundParams};
use glblab::{Error, Partition};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn part(s: &str) -> PyResult<Partition> {
    s.parse().map_err(err)
}

fn flag_type(s: &str) -> PyResult<FlagType> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| PyValueError::new_err(format!("bad composition {s:?}"))))
        .collect::<PyResult<Vec<_>>>()?;
    FlagType::new(parts).map_err(err)
}

/// K_{shape, content}(t).
#[pyfunction]
#[pyo3(signature = (shape, content, t = "1"))]
fn kostka_foulkes(shape: &str, content: &str, t: &str) -> PyResult<String> {
    let v = symfun::kostka_foulkes_entry(&part(shape)?, &part(content)?, &parse(t).map_err(err)?).map_err(err)?;
    Ok(render(&v))
}

/// χ^λ at the unipotent class of Jordan type ρ.
#[pyfunction]
fn chi_unipotent(lam: &str, rho: &str, q: &str) -> PyResult<String> {
    let v = characters::chi_unipotent(&part(lam)?, &part(rho)?, &parse(q).map_err(err)?).map_err(err)?;
    Ok(render(&v))
}

/// ψ^μ (flag permutation character) at the unipotent class ρ.
#[pyfunction]
fn psi_unipotent(mu: &str, rho: &str, q: &str) -> PyResult<String> {
    let v = characters::psi_unipotent(&flag_type(mu)?, &part(rho)?, &parse(q).map_err(err)?).map_err(err)?;
    Ok(render(&v))
}

/// Number of μ-flags fixed by a matrix given as "110;010;001".
#[pyfunction]
fn count_fixed_flags(matrix: &str, mu: &str, q: u32) -> PyResult<String> {
    let ctx = FieldCtx::new(q).map_err(err)?;
    let g = MatGF::parse(matrix, &ctx).map_err(err)?;
    Ok(count_flags(&g, &flag_type(mu)?).map_err(err)?.to_string())
}

/// Cylinder probability M_ρ for a spec given as JSON text.
#[pyfunction]
#[pyo3(signature = (spec_json, rho, q = None, convention = "expand-alpha"))]
fn cylinder(spec_json: &str, rho: &str, q: Option<&str>, convention: &str) -> PyResult<String> {
    let file = parse_spec_json(spec_json).map_err(err)?;
    let spec = file.spec().map_err(err)?;
    let q = match q {
        Some(s) => parse(s).map_err(err)?,
        None => file.q().map_err(err)?.ok_or_else(|| PyValueError::new_err("q is required"))?,
    };
    let ground = GroundParams::new(q).map_err(err)?;
    let meas = if spec.has_geometric() {
        CentralMeasure::new(spec, ground)
    } else {
        let conv: Convention = convention.parse().map_err(err)?;
        characteristic_measure_with(&spec, &ground, conv).map_err(err)?
    };
    Ok(render(&meas.cylinder_prob(&part(rho)?).map_err(err)?))
}

/// The same probability through the r-function route (atom specs only).
#[pyfunction]
#[pyo3(signature = (spec_json, rho, q))]
fn cylinder_via_r(spec_json: &str, rho: &str, q: &str) -> PyResult<String> {
    let spec = parse_spec_json(spec_json).and_then(|f| f.spec()).map_err(err)?;
    let ground = GroundParams::new(parse(q).map_err(err)?).map_err(err)?;
    Ok(render(&characteristic_cylinder_via_r(&spec, &part(rho)?, &ground).map_err(err)?))
}

/// Rows (0-based) receiving each new box along one Haar-random path.
#[pyfunction]
#[pyo3(signature = (q, n, seed, trial = 0))]
fn haar_path(q: u32, n: usize, seed: u64, trial: u64) -> PyResult<Vec<u32>> {
    sampler::haar_path(q, n, seed, trial, sampler::haar::DEFAULT_REFRESH).map_err(err)
}

/// Haar-mode frequency report as a JSON string.
#[pyfunction]
#[pyo3(signature = (q, n, trials, seed))]
fn lln_haar(py: Python<'_>, q: u32, n: usize, trials: usize, seed: u64) -> PyResult<String> {
    let cfg = LlnConfig::haar(q, n, trials, seed);
    let rep = py.detach(|| sampler::run_lln(&cfg)).map_err(err)?;
    Ok(rep.to_json())
}

#[pymodule]
fn glblab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(kostka_foulkes, m)?)?;
    m.add_function(wrap_pyfunction!(chi_unipotent, m)?)?;
    m.add_function(wrap_pyfunction!(psi_unipotent, m)?)?;
    m.add_function(wrap_pyfunction!(count_fixed_flags, m)?)?;
    m.add_function(wrap_pyfunction!(cylinder, m)?)?;
    m.add_function(wrap_pyfunction!(cylinder_via_r, m)?)?;
    m.add_function(wrap_pyfunction!(haar_path, m)?)?;
    m.add_function(wrap_pyfunction!(lln_haar, m)?)?;
    Ok(())
}
