//! Exact identity suites behind `glblab selftest`.

use serde_json::json;

use glblab::characters::{chi_matrix, chi_via_flag_oracle, frobenius_transition_check, two_decompositions};
use glblab::gflinalg::extension::check_closed_form;
use glblab::gflinalg::FieldCtx;
use glblab::measures::{characteristic_cylinder_via_r, characteristic_measure, check_coherence, CentralMeasure};
use glblab::partitions::enumerate_partitions;
use glblab::rational::{int, ratio};
use glblab::symfun::{kostka_foulkes_matrix, GroundParams, ThomaSpec};
use glblab::{Rational, Result};

use crate::Output;

struct Bounds {
    kostka: usize,
    chi: usize,
    frobenius: usize,
    coherence: usize,
    closed_form: usize,
    routes: usize,
}

const QUICK: Bounds = Bounds { kostka: 6, chi: 3, frobenius: 5, coherence: 5, closed_form: 6, routes: 5 };
const FULL: Bounds = Bounds { kostka: 9, chi: 4, frobenius: 8, coherence: 7, closed_form: 8, routes: 8 };

fn specs() -> Result<Vec<ThomaSpec>> {
    Ok(vec![
        ThomaSpec::trivial(),
        ThomaSpec::atoms(&[ratio(1, 2), ratio(1, 2)], &[])?,
        ThomaSpec::atoms(&[ratio(1, 2)], &[ratio(1, 2)])?,
        ThomaSpec::atoms(&[ratio(2, 3)], &[ratio(1, 6)])?,
    ])
}

pub fn run(full: bool) -> Result<Output> {
    let b = if full { FULL } else { QUICK };
    let mut checks = Vec::new();
    let mut record = |name: &str, ok: bool, detail: serde_json::Value| {
        checks.push(json!({"name": name, "passed": ok, "detail": detail}));
    };

    let t = ratio(1, 3);
    let mut ok = true;
    for n in 1..=b.kostka {
        let k = kostka_foulkes_matrix(n, &t)?;
        let upper = (0..k.n).all(|i| *k.get(i, i) == int(1) && (0..i).all(|j| *k.get(i, j) == int(0)));
        let at_zero = kostka_foulkes_matrix(n, &int(0))?.is_identity();
        ok &= upper && at_zero;
    }
    record("kostka_foulkes_unitriangular", ok, json!({"n_max": b.kostka}));

    for q in [2u32, 3] {
        let ctx = FieldCtx::new(q)?;
        let qq = int(q as i64);
        let mut ok = true;
        for n in 1..=b.chi {
            ok &= chi_via_flag_oracle(n, &ctx)? == chi_matrix(n, &qq)?;
        }
        record("characters_by_flag_counts", ok, json!({"q": q, "n_max": b.chi}));

        let ok = (1..=b.frobenius).map(|n| frobenius_transition_check(n, &qq)).collect::<Result<Vec<_>>>()?;
        record("frobenius_transition", ok.iter().all(|v| v.passed), json!({"q": q, "n_max": b.frobenius}));

        let first_bad = check_closed_form(b.closed_form, &ctx)?;
        record(
            "extension_closed_form",
            first_bad.is_none(),
            json!({"q": q, "n_max": b.closed_form, "first_mismatch": first_bad.map(|p| p.to_string())}),
        );

        let ground = GroundParams::from_int(q)?;
        let haar = check_coherence(&CentralMeasure::haar(ground.clone()), b.coherence, &ctx)?;
        let mut ok = haar.passed();
        for s in specs()? {
            ok &= check_coherence(&characteristic_measure(&s, &ground)?, b.coherence, &ctx)?.passed();
        }
        record("coherence", ok, json!({"q": q, "n_max": b.coherence}));
    }

    let ground = GroundParams::new(int(2))?;
    let mut ok = true;
    let mut count = 0usize;
    for s in specs()? {
        let meas = characteristic_measure(&s, &ground)?;
        for n in 0..=b.routes {
            for rho in enumerate_partitions(n)? {
                ok &= meas.cylinder_prob(&rho)? == characteristic_cylinder_via_r(&s, &rho, &ground)?;
                let (a, c): (Rational, Rational) = two_decompositions(&s, &rho, &ground)?;
                ok &= a == c;
                count += 1;
            }
        }
    }
    record("two_routes_and_decompositions", ok, json!({"cases": count}));

    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    Ok(Output {
        params: json!({"level": if full { "full" } else { "quick" }}),
        result: json!({"checks": checks}),
        passed: Some(passed),
    })
}
