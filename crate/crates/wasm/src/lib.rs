//! Browser bindings for the interactive demo page.
//!
//! Three operations back the page: a full axiom report for a seed system,
//! a perturbation scan over caller-chosen t values, and the Drinfel'd
//! polynomial data (exact coefficients, excluded t values) for plotting.
//! Every function returns a JSON string; errors come back as
//! `{"error": "..."}` so the page can render them inline.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tdpair::{
    build_seed, drinfeld_poly, ladder_eigenvalue, scan, split_decomposition, trace_identities,
    AxiomReport, ParallelSystem, Rational, ScanRow, Subspace, TraceIdentityReport, SEED_NAMES,
};

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(err_json)
}

fn load(seed: &str) -> Result<ParallelSystem, String> {
    build_seed(seed).map_err(|e| e.to_string())
}

/// Names of the built-in seed systems.
#[wasm_bindgen]
pub fn seed_names() -> String {
    to_json(&SEED_NAMES)
}

#[derive(Serialize)]
struct VerifyView {
    seed: String,
    n: usize,
    d: usize,
    q: String,
    theta: Vec<String>,
    theta_star: Vec<String>,
    zeta: Vec<String>,
    report: AxiomReport,
    trace_identities: TraceIdentityReport,
    split_dims: Vec<usize>,
    ladder_matches_trace: bool,
    a: Vec<Vec<String>>,
    a_star: Vec<Vec<String>>,
}

fn matrix_strings(m: &tdpair::Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// Full verification report for one seed.
#[wasm_bindgen]
pub fn verify_report(seed: &str) -> String {
    let inner = || -> Result<VerifyView, String> {
        let ps = load(seed)?;
        let report = ps.verify();
        let zeta = ps.split_sequence().map_err(|e| e.to_string())?;
        let trace = trace_identities(&ps).map_err(|e| e.to_string())?;
        let u = split_decomposition(&ps).map_err(|e| e.to_string())?;
        let ladder_matches_trace = zeta.iter().enumerate().all(|(i, z)| {
            ladder_eigenvalue(&ps, &u, i)
                .map(|l| &l == z)
                .unwrap_or(false)
        });
        Ok(VerifyView {
            seed: seed.to_string(),
            n: ps.dim(),
            d: ps.diameter(),
            q: ps.ctx().q().to_string(),
            theta: ps.theta().iter().map(Rational::to_string).collect(),
            theta_star: ps.theta_star().iter().map(Rational::to_string).collect(),
            zeta: zeta.iter().map(Rational::to_string).collect(),
            report,
            trace_identities: trace,
            split_dims: u.iter().map(Subspace::dim).collect(),
            ladder_matches_trace,
            a: matrix_strings(ps.a()),
            a_star: matrix_strings(ps.a_star()),
        })
    };
    match inner() {
        Ok(view) => to_json(&view),
        Err(e) => err_json(e),
    }
}

#[derive(Serialize)]
struct ScanView {
    seed: String,
    rows: Vec<ScanRowView>,
}

#[derive(Serialize)]
struct ScanRowView {
    t: String,
    t_approx: f64,
    predicted: bool,
    actual: bool,
    failing_axiom: Option<String>,
    witness: Option<Vec<Vec<String>>>,
}

/// Scan the perturbation over comma-separated t values; `auto_bad` appends
/// t = 0 and every rational excluded t.
#[wasm_bindgen]
pub fn scan_seed(seed: &str, t_csv: &str, auto_bad: bool) -> String {
    let inner = || -> Result<ScanView, String> {
        let ps = load(seed)?;
        let mut ts: Vec<Rational> = Vec::new();
        for part in t_csv.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            ts.push(part.parse().map_err(|e: tdpair::Error| e.to_string())?);
        }
        if auto_bad {
            ts.push(Rational::zero());
            let zeta = ps.split_sequence().map_err(|e| e.to_string())?;
            let p = drinfeld_poly(&zeta, ps.ctx()).map_err(|e| e.to_string())?;
            ts.extend(p.rational_bad_t());
        }
        if ts.is_empty() {
            return Err("no t values given".into());
        }
        let verdicts = scan(&ps, &ts).map_err(|e| e.to_string())?;
        let rows = verdicts
            .iter()
            .map(|v| {
                let row = ScanRow::from(v);
                ScanRowView {
                    t_approx: row.t.to_f64(),
                    t: row.t.to_string(),
                    predicted: row.predicted,
                    actual: row.actual,
                    failing_axiom: row.failing_axiom,
                    witness: row.witness.map(|w| {
                        w.basis_vectors()
                            .iter()
                            .map(|col| col.iter().map(Rational::to_string).collect())
                            .collect()
                    }),
                }
            })
            .collect();
        Ok(ScanView {
            seed: seed.to_string(),
            rows,
        })
    };
    match inner() {
        Ok(view) => to_json(&view),
        Err(e) => err_json(e),
    }
}

#[derive(Serialize)]
struct DrinfeldView {
    seed: String,
    d: usize,
    q: String,
    /// ascending coefficients, exact
    coeffs: Vec<String>,
    coeffs_approx: Vec<f64>,
    /// (q - q^-1)^2, the factor between the evaluation point and t
    t_scale: String,
    t_scale_approx: f64,
    /// rational roots of P, exact and approximate
    roots: Vec<String>,
    roots_approx: Vec<f64>,
    /// the excluded t values (roots scaled), exact and approximate
    bad_t: Vec<String>,
    bad_t_approx: Vec<f64>,
}

/// Drinfel'd polynomial data for a seed: exact coefficients, the t scale,
/// and every rational excluded t. The page evaluates the polynomial in
/// floating point only for drawing.
#[wasm_bindgen]
pub fn drinfeld_info(seed: &str) -> String {
    let inner = || -> Result<DrinfeldView, String> {
        let ps = load(seed)?;
        let zeta = ps.split_sequence().map_err(|e| e.to_string())?;
        let p = drinfeld_poly(&zeta, ps.ctx()).map_err(|e| e.to_string())?;
        let roots = p.poly().rational_roots();
        let bad_t = p.rational_bad_t();
        Ok(DrinfeldView {
            seed: seed.to_string(),
            d: ps.diameter(),
            q: ps.ctx().q().to_string(),
            coeffs: p.poly().coeffs().iter().map(Rational::to_string).collect(),
            coeffs_approx: p.poly().coeffs().iter().map(Rational::to_f64).collect(),
            t_scale: p.t_scale().to_string(),
            t_scale_approx: p.t_scale().to_f64(),
            roots: roots.iter().map(Rational::to_string).collect(),
            roots_approx: roots.iter().map(Rational::to_f64).collect(),
            bad_t: bad_t.iter().map(Rational::to_string).collect(),
            bad_t_approx: bad_t.iter().map(Rational::to_f64).collect(),
        })
    };
    match inner() {
        Ok(view) => to_json(&view),
        Err(e) => err_json(e),
    }
}
