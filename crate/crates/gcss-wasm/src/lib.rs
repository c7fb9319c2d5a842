//! Browser demo bindings.
//!
//! Three interactive operations, each a plain JSON-string function so the
//! page needs no glue beyond `JSON.parse`/`JSON.stringify`:
//!
//! - [`ols_demo`] — sparse approximation of a noisy signal over a seeded
//!   dictionary of damped waves and bumps (single-column target).
//! - [`plane_demo`] — selection on a 2-row source, where columns are
//!   plottable plane vectors and the span coverage is visible directly.
//! - [`variant_demo`] — one source, four target recipes, overlaid
//!   objective-decay curves.
//!
//! Everything is deterministic in the seed. Errors come back as
//! `{"error": "..."}` rather than exceptions.

use gcss::rng::{NormalSource, SplitMix64};
use gcss::{
    build_target, greedy_select, solve_coefficients, DenseMatrix, TargetSpec, ToleranceConfig,
};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(value) => serde_json::to_string(&value).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(message) => error_json(&message),
    }
}

fn error_json(message: &str) -> String {
    serde_json::to_string(&serde_json::json!({ "error": message })).unwrap()
}

// ── Sparse approximation over a synthetic dictionary ─────────────────────

#[derive(Deserialize)]
struct OlsParams {
    seed: u64,
    /// Number of dictionary atoms (columns).
    atoms: usize,
    /// Signal length (rows).
    samples: usize,
    /// Atoms to select.
    select: usize,
    /// Standard deviation of the additive noise on the signal.
    noise: f64,
}

#[derive(Serialize)]
struct OlsStep {
    index: usize,
    residual_sq: f64,
    reconstruction: Vec<f64>,
}

#[derive(Serialize)]
struct OlsResponse {
    signal: Vec<f64>,
    true_atoms: Vec<usize>,
    selected: Vec<usize>,
    initial_residual_sq: f64,
    steps: Vec<OlsStep>,
    atoms: Vec<Vec<f64>>,
}

/// One dictionary atom sampled on [0, 1]: a damped sinusoid or a Gaussian
/// bump, unit-normalized.
fn make_atom(rng: &mut SplitMix64, samples: usize) -> Vec<f64> {
    let kind = rng.next_index(3);
    let mut atom: Vec<f64> = (0..samples)
        .map(|i| i as f64 / (samples - 1).max(1) as f64)
        .collect();
    match kind {
        0 => {
            let freq = rng.next_in(1.0, 8.0);
            let phase = rng.next_in(0.0, std::f64::consts::TAU);
            let damp = rng.next_in(0.0, 3.0);
            for t in atom.iter_mut() {
                *t = (std::f64::consts::TAU * freq * *t + phase).sin() * (-damp * *t).exp();
            }
        }
        1 => {
            let center = rng.next_in(0.1, 0.9);
            let width = rng.next_in(0.03, 0.15);
            for t in atom.iter_mut() {
                let z = (*t - center) / width;
                *t = (-0.5 * z * z).exp();
            }
        }
        _ => {
            let freq = rng.next_in(1.0, 6.0);
            let center = rng.next_in(0.2, 0.8);
            let width = rng.next_in(0.05, 0.2);
            for t in atom.iter_mut() {
                let z = (*t - center) / width;
                *t = (std::f64::consts::TAU * freq * *t).cos() * (-0.5 * z * z).exp();
            }
        }
    }
    let norm = atom.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in atom.iter_mut() {
            *v /= norm;
        }
    }
    atom
}

fn ols_response(params: OlsParams) -> Result<OlsResponse, String> {
    let OlsParams {
        seed,
        atoms,
        samples,
        select,
        noise,
    } = params;
    if atoms < 4 || atoms > 256 || samples < 8 || samples > 2048 {
        return Err("need 4..=256 atoms and 8..=2048 samples".into());
    }
    if select == 0 || select > atoms.min(samples) {
        return Err("select must be in 1..=min(atoms, samples)".into());
    }
    if !noise.is_finite() || noise < 0.0 {
        return Err("noise must be a non-negative number".into());
    }

    let mut rng = SplitMix64::new(seed);
    let columns: Vec<Vec<f64>> = (0..atoms).map(|_| make_atom(&mut rng, samples)).collect();
    let dictionary = DenseMatrix::from_fn(samples, atoms, |i, j| columns[j][i]);

    // Hidden combination of three distinct atoms plus noise.
    let mut true_atoms: Vec<usize> = Vec::new();
    while true_atoms.len() < 3.min(atoms) {
        let j = rng.next_index(atoms);
        if !true_atoms.contains(&j) {
            true_atoms.push(j);
        }
    }
    let mut signal = vec![0.0; samples];
    for &j in &true_atoms {
        let weight = rng.next_in(0.6, 1.6) * if rng.next_index(2) == 0 { 1.0 } else { -1.0 };
        for (s, &v) in signal.iter_mut().zip(&columns[j]) {
            *s += weight * v;
        }
    }
    let mut noise_src = NormalSource::new(rng.next_u64());
    for s in signal.iter_mut() {
        *s += noise * noise_src.next_normal();
    }

    let target = DenseMatrix::from_column(signal.clone()).map_err(|e| e.to_string())?;
    let report = greedy_select(&dictionary, &target, select, &ToleranceConfig::default())
        .map_err(|e| e.to_string())?;

    let mut steps = Vec::with_capacity(report.selected.len());
    for t in 0..report.selected.len() {
        let prefix = &report.selected[..=t];
        let coeffs = solve_coefficients(&dictionary, prefix, &target).map_err(|e| e.to_string())?;
        let basis = dictionary.select_columns(prefix).map_err(|e| e.to_string())?;
        let reconstruction_matrix = basis.mul(&coeffs.matrix);
        let reconstruction: Vec<f64> = reconstruction_matrix.column(0).to_vec();
        steps.push(OlsStep {
            index: report.selected[t],
            residual_sq: report.iterations[t].objective_after,
            reconstruction,
        });
    }

    Ok(OlsResponse {
        signal,
        true_atoms,
        selected: report.selected,
        initial_residual_sq: report.initial_objective,
        steps,
        atoms: columns,
    })
}

/// Sparse approximation demo: JSON in, JSON out (see [`OlsParams`]).
#[wasm_bindgen]
pub fn ols_demo(params: &str) -> String {
    respond(
        serde_json::from_str::<OlsParams>(params)
            .map_err(|e| format!("bad parameters: {e}"))
            .and_then(ols_response),
    )
}

// ── Plane selection: 2-row source, columns as plottable vectors ──────────

#[derive(Deserialize)]
struct PlaneParams {
    seed: u64,
    columns: usize,
    /// Number of direction clusters the columns bunch around.
    clusters: usize,
    select: usize,
}

#[derive(Serialize)]
struct PlaneResponse {
    points: Vec<[f64; 2]>,
    selected: Vec<usize>,
    gains: Vec<f64>,
    objective_trace: Vec<f64>,
    initial_objective: f64,
}

fn plane_response(params: PlaneParams) -> Result<PlaneResponse, String> {
    let PlaneParams {
        seed,
        columns,
        clusters,
        select,
    } = params;
    if columns < 3 || columns > 512 {
        return Err("need 3..=512 columns".into());
    }
    if clusters == 0 || clusters > columns {
        return Err("clusters must be in 1..=columns".into());
    }
    if select == 0 || select > 2 {
        return Err("select must be 1 or 2 (the plane has rank 2)".into());
    }

    let mut rng = SplitMix64::new(seed);
    let mut normals = NormalSource::new(rng.next_u64());
    let angles: Vec<f64> = (0..clusters)
        .map(|_| rng.next_in(0.0, std::f64::consts::TAU))
        .collect();
    let points: Vec<[f64; 2]> = (0..columns)
        .map(|_| {
            let angle = angles[rng.next_index(clusters)] + 0.12 * normals.next_normal();
            let radius = rng.next_in(0.3, 1.0);
            [radius * angle.cos(), radius * angle.sin()]
        })
        .collect();
    let a = DenseMatrix::from_fn(2, columns, |i, j| points[j][i]);

    let report = greedy_select(&a, &a, select, &ToleranceConfig::default())
        .map_err(|e| e.to_string())?;
    Ok(PlaneResponse {
        points,
        selected: report.selected.clone(),
        gains: report.iterations.iter().map(|r| r.gain).collect(),
        objective_trace: report
            .iterations
            .iter()
            .map(|r| r.objective_after)
            .collect(),
        initial_objective: report.initial_objective,
    })
}

/// Plane selection demo: JSON in, JSON out (see [`PlaneParams`]).
#[wasm_bindgen]
pub fn plane_demo(params: &str) -> String {
    respond(
        serde_json::from_str::<PlaneParams>(params)
            .map_err(|e| format!("bad parameters: {e}"))
            .and_then(plane_response),
    )
}

// ── Target-variant comparison on one source ───────────────────────────────

#[derive(Deserialize)]
struct VariantParams {
    seed: u64,
    rows: usize,
    columns: usize,
    select: usize,
    /// Sketch width for the random-projection target.
    sketch: usize,
    /// Rank for the SVD target.
    rank: usize,
    /// Group count for the feature-partition target.
    groups: usize,
}

#[derive(Serialize)]
struct VariantCurve {
    name: String,
    /// F(S_t) / ‖B‖²_F after t = 0, 1, … selections.
    relative_objective: Vec<f64>,
    selected: Vec<usize>,
}

#[derive(Serialize)]
struct VariantResponse {
    curves: Vec<VariantCurve>,
}

fn variant_response(params: VariantParams) -> Result<VariantResponse, String> {
    let VariantParams {
        seed,
        rows,
        columns,
        select,
        sketch,
        rank,
        groups,
    } = params;
    if rows < 2 || rows > 128 || columns < 4 || columns > 256 {
        return Err("need 2..=128 rows and 4..=256 columns".into());
    }
    if select == 0 || select > rows.min(columns) {
        return Err("select must be in 1..=min(rows, columns)".into());
    }

    let mut rng = SplitMix64::new(seed);
    // Low-rank-ish structure plus noise keeps the curves interesting.
    let latent = 2 + rng.next_index(rows.min(5));
    let left = DenseMatrix::from_fn(rows, latent, |_, _| rng.next_in(-1.0, 1.0));
    let right = DenseMatrix::from_fn(latent, columns, |_, _| rng.next_in(-1.0, 1.0));
    let mut a = left.mul(&right);
    let mut noise = NormalSource::new(rng.next_u64());
    for j in 0..columns {
        for v in a.column_mut(j) {
            *v += 0.05 * noise.next_normal();
        }
    }

    let specs = [
        ("self".to_string(), TargetSpec::SelfTarget),
        (
            format!("rproj:{sketch}"),
            TargetSpec::RandomProjection {
                r: sketch,
                seed: seed ^ 0xA5A5,
            },
        ),
        (format!("svd:{rank}"), TargetSpec::Svd { k: rank }),
        (
            format!("partition:{groups}"),
            TargetSpec::FeaturePartition {
                c: groups,
                seed: seed ^ 0x5A5A,
            },
        ),
    ];

    let mut curves = Vec::with_capacity(specs.len());
    for (name, spec) in specs {
        let b = build_target(&a, &spec).map_err(|e| format!("{name}: {e}"))?;
        let report = greedy_select(&a, b.as_ref(), select, &ToleranceConfig::default())
            .map_err(|e| format!("{name}: {e}"))?;
        let scale = report.initial_objective.max(f64::MIN_POSITIVE);
        let mut relative = Vec::with_capacity(report.iterations.len() + 1);
        relative.push(1.0);
        relative.extend(
            report
                .iterations
                .iter()
                .map(|r| (r.objective_after / scale).max(0.0)),
        );
        curves.push(VariantCurve {
            name,
            relative_objective: relative,
            selected: report.selected,
        });
    }
    Ok(VariantResponse { curves })
}

/// Target-variant comparison demo: JSON in, JSON out (see [`VariantParams`]).
#[wasm_bindgen]
pub fn variant_demo(params: &str) -> String {
    respond(
        serde_json::from_str::<VariantParams>(params)
            .map_err(|e| format!("bad parameters: {e}"))
            .and_then(variant_response),
    )
}
