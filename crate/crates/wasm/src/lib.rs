//! Browser bindings for the interactive demo page (`www/index.html`).
//!
//! Three operations back the page's plots; each returns a flat `Float64Array`
//! so the page needs no JSON plumbing:
//! - [`schmidt_curve`]: `[theta, product_lhs, product_rhs, c_sq]` per grid
//!   point — the inferred-variance product bound over the Schmidt family.
//! - [`werner_curve`]: `[p, inferred_sum, relaxed_rhs, concurrence]` per grid
//!   point — the Werner line with the correlation-strength bound.
//! - [`discord_scatter`]: `[rhs, lhs]` per random state — the
//!   skew-information bound scatter (all points land on or above `y = x`).
//!
//! Inputs are clamped rather than rejected: the page's sliders cannot express
//! an invalid configuration, and a demo should never trap the whole module
//! over an out-of-range number.

use cvur::bounds::{self, Prop2Variant, Prop3Variant, Prop4Variant, Prop5Variant};
use cvur::measures;
use cvur::sampling::sample_seed;
use cvur::states;
use std::f64::consts::FRAC_PI_2;
use wasm_bindgen::prelude::wasm_bindgen;

const X: [f64; 3] = [1.0, 0.0, 0.0];
const Y: [f64; 3] = [0.0, 1.0, 0.0];

fn clamp_steps(steps: u32) -> usize {
    steps.clamp(2, 4096) as usize
}

/// Product bound over the Schmidt family cos θ|00⟩ + sin θ|11⟩ with
/// (σx, σy): per point `[theta, product_lhs, product_rhs, c_sq]`.
#[wasm_bindgen]
pub fn schmidt_curve(steps: u32) -> Vec<f64> {
    let steps = clamp_steps(steps);
    let mut out = Vec::with_capacity(4 * (steps + 1));
    for i in 0..=steps {
        let theta = FRAC_PI_2 * i as f64 / steps as f64;
        let rho = states::schmidt_pure(theta).expect("theta in range");
        let report = bounds::prop5_product_bound(&rho, X, Y, None, Prop5Variant::PureConcurrence)
            .expect("pure Schmidt state");
        out.extend_from_slice(&[theta, report.lhs, report.rhs, (2.0 * theta).sin().powi(2)]);
    }
    out
}

/// Werner line p·|ψ⁻⟩⟨ψ⁻| + (1 − p)I/4 with (σx, σy): per point
/// `[p, inferred_sum, relaxed_rhs, concurrence]`.
#[wasm_bindgen]
pub fn werner_curve(steps: u32) -> Vec<f64> {
    let steps = clamp_steps(steps);
    let mut out = Vec::with_capacity(4 * (steps + 1));
    for i in 0..=steps {
        let p = i as f64 / steps as f64;
        let rho = states::werner(p).expect("p in range");
        let report =
            bounds::prop4_g_bound(&rho, X, Y, None, Prop4Variant::G).expect("werner state");
        let c = measures::concurrence(&rho).expect("two qubits").value;
        out.extend_from_slice(&[p, report.lhs, report.rhs, c]);
    }
    out
}

/// Skew-information bound on random full-rank two-qubit states with
/// (σx, σy): per state `[rhs, lhs]`. Same seeding scheme as the CLI, so a
/// seed reproduces the CLI's scatter exactly.
#[wasm_bindgen]
pub fn discord_scatter(seed: u32, n: u32) -> Vec<f64> {
    let n = n.clamp(1, 20000) as u64;
    let mut out = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        let s = sample_seed(seed as u64, i) ^ 0x9e37_79b9_7f4a_7c15;
        let rho = states::random_mixed(2, 2, 4, s).expect("valid sample");
        let report = bounds::prop3_discord_bound(&rho, X, Y, Prop3Variant::PerObservable)
            .expect("two qubits");
        out.extend_from_slice(&[report.rhs, report.lhs]);
    }
    out
}

/// Saturating sum bound over the Schmidt family — kept for completeness so
/// the page can overlay the sum relation on the product plot if extended:
/// per point `[theta, sum_lhs, sum_rhs]`.
#[wasm_bindgen]
pub fn schmidt_sum_curve(steps: u32) -> Vec<f64> {
    let steps = clamp_steps(steps);
    let mut out = Vec::with_capacity(3 * (steps + 1));
    for i in 0..=steps {
        let theta = FRAC_PI_2 * i as f64 / steps as f64;
        let rho = states::schmidt_pure(theta).expect("theta in range");
        let report = bounds::prop2_sum_bound(&rho, X, Y, Prop2Variant::Concurrence)
            .expect("pure Schmidt state");
        out.extend_from_slice(&[theta, report.lhs, report.rhs]);
    }
    out
}
