//! Inferred (conditional) variances.
//!
//! The estimation recipe: Alice's observable `S` with outcomes `x_i` is
//! inferred from Bob's measurement of `S_B` with outcomes indexed by `j`.
//! From the joint distribution `P_{i,j} = Tr[(P_i ⊗ Q_j) ρ]` one forms the
//! conditional estimate `μ_j = Σ_i x_i P_{i,j} / P'_j` and the inferred
//! variance `Δ²_inf S = Σ_{i,j} P_{i,j} (x_i − μ_j)²`, skipping Bob columns
//! with marginal probability below [`tol::TAU_PROB`].
//!
//! For two qubits there is a closed form in the Bloch data
//! `(r, s, T)`: measuring along the unit direction `n` on both sides,
//!
//! ```text
//! Δ²_inf(n·σ) = (1 − (n·r)²) − (n·Tn − (n·r)(n·s))² / (1 − (n·s)²).
//! ```
//!
//! [`prop1_identity`] checks that the recipe and the closed form agree
//! exactly (within numerical tolerance) for any two-qubit state.

use crate::bounds::{BoundKind, BoundReport};
use crate::linalg::ComplexMatrix;
use crate::observables::{self, ObservableSpec};
use crate::states::{BlochDecomposition, DensityMatrix};
use crate::tol;
use crate::{CvurError, Result};

/// Embed a local operator on side A: `op ⊗ I_{dim_b}`.
pub fn embed_a(op: &ComplexMatrix, dim_b: usize) -> ComplexMatrix {
    op.kron(&ComplexMatrix::identity(dim_b))
}

/// Embed a local operator on side B: `I_{dim_a} ⊗ op`.
pub fn embed_b(dim_a: usize, op: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(dim_a).kron(op)
}

/// Mean and (unconditioned) variance of a full-space Hermitian operator.
///
/// The variance is clamped at zero, so tiny negative roundoff never leaks
/// into downstream square roots or denominators.
pub fn mean_and_variance(rho: &DensityMatrix, op_full: &ComplexMatrix) -> Result<(f64, f64)> {
    let mean = rho.expectation_real(op_full)?;
    let second = rho.expectation_real(&op_full.mul(op_full)?)?;
    Ok((mean, (second - mean * mean).max(0.0)))
}

/// Unconditioned variance `Δ²K = ⟨K²⟩ − ⟨K⟩²` of a full-space operator.
pub fn variance(rho: &DensityMatrix, op_full: &ComplexMatrix) -> Result<f64> {
    Ok(mean_and_variance(rho, op_full)?.1)
}

/// Full record of one inference: joint distribution, Bob's marginal,
/// conditional estimates, and the resulting inferred variance.
#[derive(Debug, Clone)]
pub struct InferredStats {
    /// `P_{i,j}` indexed `[alice outcome i][bob outcome j]`.
    pub joint_probs: Vec<Vec<f64>>,
    /// Alice outcome values `x_i` (clustered eigenvalues, ascending).
    pub alice_values: Vec<f64>,
    /// Bob outcome values (clustered eigenvalues, ascending).
    pub bob_values: Vec<f64>,
    /// Bob marginal `P'_j = Σ_i P_{i,j}`.
    pub bob_marginal: Vec<f64>,
    /// Conditional means `μ_j`; `None` when the column was skipped
    /// because `P'_j ≤ TAU_PROB`.
    pub conditional_means: Vec<Option<f64>>,
    /// `Σ_{i,j} P_{i,j} (x_i − μ_j)²` over the retained columns.
    pub inferred_variance: f64,
}

/// Joint outcome distribution `P_{i,j} = Tr[(P_i ⊗ Q_j) ρ]`.
///
/// Entries are clamped at zero if roundoff makes them slightly negative;
/// anything below −1e-9, or a total off from 1 by more than 1e-9, is an
/// internal-consistency failure rather than noise.
pub fn joint_probs(
    rho: &DensityMatrix,
    alice: &ObservableSpec,
    bob: &ObservableSpec,
) -> Result<Vec<Vec<f64>>> {
    if alice.dim() != rho.dim_a || bob.dim() != rho.dim_b {
        return Err(CvurError::InvalidDimensions(format!(
            "observables act on {}⊗{} but state is {}⊗{}",
            alice.dim(),
            bob.dim(),
            rho.dim_a,
            rho.dim_b
        )));
    }
    let mut probs = vec![vec![0.0; bob.eigenvalues.len()]; alice.eigenvalues.len()];
    let mut total = 0.0;
    for (i, p) in alice.projectors.iter().enumerate() {
        for (j, q) in bob.projectors.iter().enumerate() {
            let val = p.kron(q).trace_product(&rho.matrix)?.re;
            if val < -1e-9 {
                return Err(CvurError::InternalInconsistency(format!(
                    "joint probability P_{{{i},{j}}} = {val:.3e} is negative"
                )));
            }
            let val = val.max(0.0);
            probs[i][j] = val;
            total += val;
        }
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(CvurError::InternalInconsistency(format!(
            "joint probabilities sum to {total:.12}, expected 1"
        )));
    }
    Ok(probs)
}

/// Run the full inference recipe for Alice's `alice` conditioned on Bob's
/// measurement of `bob`.
pub fn inferred_stats(
    rho: &DensityMatrix,
    alice: &ObservableSpec,
    bob: &ObservableSpec,
) -> Result<InferredStats> {
    let probs = joint_probs(rho, alice, bob)?;
    let x = &alice.eigenvalues;
    let nb = bob.eigenvalues.len();

    let mut bob_marginal = vec![0.0; nb];
    for row in &probs {
        for (j, &v) in row.iter().enumerate() {
            bob_marginal[j] += v;
        }
    }

    let mut conditional_means = vec![None; nb];
    let mut var = 0.0;
    for j in 0..nb {
        if bob_marginal[j] <= tol::TAU_PROB {
            continue;
        }
        let mut mu = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            mu += xi * probs[i][j];
        }
        mu /= bob_marginal[j];
        conditional_means[j] = Some(mu);
        for (i, &xi) in x.iter().enumerate() {
            var += probs[i][j] * (xi - mu) * (xi - mu);
        }
    }

    Ok(InferredStats {
        joint_probs: probs,
        alice_values: x.clone(),
        bob_values: bob.eigenvalues.clone(),
        bob_marginal,
        conditional_means,
        inferred_variance: var,
    })
}

/// Inferred variance `Δ²_inf` by the recipe (see module docs).
pub fn inferred_variance(
    rho: &DensityMatrix,
    alice: &ObservableSpec,
    bob: &ObservableSpec,
) -> Result<f64> {
    Ok(inferred_stats(rho, alice, bob)?.inferred_variance)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Two-qubit closed form for the inferred variance along unit direction `n`
/// (both sides measure `n·σ`), from the Bloch data alone.
///
/// Degenerate conditioning: when Bob's marginal along `n` is deterministic
/// (`1 − (n·s)² ≤ TAU_DENOM`) the correction term is 0/0. If the connected
/// correlator along `n` also vanishes (within [`tol::TAU_CC`]) conditioning
/// is a no-op and the unconditioned variance `1 − (n·r)²` is returned;
/// otherwise the combination is inconsistent with a physical state and the
/// call fails with [`CvurError::DegenerateConditioning`].
pub fn closed_form_inferred_variance(bloch: &BlochDecomposition, n: [f64; 3]) -> Result<f64> {
    let norm = dot(n, n).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(CvurError::InvalidParameter(format!(
            "direction vector has norm {norm:.12}, expected 1"
        )));
    }
    let nr = dot(n, bloch.r);
    let ns = dot(n, bloch.s);
    let mut tn = [0.0; 3];
    for (i, row) in bloch.t.iter().enumerate() {
        tn[i] = dot(*row, n);
    }
    let ntn = dot(n, tn);
    let cc = ntn - nr * ns;
    let base = 1.0 - nr * nr;
    let denom = 1.0 - ns * ns;
    if denom <= tol::TAU_DENOM {
        if cc.abs() > tol::TAU_CC {
            return Err(CvurError::DegenerateConditioning(format!(
                "Bob marginal deterministic along n (1 − (n·s)² = {denom:.3e}) \
                 yet the connected correlator is {cc:.3e}"
            )));
        }
        return Ok(base.max(0.0));
    }
    Ok((base - cc * cc / denom).max(0.0))
}

/// The recipe/closed-form identity for two qubits: the inferred-variance sum
/// for directions `n` and `m` computed by the outcome recipe (LHS) equals the
/// Bloch closed form (RHS). Reported as an identity: satisfied means
/// `|lhs − rhs| ≤ TAU_BOUND`.
pub fn prop1_identity(rho: &DensityMatrix, n: [f64; 3], m: [f64; 3]) -> Result<BoundReport> {
    let bloch = rho.bloch()?;
    let s_spec = observables::pauli_from_vec(n)?;
    let q_spec = observables::pauli_from_vec(m)?;

    let lhs_s = inferred_variance(rho, &s_spec, &s_spec)?;
    let lhs_q = inferred_variance(rho, &q_spec, &q_spec)?;
    let rhs_s = closed_form_inferred_variance(&bloch, n)?;
    let rhs_q = closed_form_inferred_variance(&bloch, m)?;

    Ok(BoundReport::new(
        "prop1_identity",
        BoundKind::Identity,
        lhs_s + lhs_q,
        rhs_s + rhs_q,
        vec![
            ("recipe_S".into(), lhs_s),
            ("recipe_Q".into(), lhs_q),
            ("closed_S".into(), rhs_s),
            ("closed_Q".into(), rhs_q),
        ],
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{pauli_from_vec, spin32_x, spin32_y};
    use crate::states;

    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    #[test]
    fn product_state_inference_is_unconditioned_variance() {
        // |00⟩: conditioning on Bob tells Alice nothing about σx.
        let rho = states::schmidt_pure(0.0).unwrap();
        let sx = pauli_from_vec(X).unwrap();
        let v = inferred_variance(&rho, &sx, &sx).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let bloch = rho.bloch().unwrap();
        assert!((closed_form_inferred_variance(&bloch, X).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_inference_is_perfect() {
        // Werner p = 1 is the singlet: σz ⊗ σz perfectly anticorrelated.
        let rho = states::werner(1.0).unwrap();
        let sz = pauli_from_vec(Z).unwrap();
        let stats = inferred_stats(&rho, &sz, &sz).unwrap();
        assert!(stats.inferred_variance.abs() < 1e-12);
        // μ_j = −y_j exactly
        for (j, mu) in stats.conditional_means.iter().enumerate() {
            let mu = mu.expect("both columns populated");
            assert!((mu + stats.bob_values[j]).abs() < 1e-12);
        }
        let bloch = rho.bloch().unwrap();
        assert!(closed_form_inferred_variance(&bloch, Z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn deterministic_bob_column_is_skipped() {
        // |00⟩ along σz: Bob never reports −1, so that column is skipped.
        let rho = states::schmidt_pure(0.0).unwrap();
        let sz = pauli_from_vec(Z).unwrap();
        let stats = inferred_stats(&rho, &sz, &sz).unwrap();
        assert!(stats.bob_marginal[0].abs() < 1e-15); // outcome −1
        assert!((stats.bob_marginal[1] - 1.0).abs() < 1e-12); // outcome +1
        assert!(stats.conditional_means[0].is_none());
        let mu = stats.conditional_means[1].unwrap();
        assert!((mu - 1.0).abs() < 1e-12);
        assert!(stats.inferred_variance.abs() < 1e-12);
    }

    #[test]
    fn schmidt_conditional_structure_along_z() {
        let theta = 0.7;
        let rho = states::schmidt_pure(theta).unwrap();
        let sz = pauli_from_vec(Z).unwrap();
        let stats = inferred_stats(&rho, &sz, &sz).unwrap();
        // cos θ|00⟩ + sin θ|11⟩: joint outcomes (+,+) and (−,−) only.
        assert!((stats.joint_probs[1][1] - theta.cos().powi(2)).abs() < 1e-12);
        assert!((stats.joint_probs[0][0] - theta.sin().powi(2)).abs() < 1e-12);
        assert!(stats.joint_probs[0][1].abs() < 1e-12);
        assert!(stats.joint_probs[1][0].abs() < 1e-12);
        assert!(stats.inferred_variance.abs() < 1e-12);
    }

    #[test]
    fn recipe_matches_closed_form_on_random_states() {
        for seed in 0..40u64 {
            let rho = states::random_mixed(2, 2, 4, seed).unwrap();
            let bloch = rho.bloch().unwrap();
            let mut rng = crate::sampling::SeededRng::new(seed.wrapping_add(991));
            let n = rng.unit_vec3();
            let spec = pauli_from_vec(n).unwrap();
            let recipe = inferred_variance(&rho, &spec, &spec).unwrap();
            let closed = closed_form_inferred_variance(&bloch, n).unwrap();
            assert!(
                (recipe - closed).abs() < 1e-10,
                "seed {seed}: recipe {recipe} vs closed {closed}"
            );
        }
    }

    #[test]
    fn prop1_identity_report() {
        let rho = states::random_mixed(2, 2, 3, 7).unwrap();
        let report = prop1_identity(&rho, X, Y).unwrap();
        assert!(report.gap.abs() < 1e-10);
        assert!(report.satisfied);
        assert_eq!(report.components.len(), 4);
    }

    #[test]
    fn degenerate_conditioning_rules() {
        // Bob deterministic along z with a nonzero connected correlator:
        // inconsistent, must fail loudly.
        let mut bad = BlochDecomposition {
            r: [0.0; 3],
            s: [0.0, 0.0, 1.0],
            t: [[0.0; 3]; 3],
        };
        bad.t[2][2] = 0.5;
        assert!(matches!(
            closed_form_inferred_variance(&bad, Z),
            Err(CvurError::DegenerateConditioning(_))
        ));
        // Same marginal but vanishing correlator: conditioning is a no-op.
        bad.t[2][2] = 0.0;
        let v = closed_form_inferred_variance(&bad, Z).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_requires_unit_direction() {
        let rho = states::werner(0.5).unwrap();
        let bloch = rho.bloch().unwrap();
        assert!(closed_form_inferred_variance(&bloch, [1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn isotropic_d4_inference_matches_analytic_value() {
        // Conditional means are affine (μ_j = ±p·x_j), so
        // Δ²_inf = Var(x)(1 − p²) = 5(1 − p²) for the spin-3/2 observables.
        for &p in &[1.0, 0.8, 0.5, 0.0] {
            let rho = states::isotropic(p, 4).unwrap();
            let want = 5.0 * (1.0 - p * p);
            for spec in [spin32_x(), spin32_y()] {
                let stats = inferred_stats(&rho, &spec, &spec).unwrap();
                assert!(
                    (stats.inferred_variance - want).abs() < 1e-9,
                    "p = {p}: got {} want {want}",
                    stats.inferred_variance
                );
            }
            // Affine conditional means for S_x (positive correlation).
            if p > 0.0 {
                let stats = inferred_stats(&rho, &spin32_x(), &spin32_x()).unwrap();
                for (j, mu) in stats.conditional_means.iter().enumerate() {
                    let mu = mu.expect("uniform marginal");
                    assert!(
                        (mu - p * stats.bob_values[j]).abs() < 1e-9,
                        "p = {p}, column {j}: μ = {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn embedding_helpers_act_on_the_right_factor() {
        let rho = states::schmidt_pure(0.4).unwrap();
        let sz = crate::observables::pauli(2);
        let a_full = embed_a(&sz, 2);
        let b_full = embed_b(2, &sz);
        // ⟨σz⟩ = cos 2θ on both sides for the Schmidt family.
        let want = (2.0 * 0.4f64).cos();
        assert!((rho.expectation_real(&a_full).unwrap() - want).abs() < 1e-12);
        assert!((rho.expectation_real(&b_full).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn collective_operator_variance_on_singlet_vanishes() {
        let rho = states::werner(1.0).unwrap();
        let sz = crate::observables::pauli(2);
        let collective = embed_a(&sz, 2).add(&embed_b(2, &sz)).unwrap();
        let (mean, var) = mean_and_variance(&rho, &collective).unwrap();
        assert!(mean.abs() < 1e-12);
        assert!(var.abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let rho = states::isotropic(0.5, 3).unwrap();
        let sx = pauli_from_vec(X).unwrap();
        assert!(matches!(
            joint_probs(&rho, &sx, &sx),
            Err(CvurError::InvalidDimensions(_))
        ));
    }
}
