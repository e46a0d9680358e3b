//! Entanglement and correlation measures.
//!
//! Everything a bound's right-hand side can ask for: connected correlators
//! and their maximum over local directions, Wootters concurrence, the total
//! correlation strength `G`, Wigner–Yanase skew information and the local
//! quantum uncertainty built from it, von Neumann entropy / mutual
//! information (base 2 throughout), entanglement of formation, and the
//! covariance-based entanglement quantifier for pure states.
//!
//! Measures that are only meaningful on a restricted domain enforce that
//! domain ([`covariance_entanglement`] and [`i_concurrence_pure`] require
//! purity) instead of silently returning a number outside it.

use crate::linalg::{largest_singular_value, ComplexMatrix};
use crate::observables::pauli;
use crate::states::DensityMatrix;
use crate::tol;
use crate::{CvurError, Result, Side};

/// A named scalar with the intermediate quantities that certify it.
#[derive(Debug, Clone)]
pub struct MeasureValue {
    pub name: String,
    pub value: f64,
    /// Named witnesses: optimizing directions, spectra, cross-check routes.
    pub witnesses: Vec<(String, f64)>,
}

fn require_two_qubits(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.dim_a != 2 || rho.dim_b != 2 {
        return Err(CvurError::InvalidDimensions(format!(
            "{what} is implemented for two-qubit states, got {}⊗{}",
            rho.dim_a, rho.dim_b
        )));
    }
    Ok(())
}

/// Connected correlator `⟨A⊗B⟩ − ⟨A⊗I⟩⟨I⊗B⟩` of local Hermitian operators.
pub fn connected_correlator(
    rho: &DensityMatrix,
    a_local: &ComplexMatrix,
    b_local: &ComplexMatrix,
) -> Result<f64> {
    if a_local.rows() != rho.dim_a || b_local.rows() != rho.dim_b {
        return Err(CvurError::InvalidDimensions(
            "local operators do not match the state's factors".into(),
        ));
    }
    let joint = rho.expectation_real(&a_local.kron(b_local))?;
    let a_mean = rho.expectation_real(&crate::inference::embed_a(a_local, rho.dim_b))?;
    let b_mean = rho.expectation_real(&crate::inference::embed_b(rho.dim_a, b_local))?;
    Ok(joint - a_mean * b_mean)
}

/// Maximal connected correlator of a two-qubit state over unit Pauli
/// directions: `CC_max = σ_max(T − r sᵀ)`, with the optimizing directions
/// `a` (Alice) and `b` (Bob) reported as witnesses.
pub fn max_connected_correlator(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubits(rho, "max_connected_correlator")?;
    let bloch = rho.bloch()?;
    let mut m = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = bloch.t[i][j] - bloch.r[i] * bloch.s[j];
        }
    }
    let (a, b, sigma) = largest_singular_value(&m);
    Ok(MeasureValue {
        name: "max_connected_correlator".into(),
        value: sigma,
        witnesses: vec![
            ("a_x".into(), a[0]),
            ("a_y".into(), a[1]),
            ("a_z".into(), a[2]),
            ("b_x".into(), b[0]),
            ("b_y".into(), b[1]),
            ("b_z".into(), b[2]),
        ],
    })
}

/// Wootters concurrence of a two-qubit state (pure or mixed).
///
/// Computed from the Hermitian matrix `√ρ ρ̃ √ρ` whose eigenvalues are the
/// squares of the usual Wootters `λ_i`; this avoids the non-Hermitian
/// eigenproblem of `ρ ρ̃`. Witnesses are the four `λ_i`, descending.
pub fn concurrence(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubits(rho, "concurrence")?;
    let yy = pauli(1).kron(&pauli(1));
    let rho_tilde = yy.mul(&rho.matrix.conj())?.mul(&yy)?;
    let sqrt_rho = rho.matrix.psd_sqrt()?;
    let herm = sqrt_rho.mul(&rho_tilde)?.mul(&sqrt_rho)?;
    let (vals, _) = herm.hermitian_eig()?;
    // Zero out noise-floor eigenvalues before the square root amplifies them
    // into spurious λ contributions (rank-1 products carry ~1e-17 residue).
    let floor = vals.iter().fold(0.0f64, |a, &b| a.max(b)) * tol::TAU_EIG_REL;
    let mut lams: Vec<f64> = vals
        .iter()
        .map(|&v| if v <= floor { 0.0 } else { v.sqrt() })
        .collect();
    lams.reverse();
    let value = (lams[0] - lams[1] - lams[2] - lams[3]).max(0.0);
    Ok(MeasureValue {
        name: "concurrence".into(),
        value,
        witnesses: lams
            .iter()
            .enumerate()
            .map(|(k, &l)| (format!("lambda_{}", k + 1), l))
            .collect(),
    })
}

/// Total correlation strength `G = Σ_{ij} (T_ij − r_i s_j)²` of a two-qubit
/// state, cross-checked against the basis-free route
/// `4 Tr[(ρ − ρ_A ⊗ ρ_B)²]`; the two must agree to 1e-9 or the call fails
/// with an internal-consistency error. Both route values are witnesses.
pub fn g_function(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubits(rho, "g_function")?;
    let bloch = rho.bloch()?;
    let mut sum = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let e = bloch.t[i][j] - bloch.r[i] * bloch.s[j];
            sum += e * e;
        }
    }
    let product = DensityMatrix::new(
        rho.reduced_a().kron(&rho.reduced_b()),
        rho.dim_a,
        rho.dim_b,
    )?;
    let diff = rho.matrix.sub(&product.matrix)?;
    let trace_route = 4.0 * diff.mul(&diff)?.trace()?.re;
    if (sum - trace_route).abs() > 1e-9 {
        return Err(CvurError::InternalInconsistency(format!(
            "G routes disagree: correlator sum {sum:.12e} vs trace route {trace_route:.12e}"
        )));
    }
    Ok(MeasureValue {
        name: "g_function".into(),
        value: sum,
        witnesses: vec![
            ("route_correlators".into(), sum),
            ("route_trace".into(), trace_route),
        ],
    })
}

/// Wigner–Yanase skew information `I(ρ, K) = Tr(ρK²) − Tr(√ρ K √ρ K)` of a
/// full-space Hermitian operator, clamped at zero against roundoff.
pub fn skew_information(rho: &DensityMatrix, k_full: &ComplexMatrix) -> Result<f64> {
    if k_full.rows() != rho.dim() {
        return Err(CvurError::InvalidDimensions(
            "skew information operator must act on the full space".into(),
        ));
    }
    if !k_full.is_hermitian(tol::TAU_HERM) {
        return Err(CvurError::NonHermitian(
            "skew information requires a Hermitian operator".into(),
        ));
    }
    let sqrt_rho = rho.matrix.psd_sqrt()?;
    let first = rho.expectation_real(&k_full.mul(k_full)?)?;
    let second = sqrt_rho
        .mul(k_full)?
        .mul(&sqrt_rho)?
        .mul(k_full)?
        .trace()?
        .re;
    Ok((first - second).max(0.0))
}

/// Local quantum uncertainty of the probed qubit side:
/// `LQU = 1 − λ_max(W)` with `W_ij = Tr[√ρ σ_i^{side} √ρ σ_j^{side}]`.
///
/// Equivalently the minimum over unit directions `n` of the skew information
/// `I(ρ, n·σ^{side})`. The optimizing direction (eigenvector of `λ_max`) is
/// reported as a witness.
pub fn lqu(rho: &DensityMatrix, side: Side) -> Result<MeasureValue> {
    let probed = match side {
        Side::A => rho.dim_a,
        Side::B => rho.dim_b,
    };
    if probed != 2 {
        return Err(CvurError::InvalidDimensions(format!(
            "LQU probes a qubit side, got dimension {probed}"
        )));
    }
    let sqrt_rho = rho.matrix.psd_sqrt()?;
    let embed = |i: usize| match side {
        Side::A => crate::inference::embed_a(&pauli(i), rho.dim_b),
        Side::B => crate::inference::embed_b(rho.dim_a, &pauli(i)),
    };
    let mut w = [[0.0f64; 3]; 3];
    for i in 0..3 {
        let si = embed(i);
        for j in i..3 {
            let sj = embed(j);
            let val = sqrt_rho.mul(&si)?.mul(&sqrt_rho)?.mul(&sj)?.trace()?.re;
            w[i][j] = val;
            w[j][i] = val;
        }
    }
    let flat: Vec<f64> = w.iter().flatten().copied().collect();
    let wm = ComplexMatrix::from_real(3, &flat)?;
    let (vals, vecs) = wm.hermitian_eig()?;
    let lam_max = vals[2];
    // W is real symmetric, so the Jacobi eigenvectors are real.
    let mut n = [vecs.get(0, 2).re, vecs.get(1, 2).re, vecs.get(2, 2).re];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    for c in &mut n {
        *c /= len;
    }
    Ok(MeasureValue {
        name: "lqu".into(),
        value: (1.0 - lam_max).max(0.0),
        witnesses: vec![
            ("lambda_max".into(), lam_max),
            ("n_x".into(), n[0]),
            ("n_y".into(), n[1]),
            ("n_z".into(), n[2]),
        ],
    })
}

/// Von Neumann entropy in bits of a density-like Hermitian matrix
/// (unit trace, PSD up to [`tol::TAU_PSD`]).
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let tr = m.trace()?.re;
    if (tr - 1.0).abs() > 1e-9 {
        return Err(CvurError::InvalidParameter(format!(
            "entropy argument has trace {tr:.12}, expected 1"
        )));
    }
    let (vals, _) = m.hermitian_eig()?;
    let mut s = 0.0;
    for &v in &vals {
        if v < -tol::TAU_PSD {
            return Err(CvurError::NotPositiveSemidefinite { min_eigenvalue: v });
        }
        if v > 0.0 {
            s -= v * v.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Quantum mutual information `I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let sa = von_neumann_entropy(&rho.reduced_a())?;
    let sb = von_neumann_entropy(&rho.reduced_b())?;
    let s = von_neumann_entropy(&rho.matrix)?;
    Ok((sa + sb - s).max(0.0))
}

/// Binary entropy `h(x) = −x log₂ x − (1−x) log₂(1−x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.log2();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).log2();
    }
    h.max(0.0)
}

/// Entanglement of formation of a two-qubit state (pure or mixed), in bits:
/// `E_f = h((1 + √(1 − C²)) / 2)` with `C` the Wootters concurrence.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence(rho)?.value;
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

/// Entanglement entropy `S(ρ_A)` in bits of a pure bipartite state.
pub fn entanglement_entropy_pure(rho: &DensityMatrix) -> Result<f64> {
    if !rho.is_pure() {
        return Err(CvurError::InvalidParameter(format!(
            "entanglement entropy needs a pure state; purity = {:.12}",
            rho.purity()
        )));
    }
    von_neumann_entropy(&rho.reduced_a())
}

/// Covariance-based entanglement quantifier for pure two-qubit states: the
/// maximal covariance of unit Pauli pairs, i.e. `CC_max` restricted to the
/// pure domain where it is an entanglement monotone (it equals the
/// concurrence there). Rejects mixed states.
pub fn covariance_entanglement(rho: &DensityMatrix) -> Result<MeasureValue> {
    require_two_qubits(rho, "covariance_entanglement")?;
    if !rho.is_pure() {
        return Err(CvurError::InvalidParameter(format!(
            "covariance entanglement is defined on pure states; purity = {:.12}",
            rho.purity()
        )));
    }
    let mut m = max_connected_correlator(rho)?;
    m.name = "covariance_entanglement".into();
    Ok(m)
}

/// I-concurrence `√(2(1 − Tr ρ_A²))` of a pure bipartite state in any
/// dimension. Rejects mixed states, where this expression is not a measure.
pub fn i_concurrence_pure(rho: &DensityMatrix) -> Result<f64> {
    if !rho.is_pure() {
        return Err(CvurError::InvalidParameter(format!(
            "I-concurrence formula needs a pure state; purity = {:.12}",
            rho.purity()
        )));
    }
    let ra = rho.reduced_a();
    let tr2 = ra.mul(&ra)?.trace()?.re;
    Ok((2.0 * (1.0 - tr2)).max(0.0).sqrt())
}
