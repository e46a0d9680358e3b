//! Bipartite density matrices: validation, Bloch form, named families and
//! seeded random states.
//!
//! Every constructor funnels through [`DensityMatrix::new`], so a value of
//! this type is always a physical state: Hermitian, unit trace and positive
//! semidefinite within the tolerances in [`crate::tol`].

use serde::{Deserialize, Serialize};

use crate::linalg::{Complex64, ComplexMatrix, MAX_EIG_DIM};
use crate::observables;
use crate::sampling::SeededRng;
use crate::tol;
use crate::{CvurError, Result};

/// Trace deviation accepted by validation.
const TAU_TRACE: f64 = 1e-9;

/// A bipartite density matrix on `dim_a ⊗ dim_b`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub matrix: ComplexMatrix,
    pub dim_a: usize,
    pub dim_b: usize,
}

/// Bloch form of a two-qubit state: local vectors `r`, `s` and the 3×3
/// correlation matrix `t` with `t[i][j] = ⟨σ_i ⊗ σ_j⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochDecomposition {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// JSON exchange format: dimensions plus row-major real and imaginary parts.
#[derive(Serialize, Deserialize)]
struct StateJson {
    dim_a: usize,
    dim_b: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a bipartite state.
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        let dim = dim_a * dim_b;
        if dim_a == 0 || dim_b == 0 || dim > MAX_EIG_DIM {
            return Err(CvurError::InvalidDimensions(format!(
                "state dimensions {}⊗{} outside the supported range (product ≤ {})",
                dim_a, dim_b, MAX_EIG_DIM
            )));
        }
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(CvurError::InvalidDimensions(format!(
                "{}x{} matrix cannot be a state on {}⊗{}",
                matrix.rows(),
                matrix.cols(),
                dim_a,
                dim_b
            )));
        }
        if !matrix.is_hermitian(tol::TAU_HERM) {
            return Err(CvurError::NonPhysicalState(
                "density matrix is not Hermitian".into(),
            ));
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > TAU_TRACE || tr.im.abs() > TAU_TRACE {
            return Err(CvurError::NonPhysicalState(format!(
                "trace is {:.12} + {:.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let (values, _) = matrix.hermitian_eig()?;
        if let Some(&min) = values.first() {
            if min < -tol::TAU_PSD {
                return Err(CvurError::NonPhysicalState(format!(
                    "negative eigenvalue {:.3e}",
                    min
                )));
            }
        }
        Ok(DensityMatrix {
            matrix,
            dim_a,
            dim_b,
        })
    }

    /// Total Hilbert-space dimension `dim_a · dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Reduced state of subsystem A.
    pub fn reduced_a(&self) -> ComplexMatrix {
        self.matrix
            .partial_trace_b(self.dim_a, self.dim_b)
            .expect("dimensions checked at construction")
    }

    /// Reduced state of subsystem B.
    pub fn reduced_b(&self) -> ComplexMatrix {
        self.matrix
            .partial_trace_a(self.dim_a, self.dim_b)
            .expect("dimensions checked at construction")
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_product(&self.matrix)
            .expect("square matrix")
            .re
    }

    /// Purity within `1e-9` of one.
    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - tol::TAU_PSD
    }

    /// `Tr(op · ρ)` for an operator on the full space.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<Complex64> {
        op.trace_product(&self.matrix)
    }

    /// Real expectation value of a Hermitian operator on the full space.
    pub fn expectation_real(&self, op: &ComplexMatrix) -> Result<f64> {
        Ok(self.expectation(op)?.re)
    }

    /// Bloch decomposition; the state must be two-qubit.
    pub fn bloch(&self) -> Result<BlochDecomposition> {
        if self.dim_a != 2 || self.dim_b != 2 {
            return Err(CvurError::InvalidDimensions(format!(
                "Bloch decomposition needs 2⊗2, got {}⊗{}",
                self.dim_a, self.dim_b
            )));
        }
        let id = ComplexMatrix::identity(2);
        let mut r = [0.0; 3];
        let mut s = [0.0; 3];
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            let si = observables::pauli(i);
            r[i] = self.expectation_real(&si.kron(&id))?;
            s[i] = self.expectation_real(&id.kron(&si))?;
            for j in 0..3 {
                let sj = observables::pauli(j);
                t[i][j] = self.expectation_real(&si.kron(&sj))?;
            }
        }
        Ok(BlochDecomposition { r, s, t })
    }

    /// Serialize to the JSON exchange format.
    pub fn to_json(&self) -> String {
        let dim = self.dim();
        let mut re = vec![vec![0.0; dim]; dim];
        let mut im = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let z = self.matrix.get(i, j);
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        serde_json::to_string(&StateJson {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            re,
            im,
        })
        .expect("state JSON never fails to serialize")
    }

    /// Parse and validate a state from the JSON exchange format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(text)
            .map_err(|e| CvurError::InvalidParameter(format!("state JSON: {e}")))?;
        let dim = raw.dim_a * raw.dim_b;
        let shape_ok = raw.re.len() == dim
            && raw.im.len() == dim
            && raw.re.iter().all(|row| row.len() == dim)
            && raw.im.iter().all(|row| row.len() == dim);
        if !shape_ok {
            return Err(CvurError::InvalidDimensions(format!(
                "state JSON claims {}⊗{} but matrix rows do not form a {dim}x{dim} grid",
                raw.dim_a, raw.dim_b
            )));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, Complex64::new(raw.re[i][j], raw.im[i][j]));
            }
        }
        DensityMatrix::new(m, raw.dim_a, raw.dim_b)
    }
}

/// Compose a two-qubit state from Bloch data:
/// `ρ = ¼ (I⊗I + Σ r_i σ_i⊗I + Σ s_j I⊗σ_j + Σ t_ij σ_i⊗σ_j)`.
///
/// Validation applies afterwards, so Bloch data outside the physical set is
/// rejected rather than silently accepted.
pub fn from_bloch(b: &BlochDecomposition) -> Result<DensityMatrix> {
    let id = ComplexMatrix::identity(2);
    let mut m = id.kron(&id);
    for i in 0..3 {
        let si = observables::pauli(i);
        m = m.add(&si.kron(&id).scale(Complex64::new(b.r[i], 0.0)))?;
        m = m.add(&id.kron(&si).scale(Complex64::new(b.s[i], 0.0)))?;
        for j in 0..3 {
            let sj = observables::pauli(j);
            m = m.add(&si.kron(&sj).scale(Complex64::new(b.t[i][j], 0.0)))?;
        }
    }
    DensityMatrix::new(m.scale(Complex64::new(0.25, 0.0)), 2, 2)
}

/// Projector onto a (normalized) state vector.
fn projector(v: &[Complex64]) -> ComplexMatrix {
    let n = v.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, v[i] * v[j].conj());
        }
    }
    m
}

/// Schmidt-form pure state `cos θ |00⟩ + sin θ |11⟩` for `θ ∈ [0, π/2]`.
pub fn schmidt_pure(theta: f64) -> Result<DensityMatrix> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(CvurError::InvalidParameter(format!(
            "Schmidt angle {theta} outside [0, π/2]"
        )));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); 4];
    v[0] = Complex64::new(theta.cos(), 0.0);
    v[3] = Complex64::new(theta.sin(), 0.0);
    DensityMatrix::new(projector(&v), 2, 2)
}

/// Werner state `p |ψ_s⟩⟨ψ_s| + (1−p) I/4` with the singlet
/// `|ψ_s⟩ = (|01⟩ − |10⟩)/√2`; physical for `p ∈ [−1/3, 1]`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0..=1.0).contains(&p) {
        return Err(CvurError::InvalidParameter(format!(
            "Werner parameter {p} outside [−1/3, 1]"
        )));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![Complex64::new(0.0, 0.0); 4];
    v[1] = Complex64::new(inv_sqrt2, 0.0);
    v[2] = Complex64::new(-inv_sqrt2, 0.0);
    let singlet = projector(&v);
    let mixed = ComplexMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0));
    let m = singlet.scale(Complex64::new(p, 0.0)).add(&mixed)?;
    DensityMatrix::new(m, 2, 2)
}

/// Isotropic state `p |φ+⟩⟨φ+| + (1−p) I/d²` on `d ⊗ d` with the maximally
/// entangled `|φ+⟩ = Σ_i |ii⟩/√d`; physical for `p ∈ [−1/(d²−1), 1]`.
pub fn isotropic(p: f64, d: usize) -> Result<DensityMatrix> {
    if !(2..=4).contains(&d) {
        return Err(CvurError::InvalidDimensions(format!(
            "isotropic family supports d ∈ 2..=4, got {d}"
        )));
    }
    let lo = -1.0 / ((d * d - 1) as f64);
    if !(lo..=1.0).contains(&p) {
        return Err(CvurError::InvalidParameter(format!(
            "isotropic parameter {p} outside [{lo:.6}, 1] for d = {d}"
        )));
    }
    let dim = d * d;
    let amp = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..d {
        v[i * d + i] = Complex64::new(amp, 0.0);
    }
    let phi = projector(&v);
    let mixed = ComplexMatrix::identity(dim).scale(Complex64::new((1.0 - p) / dim as f64, 0.0));
    let m = phi.scale(Complex64::new(p, 0.0)).add(&mixed)?;
    DensityMatrix::new(m, d, d)
}

/// Haar-random pure state on `dim_a ⊗ dim_b`, fully determined by `seed`.
pub fn random_pure(dim_a: usize, dim_b: usize, seed: u64) -> Result<DensityMatrix> {
    let dim = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 || dim > MAX_EIG_DIM {
        return Err(CvurError::InvalidDimensions(format!(
            "random pure state on {dim_a}⊗{dim_b} outside the supported range"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let v = rng.haar_vector(dim);
    DensityMatrix::new(projector(&v), dim_a, dim_b)
}

/// Random mixed state `G G† / Tr(G G†)` with `G` a `dim × rank` matrix of
/// independent standard complex Gaussians (Ginibre construction).
pub fn random_mixed(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let dim = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 || dim > MAX_EIG_DIM {
        return Err(CvurError::InvalidDimensions(format!(
            "random mixed state on {dim_a}⊗{dim_b} outside the supported range"
        )));
    }
    if rank == 0 || rank > dim {
        return Err(CvurError::InvalidParameter(format!(
            "rank {rank} outside 1..={dim}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut g = ComplexMatrix::zeros(dim, rank);
    for i in 0..dim {
        for j in 0..rank {
            g.set(i, j, rng.complex_gaussian());
        }
    }
    let m = g.mul(&g.dagger())?;
    let tr = m.trace()?.re;
    DensityMatrix::new(m.scale(Complex64::new(1.0 / tr, 0.0)), dim_a, dim_b)
}

/// Random two-qubit separable state: a convex mixture of at most `terms`
/// random pure product states.
pub fn random_separable(terms: usize, seed: u64) -> Result<DensityMatrix> {
    if terms == 0 || terms > 4 {
        return Err(CvurError::InvalidParameter(format!(
            "separable mixtures use 1..=4 product terms, got {terms}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let weights = rng.simplex_weights(terms);
    let mut m = ComplexMatrix::zeros(4, 4);
    for &w in &weights {
        let va = rng.haar_vector(2);
        let vb = rng.haar_vector(2);
        let prod = projector(&va).kron(&projector(&vb));
        m = m.add(&prod.scale(Complex64::new(w, 0.0)))?;
    }
    DensityMatrix::new(m, 2, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schmidt_bloch_matches_hand_values() {
        // r = s = (0, 0, cos 2θ) and T = diag(sin 2θ, −sin 2θ, 1).
        for &theta in &[0.0, 0.3, std::f64::consts::FRAC_PI_4, 1.2] {
            let rho = schmidt_pure(theta).unwrap();
            let b = rho.bloch().unwrap();
            let c2 = (2.0 * theta).cos();
            let s2 = (2.0 * theta).sin();
            assert!((b.r[2] - c2).abs() < 1e-12);
            assert!((b.s[2] - c2).abs() < 1e-12);
            assert!(b.r[0].abs() < 1e-12 && b.r[1].abs() < 1e-12);
            assert!((b.t[0][0] - s2).abs() < 1e-12);
            assert!((b.t[1][1] + s2).abs() < 1e-12);
            assert!((b.t[2][2] - 1.0).abs() < 1e-12);
            assert!(b.t[0][1].abs() < 1e-12 && b.t[2][0].abs() < 1e-12);
            assert!(rho.is_pure());
        }
        assert!(schmidt_pure(-0.1).is_err());
        assert!(schmidt_pure(1.8).is_err());
    }

    #[test]
    fn werner_bloch_is_minus_p_identity() {
        for &p in &[-1.0 / 3.0, 0.0, 0.3, 0.7, 1.0] {
            let rho = werner(p).unwrap();
            let b = rho.bloch().unwrap();
            for i in 0..3 {
                assert!(b.r[i].abs() < 1e-12 && b.s[i].abs() < 1e-12);
                for j in 0..3 {
                    let want = if i == j { -p } else { 0.0 };
                    assert!(
                        (b.t[i][j] - want).abs() < 1e-12,
                        "p={p}, t[{i}][{j}]={}",
                        b.t[i][j]
                    );
                }
            }
        }
        assert!(werner(-0.4).is_err());
        assert!(werner(1.01).is_err());
    }

    #[test]
    fn isotropic_respects_parameter_range() {
        for d in 2..=4 {
            assert!(isotropic(1.0, d).is_ok());
            assert!(isotropic(-1.0 / ((d * d - 1) as f64), d).is_ok());
            assert!(isotropic(-1.0 / ((d * d - 1) as f64) - 1e-6, d).is_err());
        }
        assert!(isotropic(0.5, 5).is_err());
        // p = 1 is the maximally entangled projector
        let rho = isotropic(1.0, 4).unwrap();
        assert!(rho.is_pure());
        assert_eq!(rho.dim(), 16);
    }

    #[test]
    fn bloch_round_trip() {
        for seed in 0..20u64 {
            let rho = random_mixed(2, 2, 4, seed).unwrap();
            let b = rho.bloch().unwrap();
            let back = from_bloch(&b).unwrap();
            assert!(rho.matrix.distance(&back.matrix).unwrap() < 1e-12);
        }
    }

    #[test]
    fn from_bloch_rejects_unphysical_data() {
        // A correlation matrix of pure ±1 entries with zero local vectors is
        // far outside the physical set.
        let b = BlochDecomposition {
            r: [0.0; 3],
            s: [0.0; 3],
            t: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        };
        assert!(matches!(
            from_bloch(&b),
            Err(CvurError::NonPhysicalState(_))
        ));
    }

    #[test]
    fn random_states_are_valid_and_seed_deterministic() {
        for &(da, db) in &[(2usize, 2usize), (2, 3), (4, 4)] {
            let a = random_pure(da, db, 7).unwrap();
            let b = random_pure(da, db, 7).unwrap();
            assert_eq!(a.matrix.entries(), b.matrix.entries());
            assert!(a.is_pure());

            let c = random_mixed(da, db, da * db, 7).unwrap();
            let d = random_mixed(da, db, da * db, 7).unwrap();
            assert_eq!(c.matrix.entries(), d.matrix.entries());
            assert!((c.matrix.trace().unwrap().re - 1.0).abs() < 1e-12);
            let e = random_mixed(da, db, da * db, 8).unwrap();
            assert!(c.matrix.distance(&e.matrix).unwrap() > 1e-6);
        }
        // rank-1 Ginibre states are pure
        assert!(random_mixed(2, 2, 1, 3).unwrap().is_pure());
        assert!(random_mixed(2, 2, 0, 3).is_err());
        assert!(random_mixed(2, 2, 5, 3).is_err());
    }

    #[test]
    fn separable_states_are_valid() {
        for seed in 0..10u64 {
            let rho = random_separable(4, seed).unwrap();
            assert!((rho.matrix.trace().unwrap().re - 1.0).abs() < 1e-12);
            assert_eq!(rho.dim_a, 2);
        }
        assert!(random_separable(0, 1).is_err());
        assert!(random_separable(5, 1).is_err());
    }

    #[test]
    fn validation_rejects_broken_matrices() {
        // wrong trace
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            DensityMatrix::new(m, 2, 2),
            Err(CvurError::NonPhysicalState(_))
        ));
        // negative eigenvalue, trace still 1
        let mut neg = ComplexMatrix::zeros(4, 4);
        neg.set(0, 0, Complex64::new(1.5, 0.0));
        neg.set(1, 1, Complex64::new(-0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(neg, 2, 2),
            Err(CvurError::NonPhysicalState(_))
        ));
        // dimension mismatch
        let id3 = ComplexMatrix::identity(3).scale(Complex64::new(1.0 / 3.0, 0.0));
        assert!(matches!(
            DensityMatrix::new(id3, 2, 2),
            Err(CvurError::InvalidDimensions(_))
        ));
    }

    #[test]
    fn json_round_trip_preserves_state() {
        let rho = random_mixed(2, 3, 4, 11).unwrap();
        let text = rho.to_json();
        let back = DensityMatrix::from_json(&text).unwrap();
        assert_eq!(back.dim_a, 2);
        assert_eq!(back.dim_b, 3);
        assert!(rho.matrix.distance(&back.matrix).unwrap() < 1e-15);
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(DensityMatrix::from_json("not json").is_err());
        // shape lie: claims 2⊗2 but carries a 2x2 grid
        let bad = r#"{"dim_a":2,"dim_b":2,"re":[[1.0,0.0],[0.0,0.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#;
        assert!(matches!(
            DensityMatrix::from_json(bad),
            Err(CvurError::InvalidDimensions(_))
        ));
    }

    #[test]
    fn reduced_states_of_schmidt_family() {
        let rho = schmidt_pure(0.5).unwrap();
        let ra = rho.reduced_a();
        let c2 = 0.5f64.cos().powi(2);
        assert!((ra.get(0, 0).re - c2).abs() < 1e-12);
        assert!((ra.get(1, 1).re - (1.0 - c2)).abs() < 1e-12);
        assert!(ra.get(0, 1).norm() < 1e-12);
    }
}
