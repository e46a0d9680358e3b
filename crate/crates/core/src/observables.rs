//! Observables with explicit spectral data.
//!
//! An [`ObservableSpec`] carries the matrix together with its (clustered)
//! eigenvalues and the matching projectors, which is exactly what the
//! inference recipe consumes. Degenerate eigenvalues are merged into one
//! projector so conditioning never splits an outcome that measurement
//! cannot distinguish.

use crate::linalg::{Complex64, ComplexMatrix};
use crate::tol;
use crate::{CvurError, Result};

/// Pauli matrix σ_i for `i ∈ {0: x, 1: y, 2: z}`.
pub fn pauli(i: usize) -> ComplexMatrix {
    let c = Complex64::new;
    let entries = match i {
        0 => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
        1 => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
        2 => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        _ => panic!("pauli index {i} out of range"),
    };
    ComplexMatrix::from_slice(2, 2, &entries).expect("2x2 shape")
}

/// `n · σ` for a 3-vector `n` (no unit-length requirement here).
pub fn pauli_combination(n: [f64; 3]) -> ComplexMatrix {
    let c = Complex64::new;
    let entries = [
        c(n[2], 0.0),
        c(n[0], -n[1]),
        c(n[0], n[1]),
        c(-n[2], 0.0),
    ];
    ComplexMatrix::from_slice(2, 2, &entries).expect("2x2 shape")
}

/// An observable with eigenvalues and spectral projectors.
#[derive(Debug, Clone)]
pub struct ObservableSpec {
    pub matrix: ComplexMatrix,
    /// Distinct (clustered) eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Projector onto each eigenvalue's eigenspace, aligned with `eigenvalues`.
    pub projectors: Vec<ComplexMatrix>,
}

impl ObservableSpec {
    /// Build the spectral data of a Hermitian matrix.
    ///
    /// Eigenvalues closer than [`tol::TAU_CLUSTER`] × (spectral diameter) are
    /// merged into one outcome whose value is the cluster mean. The resulting
    /// projectors are checked for completeness (Σ P = I within 1e-10) and
    /// orthogonality (P_i P_j = δ_ij P_i within 1e-9).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_hermitian(tol::TAU_HERM) {
            return Err(CvurError::NonHermitian(
                "observable must be Hermitian".into(),
            ));
        }
        let n = matrix.rows();
        let (values, vectors) = matrix.hermitian_eig()?;
        let diameter = values[n - 1] - values[0];
        let width = tol::TAU_CLUSTER * diameter.max(f64::MIN_POSITIVE);

        let mut eigenvalues = Vec::new();
        let mut projectors = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && values[end] - values[end - 1] <= width {
                end += 1;
            }
            let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
            let mut proj = ComplexMatrix::zeros(n, n);
            for col in start..end {
                for i in 0..n {
                    for j in 0..n {
                        let v = proj.get(i, j) + vectors.get(i, col) * vectors.get(j, col).conj();
                        proj.set(i, j, v);
                    }
                }
            }
            eigenvalues.push(mean);
            projectors.push(proj);
            start = end;
        }

        // Completeness and pairwise orthogonality cross-checks.
        let mut sum = ComplexMatrix::zeros(n, n);
        for p in &projectors {
            sum = sum.add(p)?;
        }
        if sum.distance(&ComplexMatrix::identity(n))? > 1e-10 {
            return Err(CvurError::InternalInconsistency(
                "spectral projectors do not sum to identity".into(),
            ));
        }
        for (i, p) in projectors.iter().enumerate() {
            for (j, q) in projectors.iter().enumerate() {
                let prod = p.mul(q)?;
                let want = if i == j {
                    p.clone()
                } else {
                    ComplexMatrix::zeros(n, n)
                };
                if prod.distance(&want)? > 1e-9 {
                    return Err(CvurError::InternalInconsistency(format!(
                        "projector product P_{i} P_{j} deviates from orthogonality"
                    )));
                }
            }
        }

        Ok(ObservableSpec {
            matrix,
            eigenvalues,
            projectors,
        })
    }

    /// Hilbert-space dimension the observable acts on.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Spectral norm: largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }
}

/// Pauli observable `n · σ` along a unit vector `n`.
pub fn pauli_from_vec(n: [f64; 3]) -> Result<ObservableSpec> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(CvurError::InvalidParameter(format!(
            "direction vector has norm {norm:.12}, expected 1"
        )));
    }
    ObservableSpec::new(pauli_combination(n))
}

/// The 4×4 spin-3/2 x observable with spectrum (−3, −1, 1, 3).
pub fn spin32_x() -> ObservableSpec {
    let r3 = 3.0f64.sqrt();
    let entries = [
        0.0, r3, 0.0, 0.0, //
        r3, 0.0, 2.0, 0.0, //
        0.0, 2.0, 0.0, r3, //
        0.0, 0.0, r3, 0.0,
    ];
    let m = ComplexMatrix::from_real(4, &entries).expect("4x4 shape");
    ObservableSpec::new(m).expect("fixed Hermitian matrix")
}

/// The 4×4 spin-3/2 y observable with spectrum (−3, −1, 1, 3).
pub fn spin32_y() -> ObservableSpec {
    let r3 = 3.0f64.sqrt();
    let c = Complex64::new;
    let entries = [
        c(0., 0.), c(0., -r3), c(0., 0.), c(0., 0.), //
        c(0., r3), c(0., 0.), c(0., -2.), c(0., 0.), //
        c(0., 0.), c(0., 2.), c(0., 0.), c(0., -r3), //
        c(0., 0.), c(0., 0.), c(0., r3), c(0., 0.),
    ];
    let m = ComplexMatrix::from_slice(4, 4, &entries).expect("4x4 shape");
    ObservableSpec::new(m).expect("fixed Hermitian matrix")
}

/// True when `m` is Hermitian and squares to the identity within 1e-9.
pub fn is_hermitian_unitary(m: &ComplexMatrix) -> bool {
    if !m.is_square() || !m.is_hermitian(tol::TAU_HERM) {
        return false;
    }
    let sq = m.mul(m).expect("square matrix");
    sq.distance(&ComplexMatrix::identity(m.rows())).unwrap_or(f64::INFINITY) <= 1e-9
}

/// Parse a direction token — `sx`, `sy`, `sz`, or `n=x,y,z` (normalized) —
/// into a unit Bloch vector. Spin-3/2 tokens are rejected here because they
/// do not name a qubit direction.
pub fn parse_direction_token(token: &str) -> Result<[f64; 3]> {
    match token {
        "sx" => Ok([1.0, 0.0, 0.0]),
        "sy" => Ok([0.0, 1.0, 0.0]),
        "sz" => Ok([0.0, 0.0, 1.0]),
        "spin32x" | "spin32y" => Err(CvurError::InvalidParameter(format!(
            "observable token '{token}' is four-dimensional; this context needs a \
             single-qubit direction (sx, sy, sz, or n=x,y,z)"
        ))),
        _ => {
            if let Some(rest) = token.strip_prefix("n=") {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(CvurError::InvalidParameter(format!(
                        "observable token '{token}': expected three comma-separated components"
                    )));
                }
                let mut v = [0.0; 3];
                for (slot, part) in v.iter_mut().zip(&parts) {
                    *slot = part.trim().parse::<f64>().map_err(|_| {
                        CvurError::InvalidParameter(format!(
                            "observable token '{token}': '{part}' is not a number"
                        ))
                    })?;
                }
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if norm < 1e-12 {
                    return Err(CvurError::InvalidParameter(
                        "observable direction must be nonzero".into(),
                    ));
                }
                Ok([v[0] / norm, v[1] / norm, v[2] / norm])
            } else {
                Err(CvurError::InvalidParameter(format!(
                    "unknown observable token '{token}'"
                )))
            }
        }
    }
}

/// Parse an observable token: `sx`, `sy`, `sz`, `spin32x`, `spin32y`, or
/// `n=x,y,z` (the component triple is normalized).
pub fn parse_token(token: &str) -> Result<ObservableSpec> {
    match token {
        "spin32x" => Ok(spin32_x()),
        "spin32y" => Ok(spin32_y()),
        _ => pauli_from_vec(parse_direction_token(token)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_projectors_match_analytic_form() {
        let mut count = 0;
        for &n in &[
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.6, 0.0, 0.8],
            [
                1.0 / 3.0f64.sqrt(),
                1.0 / 3.0f64.sqrt(),
                1.0 / 3.0f64.sqrt(),
            ],
        ] {
            let obs = pauli_from_vec(n).unwrap();
            assert_eq!(obs.eigenvalues.len(), 2);
            assert!((obs.eigenvalues[0] + 1.0).abs() < 1e-12);
            assert!((obs.eigenvalues[1] - 1.0).abs() < 1e-12);
            // P_± = (I ± n·σ)/2
            let id = ComplexMatrix::identity(2);
            let ns = pauli_combination(n);
            let minus = id.sub(&ns).unwrap().scale(Complex64::new(0.5, 0.0));
            let plus = id.add(&ns).unwrap().scale(Complex64::new(0.5, 0.0));
            assert!(obs.projectors[0].distance(&minus).unwrap() < 1e-10);
            assert!(obs.projectors[1].distance(&plus).unwrap() < 1e-10);
            count += 1;
        }
        assert_eq!(count, 5);
    }

    #[test]
    fn pauli_from_vec_requires_unit_length() {
        assert!(pauli_from_vec([1.0, 1.0, 0.0]).is_err());
        assert!(pauli_from_vec([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn spin32_matrices_match_printed_entries() {
        let r3 = 3.0f64.sqrt();
        let x = spin32_x();
        // nonzero entries of S_x: (0,1) = (1,0) = (2,3) = (3,2) = √3, (1,2) = (2,1) = 2
        assert!((x.matrix.get(0, 1).re - r3).abs() < 1e-15);
        assert!((x.matrix.get(1, 0).re - r3).abs() < 1e-15);
        assert!((x.matrix.get(1, 2).re - 2.0).abs() < 1e-15);
        assert!((x.matrix.get(2, 1).re - 2.0).abs() < 1e-15);
        assert!((x.matrix.get(2, 3).re - r3).abs() < 1e-15);
        assert!(x.matrix.get(0, 2).norm() < 1e-15);
        assert!(x.matrix.get(0, 0).norm() < 1e-15);

        let y = spin32_y();
        // nonzero entries of S_y: (0,1) = −i√3, (1,0) = i√3, (1,2) = −2i,
        // (2,1) = 2i, (2,3) = −i√3, (3,2) = i√3
        assert!((y.matrix.get(0, 1) - Complex64::new(0.0, -r3)).norm() < 1e-15);
        assert!((y.matrix.get(1, 0) - Complex64::new(0.0, r3)).norm() < 1e-15);
        assert!((y.matrix.get(1, 2) - Complex64::new(0.0, -2.0)).norm() < 1e-15);
        assert!((y.matrix.get(2, 1) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!((y.matrix.get(2, 3) - Complex64::new(0.0, -r3)).norm() < 1e-15);
        assert!((y.matrix.get(3, 2) - Complex64::new(0.0, r3)).norm() < 1e-15);

        for obs in [&x, &y] {
            let want = [-3.0, -1.0, 1.0, 3.0];
            assert_eq!(obs.eigenvalues.len(), 4);
            for (got, want) in obs.eigenvalues.iter().zip(&want) {
                assert!((got - want).abs() < 1e-12, "{:?}", obs.eigenvalues);
            }
        }
    }

    #[test]
    fn degenerate_spectrum_clusters_into_one_projector() {
        // diag(1, 1, 5): the twofold eigenvalue 1 must yield one rank-2 projector.
        let m = ComplexMatrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 5.0])
            .unwrap();
        let obs = ObservableSpec::new(m).unwrap();
        assert_eq!(obs.eigenvalues.len(), 2);
        assert!((obs.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((obs.eigenvalues[1] - 5.0).abs() < 1e-12);
        let rank: f64 = obs.projectors[0].trace().unwrap().re;
        assert!((rank - 2.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian() {
        let c = Complex64::new;
        let m =
            ComplexMatrix::from_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(
            ObservableSpec::new(m),
            Err(CvurError::NonHermitian(_))
        ));
    }

    #[test]
    fn hermitian_unitary_detection() {
        assert!(is_hermitian_unitary(&pauli(0)));
        assert!(is_hermitian_unitary(&pauli_combination([0.6, 0.0, 0.8])));
        assert!(is_hermitian_unitary(&ComplexMatrix::identity(2)));
        // Hermitian but not unitary
        assert!(!is_hermitian_unitary(
            &pauli(2).scale(Complex64::new(0.5, 0.0))
        ));
        // unitary but not Hermitian: phase gate diag(1, i)
        let c = Complex64::new;
        let phase =
            ComplexMatrix::from_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)]).unwrap();
        assert!(!is_hermitian_unitary(&phase));
    }

    #[test]
    fn token_parser_accepts_named_and_vector_forms() {
        struct Case {
            token: &'static str,
            ok: bool,
        }
        let cases = [
            Case { token: "sx", ok: true },
            Case { token: "sy", ok: true },
            Case { token: "sz", ok: true },
            Case { token: "spin32x", ok: true },
            Case { token: "spin32y", ok: true },
            Case { token: "n=0.3,0.4,0.8660254", ok: true },
            Case { token: "n=3,4,0", ok: true }, // normalized
            Case { token: "n=0,0,0", ok: false },
            Case { token: "n=1,2", ok: false },
            Case { token: "n=a,b,c", ok: false },
            Case { token: "sw", ok: false },
        ];
        for case in cases {
            assert_eq!(parse_token(case.token).is_ok(), case.ok, "{}", case.token);
        }
        // normalization: n=3,4,0 is the 0.6/0.8 direction
        let obs = parse_token("n=3,4,0").unwrap();
        let want = pauli_combination([0.6, 0.8, 0.0]);
        assert!(obs.matrix.distance(&want).unwrap() < 1e-12);
    }
}
