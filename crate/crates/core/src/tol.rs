//! Central numerical tolerances.
//!
//! Every threshold used by the crate lives here so that tests and library
//! code agree on one set of numbers. The values are deliberate choices, not
//! defaults: loosening one of them changes which inputs are accepted.

/// Hermiticity rejection threshold: `‖h − h†‖_F` above this is an error.
pub const TAU_HERM: f64 = 1e-10;

/// Positive-semidefiniteness slack: eigenvalues below `−TAU_PSD` reject a
/// state, anything in `(−TAU_PSD, 0)` is treated as rounding noise.
pub const TAU_PSD: f64 = 1e-9;

/// Eigenvalue clustering width, relative to the spectral diameter, when
/// grouping numerically degenerate eigenvalues into one projector.
pub const TAU_CLUSTER: f64 = 1e-8;

/// Conditioning probability floor: outcome columns with `P'_j` at or below
/// this are skipped by the inference recipe (the outcome never occurs).
pub const TAU_PROB: f64 = 1e-12;

/// Denominator floor for variance/skew denominators in the bounds; smaller
/// denominators count as degenerate conditioning.
pub const TAU_DENOM: f64 = 1e-9;

/// Correlator floor paired with `TAU_DENOM`: a degenerate denominator is
/// only an error (or a trivially-satisfied bound) when the corresponding
/// correlator exceeds this, otherwise the term is an honest 0/0 → 0.
pub const TAU_CC: f64 = 1e-9;

/// Slack allowed when deciding whether an inequality held: `satisfied`
/// means `lhs ≥ rhs − TAU_BOUND`.
pub const TAU_BOUND: f64 = 1e-9;

/// Relative spectral noise floor: eigenvalues smaller than this fraction of
/// the largest one are rounding artifacts of the eigensolver. Square roots
/// amplify such noise (λ ≈ 1e-17 becomes √λ ≈ 3e-9), so `psd_sqrt` and the
/// concurrence zero them out before taking roots.
pub const TAU_EIG_REL: f64 = 1e-13;

/// Relative off-diagonal mass at which the Jacobi sweep stops.
pub const JACOBI_EPS: f64 = 1e-13;

/// Hard cap on Jacobi sweeps; hitting it is an internal inconsistency.
pub const JACOBI_MAX_SWEEPS: usize = 60;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_sane() {
        // The prob floor must sit well below every decision threshold that
        // consumes probabilities, and the Jacobi stop well below the
        // reconstruction tolerances the tests assert.
        assert!(TAU_PROB < TAU_DENOM);
        assert!(TAU_PROB < TAU_PSD);
        assert!(JACOBI_EPS < TAU_HERM);
        assert!(TAU_HERM <= TAU_PSD);
    }
}
