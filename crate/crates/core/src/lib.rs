//! Conditional-variance (inferred) uncertainty relations for bipartite quantum states.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] — dense complex matrices with a deterministic cyclic-Jacobi
//!   Hermitian eigensolver (dimensions ≤ 16, no external linear algebra).
//! * [`states`] — bipartite density matrices, Bloch decomposition, named
//!   families (Schmidt, Werner, isotropic) and seeded random states.
//! * [`observables`] — observables with eigenvalues and spectral projectors.
//! * [`inference`] — the Reid recipe for inferred (conditional) variances and
//!   its two-qubit closed form.
//! * [`measures`] — correlation and entanglement measures (connected
//!   correlators, concurrence, G function, skew information, LQU, entropies).
//! * [`bounds`] — evaluators for the inferred-variance uncertainty bounds,
//!   local-uncertainty-relation violations and the visibility bound.
//! * [`sampling`] — the seeded PRNG (ChaCha8 + Box–Muller) behind every
//!   random state, fixed so experiments are reproducible bit for bit.

pub mod bounds;
pub mod inference;
pub mod linalg;
pub mod measures;
pub mod observables;
pub mod sampling;
pub mod states;
pub mod tol;

mod error;

pub use error::{CvurError, Result};

/// Which subsystem of a bipartite state an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}
