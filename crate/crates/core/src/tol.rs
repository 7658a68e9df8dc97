//! Numerical tolerances shared by the whole crate.
//!
//! Every check in the library reads its threshold from here.

/// Hermiticity required of eigensolver input (max entrywise |m - m†|).
pub const HERMITIAN: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweeps stop,
/// relative to `max(1, ‖m‖_F)`.
pub const JACOBI_OFFDIAG: f64 = 1e-13;

/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Unitarity required of generators and evolution operators.
pub const UNITARY: f64 = 1e-10;

/// Eigenvalues above `-NEGATIVE_EIGENVALUE` are rounding noise and are
/// clamped to zero. Anything below is a genuinely non-positive operator.
pub const NEGATIVE_EIGENVALUE: f64 = 1e-8;

/// Acceptance of a density matrix: trace and Hermiticity deviations.
pub const STATE_VALIDATION: f64 = 1e-8;

/// Normalisation required of a pure state vector.
pub const PURE_NORM: f64 = 1e-10;

/// Sum-of-probabilities tolerance for random external fields.
pub const PROBABILITY_SUM: f64 = 1e-12;

/// Residual accepted by the trace-preserving and unital checks.
pub const KRAUS_IDENTITY: f64 = 1e-10;

/// Largest imaginary residue tolerated in a Pauli expectation value.
pub const IMAGINARY_RESIDUE: f64 = 1e-8;

/// Eigenvalues below this contribute nothing to the von Neumann entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

/// Dead band of the entropy-inequality violation flags.
pub const VIOLATION_DEAD_BAND: f64 = 1e-9;
