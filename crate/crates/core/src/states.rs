//! Two-qubit states: pure vectors, validated density matrices, the
//! entropy-asymmetric `ρ^(1)` / `ρ^(2)` family and the Pauli-basis
//! (Bloch vectors + correlation matrix) decomposition.

use libm::sqrt;

use crate::error::{Error, Result};
use crate::matcore::{self, eig_hermitian, kron, pauli, ComplexMatrix, SubsystemId, C64, ONE, ZERO};
use crate::tol;

/// Normalised amplitudes in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amplitudes: [C64; 4],
}

impl PureState {
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        let norm = sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if (norm - 1.0).abs() > tol::PURE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState { amplitudes })
    }

    /// Computational basis vector `|index⟩`, `index < 4`.
    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [ZERO; 4];
        amplitudes[index] = ONE;
        PureState { amplitudes }
    }

    /// `|ψ_A⟩ ⊗ |ψ_B⟩` for two normalised qubit vectors.
    pub fn product(a: [C64; 2], b: [C64; 2]) -> Result<Self> {
        Self::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    /// `(|00⟩ + |11⟩)/√2`
    pub fn bell() -> Self {
        let s = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState { amplitudes: [s, ZERO, ZERO, s] }
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amplitudes
    }

    /// `U|ψ⟩` for a 4×4 matrix `U`; the result is renormalisation-free, so `U`
    /// must be unitary.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: u.dim() });
        }
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| u[(i, k)] * self.amplitudes[k]).sum();
        }
        Self::new(out)
    }
}

/// A density operator. Construction through [`DensityMatrix::new`] validates;
/// [`DensityMatrix::new_unchecked`] defers validation to an explicit
/// [`DensityMatrix::validate`] call (used between trajectory checkpoints).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = DensityMatrix { matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub fn new_unchecked(matrix: ComplexMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix { matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }

    /// Checks Hermiticity, unit trace and positivity with the tolerances in [`tol`].
    pub fn validate(&self) -> Result<()> {
        let residual = self.matrix.hermiticity_residual();
        if residual > tol::STATE_VALIDATION {
            return Err(Error::NotHermitian { residual });
        }
        let trace = self.matrix.trace();
        if (trace - ONE).norm() > tol::STATE_VALIDATION {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let spec = eig_hermitian(&self.matrix.hermitian_part())?;
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol::NEGATIVE_EIGENVALUE {
            return Err(Error::NegativeEigenvalue { value: min });
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Reduced state on the subsystem that is *kept* when `traced_out` is summed over.
    pub fn partial_trace(&self, traced_out: SubsystemId) -> Result<DensityMatrix> {
        Ok(DensityMatrix { matrix: matcore::partial_trace(&self.matrix, traced_out)? })
    }

    /// Marginal of `side`.
    pub fn marginal(&self, side: SubsystemId) -> Result<DensityMatrix> {
        self.partial_trace(side.other())
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `U ρ U†`
    pub fn conjugated(&self, u: &ComplexMatrix) -> DensityMatrix {
        DensityMatrix { matrix: u.conjugate_by(&self.matrix) }
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> DensityMatrix {
        DensityMatrix { matrix: &self.matrix.scale_real(w) + &other.matrix.scale_real(1.0 - w) }
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { matrix: kron(&a.matrix, &b.matrix) }
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        pure_to_density(psi)
    }
}

/// `|ψ⟩⟨ψ|`
pub fn pure_to_density(psi: &PureState) -> DensityMatrix {
    DensityMatrix::new_unchecked(ComplexMatrix::outer(&psi.amplitudes, &psi.amplitudes))
}

/// Entries of `q|Ψ₁⟩⟨Ψ₁| + (1-q)|Ψ₂⟩⟨Ψ₂|` with `|Ψ₁⟩ = a|00⟩ + √(1-a²)|11⟩`
/// and `|Ψ₂⟩ = a|10⟩ + √(1-a²)|01⟩`, `a = √a_sq`. No range checks, so the
/// boundary points can be inspected.
pub fn rho1_matrix(q: f64, a_sq: f64) -> ComplexMatrix {
    let ab = sqrt(a_sq * (1.0 - a_sq));
    let r = |x: f64| C64::new(x, 0.0);
    ComplexMatrix::from_rows([
        [r(q * a_sq), ZERO, ZERO, r(q * ab)],
        [ZERO, r((1.0 - q) * (1.0 - a_sq)), r((1.0 - q) * ab), ZERO],
        [ZERO, r((1.0 - q) * ab), r((1.0 - q) * a_sq), ZERO],
        [r(q * ab), ZERO, ZERO, r(q * (1.0 - a_sq))],
    ])
}

fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    // written so that NaN fails too
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value })
    }
}

/// The X-shaped state `ρ^(1)(q, a²)`; both parameters in the open unit interval.
pub fn make_rho1(q: f64, a_sq: f64) -> Result<DensityMatrix> {
    check_open_unit("q", q)?;
    check_open_unit("a_sq", a_sq)?;
    DensityMatrix::new(rho1_matrix(q, a_sq))
}

/// `ρ^(2)`: `ρ^(1)` with the two qubits exchanged.
pub fn make_rho2(q: f64, a_sq: f64) -> Result<DensityMatrix> {
    Ok(swap_sides(&make_rho1(q, a_sq)?))
}

const SWAP_PERMUTATION: [usize; 4] = [0, 2, 1, 3];

/// Conjugation by SWAP: relabels `|01⟩ ↔ |10⟩`.
pub fn swap_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(m.dim(), 4, "swap needs a two-qubit operator");
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(SWAP_PERMUTATION[i], SWAP_PERMUTATION[j])] = m[(i, j)];
        }
    }
    out
}

pub fn swap_sides(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new_unchecked(swap_matrix(&rho.matrix))
}

/// `ρ = ¼(I⊗I + Σ aᵢ σᵢ⊗I + Σ bⱼ I⊗σⱼ + Σ Tᵢⱼ σᵢ⊗σⱼ)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochDecomposition {
    pub fn reassemble(&self) -> ComplexMatrix {
        let id = pauli::identity();
        let sig = pauli::all();
        let mut m = ComplexMatrix::identity(4);
        for i in 0..3 {
            m = &m + &kron(&sig[i], &id).scale_real(self.a[i]);
            m = &m + &kron(&id, &sig[i]).scale_real(self.b[i]);
            for j in 0..3 {
                m = &m + &kron(&sig[i], &sig[j]).scale_real(self.t[i][j]);
            }
        }
        m.scale_real(0.25)
    }
}

fn pauli_expectation(rho: &ComplexMatrix, op: &ComplexMatrix) -> Result<f64> {
    let v = (rho * op).trace();
    if v.im.abs() > tol::IMAGINARY_RESIDUE {
        return Err(Error::ImaginaryCoefficient { value: v.im });
    }
    Ok(v.re)
}

pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let id = pauli::identity();
    let sig = pauli::all();
    let m = rho.matrix();
    let mut out = BlochDecomposition { a: [0.0; 3], b: [0.0; 3], t: [[0.0; 3]; 3] };
    for i in 0..3 {
        out.a[i] = pauli_expectation(m, &kron(&sig[i], &id))?;
        out.b[i] = pauli_expectation(m, &kron(&id, &sig[i]))?;
        for j in 0..3 {
            out.t[i][j] = pauli_expectation(m, &kron(&sig[i], &sig[j]))?;
        }
    }
    Ok(out)
}
