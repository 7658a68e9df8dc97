//! Entropies and entanglement measures. All values are in nats.

use core::f64::consts::LN_2;
use libm::{log, sqrt};

use crate::error::{Error, Result};
use crate::matcore::{eig_hermitian, kron, pauli, psd_sqrt, ComplexMatrix, SubsystemId};
use crate::states::DensityMatrix;
use crate::tol;

/// `s(x) = -x ln x - (1-x) ln(1-x)` with `0 ln 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterOutOfRange { name: "x", value: x });
    }
    Ok(xlnx(x) + xlnx(1.0 - x))
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * log(x)
    }
}

/// `-Σ λ ln λ` over a spectrum; eigenvalues below [`tol::ENTROPY_CUTOFF`] are
/// ignored. An eigenvalue rounded just above 1 would give `-0.0…1`, so the
/// sum is floored at zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues.iter().filter(|&&l| l > tol::ENTROPY_CUTOFF).map(|&l| -l * log(l)).sum();
    s.max(0.0)
}

/// `S(ρ) = -Tr ρ ln ρ`. Fails if the spectrum shows the input is not a state.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let trace = rho.matrix().trace();
    if (trace.re - 1.0).abs() > tol::STATE_VALIDATION || trace.im.abs() > tol::STATE_VALIDATION {
        return Err(Error::BadTrace { trace: trace.re });
    }
    let spec = eig_hermitian(rho.matrix())?;
    let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -tol::NEGATIVE_EIGENVALUE {
        return Err(Error::NegativeEigenvalue { value: min });
    }
    Ok(entropy_of_spectrum(&spec.eigenvalues))
}

/// Total and marginal entropies plus the two classicality inequalities
/// `S(AB) ≥ S(A)` and `S(AB) ≥ S(B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub s_total: f64,
    pub s_a: f64,
    pub s_b: f64,
    /// `S(AB) < S(A)`: the pair is "quantum" with respect to A.
    pub violates_a: bool,
    /// `S(AB) < S(B)`
    pub violates_b: bool,
}

pub fn entropy_report(rho: &DensityMatrix) -> Result<EntropyReport> {
    let s_total = von_neumann_entropy(rho)?;
    let s_a = von_neumann_entropy(&rho.marginal(SubsystemId::A)?)?;
    let s_b = von_neumann_entropy(&rho.marginal(SubsystemId::B)?)?;
    Ok(EntropyReport {
        s_total,
        s_a,
        s_b,
        violates_a: s_total < s_a - tol::VIOLATION_DEAD_BAND,
        violates_b: s_total < s_b - tol::VIOLATION_DEAD_BAND,
    })
}

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let yy = kron(&pauli::y(), &pauli::y());
    &(&yy * &rho.conj()) * &yy
}

/// `√μᵢ`, descending, where `μᵢ` are the eigenvalues of `ρρ̃`.
///
/// `√ρ ρ̃ √ρ = A A†` with `A = √ρ (σ_y⊗σ_y) √ρ*`, so the `√μᵢ` are the
/// singular values of `A`. They are read off as the positive half of the
/// spectrum of the Hermitian dilation `[[0, A], [A†, 0]]`, which keeps them
/// accurate to rounding level instead of the square root of it.
pub fn spin_flip_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = rho.matrix();
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: m.dim() });
    }
    let sqrt_rho = psd_sqrt(m)?;
    let yy = kron(&pauli::y(), &pauli::y());
    let a = &(&sqrt_rho * &yy) * &sqrt_rho.conj();
    let mut dilation = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, j + 4)] = a[(i, j)];
            dilation[(j + 4, i)] = a[(i, j)].conj();
        }
    }
    let ev = eig_hermitian(&dilation)?.eigenvalues;
    Ok(core::array::from_fn(|i| ev[i].max(0.0)))
}

/// Two-qubit concurrence `max(0, √μ₁ - √μ₂ - √μ₃ - √μ₄)`, `μ` the descending
/// eigenvalues of `ρρ̃` (equivalently of the Hermitian `√ρ ρ̃ √ρ`).
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_singular_values(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementValue {
    pub concurrence: f64,
    pub eof_nats: f64,
    /// `eof_nats / ln 2`, in `[0, 1]`.
    pub eof_rescaled: f64,
}

impl EntanglementValue {
    pub fn from_concurrence(c: f64) -> Self {
        let c = c.clamp(0.0, 1.0);
        let x = (1.0 + sqrt((1.0 - c * c).max(0.0))) / 2.0;
        let eof_nats = xlnx(x) + xlnx(1.0 - x);
        EntanglementValue { concurrence: c, eof_nats, eof_rescaled: eof_nats / LN_2 }
    }
}

/// Entanglement of formation through the concurrence.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<EntanglementValue> {
    Ok(EntanglementValue::from_concurrence(concurrence(rho)?))
}

/// Upper bound on the entropy increase caused by a channel acting locally on
/// `attacked` (of dimension `m`): `S(ρ_untouched) - S(ρ) + ln m`.
pub fn entropy_increase_bound(rho_in: &DensityMatrix, attacked: SubsystemId, m: usize) -> Result<f64> {
    let untouched = rho_in.marginal(attacked.other())?;
    Ok(von_neumann_entropy(&untouched)? - von_neumann_entropy(rho_in)? + log(m as f64))
}
