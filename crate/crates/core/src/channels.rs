//! Kraus-form qubit channels and their local action on one side of a pair.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use libm::sqrt;

use crate::error::{Error, Result};
use crate::matcore::{kron, pauli, ComplexMatrix, SubsystemId, C64};
use crate::states::DensityMatrix;
use crate::tol;

/// Outcome of a structural check together with its numerical residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub holds: bool,
    pub residual: f64,
}

/// `σ ↦ Σ Vᵢ σ Vᵢ†`, always trace preserving.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    label: String,
}

fn kraus_sum(ops: &[ComplexMatrix], adjoint_first: bool) -> ComplexMatrix {
    let dim = ops[0].dim();
    ops.iter().fold(ComplexMatrix::zeros(dim), |acc, v| {
        let term = if adjoint_first { &v.adjoint() * v } else { v * &v.adjoint() };
        &acc + &term
    })
}

fn identity_check(ops: &[ComplexMatrix], adjoint_first: bool) -> TestResult {
    if ops.is_empty() {
        return TestResult { holds: false, residual: f64::INFINITY };
    }
    let dim = ops[0].dim();
    let residual = kraus_sum(ops, adjoint_first).max_abs_diff(&ComplexMatrix::identity(dim));
    TestResult { holds: residual < tol::KRAUS_IDENTITY, residual }
}

impl KrausChannel {
    /// Validates equal dimensions and `Σ Vᵢ†Vᵢ = I`.
    pub fn new(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let first = operators.first().ok_or(Error::EmptyChannel)?;
        let dim = first.dim();
        if let Some(bad) = operators.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        let tp = identity_check(&operators, true);
        if !tp.holds {
            return Err(Error::NotTracePreserving { residual: tp.residual });
        }
        Ok(KrausChannel { operators, label: label.into() })
    }

    /// Skips the trace-preservation check. Only for probing the checks themselves.
    pub fn new_unchecked(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Self {
        KrausChannel { operators, label: label.into() }
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel { operators: vec![ComplexMatrix::identity(dim)], label: "identity".into() }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    /// `Σ Vᵢ σ Vᵢ†` on a bare operator of matching dimension.
    pub fn apply_matrix(&self, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sigma.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: sigma.dim() });
        }
        Ok(self.operators.iter().fold(ComplexMatrix::zeros(sigma.dim()), |acc, v| &acc + &v.conjugate_by(sigma)))
    }

    /// Channel that applies `self` first and then `then`; Kraus set `{Wⱼ Vᵢ}`.
    pub fn compose(&self, then: &KrausChannel) -> Result<KrausChannel> {
        if self.dim() != then.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: then.dim() });
        }
        let ops = then.operators.iter().flat_map(|w| self.operators.iter().map(move |v| w * v)).collect();
        KrausChannel::new(ops, format!("{} then {}", self.label, then.label))
    }
}

/// `Σ Vᵢ†Vᵢ = I` within [`tol::KRAUS_IDENTITY`].
pub fn is_trace_preserving(c: &KrausChannel) -> TestResult {
    identity_check(&c.operators, true)
}

/// `Σ VᵢVᵢ† = I` within [`tol::KRAUS_IDENTITY`].
pub fn is_bistochastic(c: &KrausChannel) -> TestResult {
    identity_check(&c.operators, false)
}

/// Random external field `σ ↦ Σ pᵢ Aᵢ σ Aᵢ†` with unitary `Aᵢ`; Kraus operators
/// `√pᵢ·Aᵢ`. Zero-probability terms are dropped.
pub fn make_random_external_field(probs: &[f64], unitaries: &[ComplexMatrix]) -> Result<KrausChannel> {
    if probs.len() != unitaries.len() {
        return Err(Error::DimensionMismatch { expected: probs.len(), found: unitaries.len() });
    }
    if let Some((index, &value)) = probs.iter().enumerate().find(|(_, &p)| p.is_nan() || p < 0.0) {
        return Err(Error::NegativeProbability { index, value });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > tol::PROBABILITY_SUM {
        return Err(Error::ProbabilitiesNotNormalized { sum });
    }
    for u in unitaries {
        let residual = u.unitarity_residual();
        if residual > tol::UNITARY {
            return Err(Error::NotUnitary { residual });
        }
    }
    let ops = probs.iter().zip(unitaries).filter(|(&p, _)| p > 0.0).map(|(&p, u)| u.scale_real(sqrt(p))).collect();
    KrausChannel::new(ops, "random external field")
}

/// The three Pauli random fields, all generated by `{I, σ₁, σ₂, σ₃}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliField {
    /// `[1-ε, 0, 0, ε]`
    Ref1,
    /// `[1-ε, 0, ε/2, ε/2]`
    Ref2,
    /// `[1-ε, ε/3, ε/3, ε/3]`, the depolarizing channel.
    Ref3,
}

impl PauliField {
    pub fn probabilities(self, epsilon: f64) -> [f64; 4] {
        match self {
            PauliField::Ref1 => [1.0 - epsilon, 0.0, 0.0, epsilon],
            PauliField::Ref2 => [1.0 - epsilon, 0.0, epsilon / 2.0, epsilon / 2.0],
            PauliField::Ref3 => [1.0 - epsilon, epsilon / 3.0, epsilon / 3.0, epsilon / 3.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PauliField::Ref1 => "ref1",
            PauliField::Ref2 => "ref2",
            PauliField::Ref3 => "ref3",
        }
    }

    /// Channel for noise strength `ε ∈ [0, 1]`.
    pub fn channel(self, epsilon: f64) -> Result<KrausChannel> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::ParameterOutOfRange { name: "epsilon", value: epsilon });
        }
        let [x, y, z] = pauli::all();
        let gens = [pauli::identity(), x, y, z];
        let mut ch = make_random_external_field(&self.probabilities(epsilon), &gens)?;
        ch.label = format!("{}(epsilon={epsilon})", self.name());
        Ok(ch)
    }
}

/// Amplitude damping with retention probability `p`: `M₁ = diag(1, √p)`,
/// `M₂ = √(1-p)·|0⟩⟨1|`. `|0⟩` is the ground state.
pub fn make_amplitude_damping(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { name: "p", value: p });
    }
    let z = C64::new(0.0, 0.0);
    let m1 = ComplexMatrix::from_rows([[C64::new(1.0, 0.0), z], [z, C64::new(sqrt(p), 0.0)]]);
    let m2 = ComplexMatrix::from_rows([[z, C64::new(sqrt(1.0 - p), 0.0)], [z, z]]);
    KrausChannel::new(vec![m1, m2], format!("damping(p={p})"))
}

/// A qubit channel acting on one side of the pair, with the lifted 4×4
/// Kraus operators precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalChannel {
    channel: KrausChannel,
    side: SubsystemId,
    lifted: Vec<ComplexMatrix>,
}

impl LocalChannel {
    pub fn new(channel: KrausChannel, side: SubsystemId) -> Result<Self> {
        if channel.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: channel.dim() });
        }
        let id = pauli::identity();
        let lifted = channel
            .operators
            .iter()
            .map(|v| match side {
                SubsystemId::A => kron(v, &id),
                SubsystemId::B => kron(&id, v),
            })
            .collect();
        Ok(LocalChannel { channel, side, lifted })
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn side(&self) -> SubsystemId {
        self.side
    }

    pub fn lifted_operators(&self) -> &[ComplexMatrix] {
        &self.lifted
    }

    /// `Σ Ṽᵢ ρ Ṽᵢ†`. The result is not re-validated.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let m = rho.matrix();
        if m.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: m.dim() });
        }
        let out = self.lifted.iter().fold(ComplexMatrix::zeros(4), |acc, v| &acc + &v.conjugate_by(m));
        Ok(DensityMatrix::new_unchecked(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{pure_to_density, swap_sides, PureState};

    fn qubit_state(diag: [f64; 2]) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&diag)
    }

    #[test]
    fn single_identity_generator_is_identity_channel() {
        let ch = make_random_external_field(&[1.0], &[ComplexMatrix::identity(2)]).unwrap();
        let sigma = qubit_state([0.3, 0.7]);
        assert_eq!(ch.apply_matrix(&sigma).unwrap(), sigma);
        assert!(is_bistochastic(&ch).holds);
    }

    #[test]
    fn pauli_presets_have_expected_probabilities() {
        let e = 0.05;
        assert_eq!(PauliField::Ref1.probabilities(e), [0.95, 0.0, 0.0, 0.05]);
        assert_eq!(PauliField::Ref2.probabilities(e), [0.95, 0.0, 0.025, 0.025]);
        assert_eq!(PauliField::Ref3.probabilities(e), [0.95, e / 3.0, e / 3.0, e / 3.0]);
        for f in [PauliField::Ref1, PauliField::Ref2, PauliField::Ref3] {
            let ch = f.channel(e).unwrap();
            assert!(is_trace_preserving(&ch).residual < 1e-15);
            assert!(is_bistochastic(&ch).residual < 1e-15);
        }
    }

    #[test]
    fn random_field_input_errors() {
        let gens = [ComplexMatrix::identity(2), pauli::x()];
        assert!(matches!(
            make_random_external_field(&[0.5, 0.6], &gens),
            Err(Error::ProbabilitiesNotNormalized { .. })
        ));
        assert!(matches!(
            make_random_external_field(&[1.5, -0.5], &gens),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
        let not_unitary = [ComplexMatrix::identity(2), ComplexMatrix::identity(2).scale_real(2.0)];
        assert!(matches!(make_random_external_field(&[0.5, 0.5], &not_unitary), Err(Error::NotUnitary { .. })));
        assert!(PauliField::Ref3.channel(1.5).is_err());
    }

    #[test]
    fn damping_at_unit_retention_is_identity() {
        let ch = make_amplitude_damping(1.0).unwrap();
        let sigma = ComplexMatrix::from_rows([
            [C64::new(0.6, 0.0), C64::new(0.1, 0.2)],
            [C64::new(0.1, -0.2), C64::new(0.4, 0.0)],
        ]);
        assert_eq!(ch.apply_matrix(&sigma).unwrap(), sigma);
        assert!(is_bistochastic(&ch).holds);
    }

    #[test]
    fn damping_decays_excited_state() {
        let p = 0.05;
        let ch = make_amplitude_damping(p).unwrap();
        let out = ch.apply_matrix(&qubit_state([0.0, 1.0])).unwrap();
        assert!(out.approx_eq(&qubit_state([1.0 - p, p]), 1e-15));
        let ground = qubit_state([1.0, 0.0]);
        for p in [0.0, 0.3, 0.9] {
            let ch = make_amplitude_damping(p).unwrap();
            assert_eq!(ch.apply_matrix(&ground).unwrap(), ground);
        }
    }

    #[test]
    fn damping_is_trace_preserving_but_not_unital() {
        for p in [0.0, 0.05, 0.5, 0.99] {
            assert!(is_trace_preserving(&make_amplitude_damping(p).unwrap()).residual < 1e-15);
        }
        let ch = make_amplitude_damping(0.05).unwrap();
        let r = is_bistochastic(&ch);
        assert!(!r.holds);
        assert!((r.residual - 0.95).abs() < 1e-15);
        let sum = kraus_sum(ch.operators(), false);
        assert!(sum.approx_eq(&qubit_state([1.95, 0.05]), 1e-15));
        assert!(make_amplitude_damping(1.2).is_err());
        assert!(make_amplitude_damping(-0.1).is_err());
    }

    #[test]
    fn half_identity_is_flagged() {
        let ch = KrausChannel::new_unchecked(vec![ComplexMatrix::identity(2).scale_real(0.5)], "bad");
        let r = is_trace_preserving(&ch);
        assert!(!r.holds);
        assert!((r.residual - 0.75).abs() < 1e-15);
        assert!(matches!(
            KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(0.5)], "bad"),
            Err(Error::NotTracePreserving { .. })
        ));
    }

    #[test]
    fn depolarizing_on_bell_gives_bell_diagonal_mixture() {
        let eps = 0.3;
        let lc = LocalChannel::new(PauliField::Ref3.channel(eps).unwrap(), SubsystemId::B).unwrap();
        let out = lc.apply(&pure_to_density(&PureState::bell())).unwrap();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| C64::new(x, 0.0);
        let z = c(0.0);
        let bells = [[c(s), z, z, c(s)], [c(s), z, z, c(-s)], [z, c(s), c(s), z], [z, c(s), c(-s), z]];
        let w = [1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0];
        let mut expected = ComplexMatrix::zeros(4);
        for (b, wi) in bells.iter().zip(w) {
            expected = &expected + &ComplexMatrix::outer(b, b).scale_real(wi);
        }
        assert!(out.matrix().approx_eq(&expected, 1e-15));
    }

    #[test]
    fn side_a_equals_swapped_side_b() {
        let ch = make_amplitude_damping(0.3).unwrap();
        let on_a = LocalChannel::new(ch.clone(), SubsystemId::A).unwrap();
        let on_b = LocalChannel::new(ch, SubsystemId::B).unwrap();
        let rho = crate::states::make_rho1(0.6, 0.75).unwrap();
        let direct = on_a.apply(&rho).unwrap();
        let via_swap = swap_sides(&on_b.apply(&swap_sides(&rho)).unwrap());
        assert!(direct.matrix().approx_eq(via_swap.matrix(), 1e-15));
    }

    #[test]
    fn lifting_rejects_two_qubit_channel() {
        let ch = KrausChannel::identity(4);
        assert!(LocalChannel::new(ch, SubsystemId::B).is_err());
    }
}
