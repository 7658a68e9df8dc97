//! The iterated map `ρ(n+1) = U · Λ̂(ρ(n)) · U†`.
//!
//! Each step applies the local channel `Λ̂` first and the coupling unitary
//! `U = exp(i·α·H)` second. Observables are recorded on the post-unitary
//! states, with the untouched initial state as step 0.
//!
//! Ensembles are a set of independent trajectories: member `k` draws its
//! initial state (and any random Hamiltonians) from
//! `RandomSource::derive(seed, k)`, and the per-step statistics are reduced
//! in member order. The result therefore does not depend on how the members
//! are scheduled; [`run_member`] and [`EnsembleSeries::aggregate`] are public
//! so a caller can run the members on its own thread pool.

use alloc::vec::Vec;
use libm::{cos, sin, sqrt};

use crate::channels::{make_amplitude_damping, LocalChannel, PauliField};
use crate::error::{Error, Result};
use crate::matcore::{kron, pauli, unitary_exp, ComplexMatrix, SubsystemId};
use crate::measures::{entanglement_of_formation, entropy_report};
use crate::sampling::{sample_max_entangled, sample_pure, sample_separable, RandomSource};
use crate::states::{make_rho1, make_rho2, pure_to_density, DensityMatrix, PureState};
use crate::tol;

/// States are re-validated every this many steps.
pub const VALIDATE_EVERY: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub enum InitialSpec {
    PureRandom,
    SeparableRandom,
    MaxEntangledRandom,
    Rho1 {
        q: f64,
        a_sq: f64,
    },
    Rho2 {
        q: f64,
        a_sq: f64,
    },
    /// `(|00⟩ + |11⟩)/√2`
    Bell,
    Explicit(ComplexMatrix),
}

impl InitialSpec {
    pub fn prepare(&self, rng: &mut RandomSource) -> Result<DensityMatrix> {
        match self {
            InitialSpec::PureRandom => Ok(pure_to_density(&sample_pure(rng))),
            InitialSpec::SeparableRandom => Ok(pure_to_density(&sample_separable(rng))),
            InitialSpec::MaxEntangledRandom => Ok(pure_to_density(&sample_max_entangled(rng))),
            InitialSpec::Rho1 { q, a_sq } => make_rho1(*q, *a_sq),
            InitialSpec::Rho2 { q, a_sq } => make_rho2(*q, *a_sq),
            InitialSpec::Bell => Ok(pure_to_density(&PureState::bell())),
            InitialSpec::Explicit(m) => {
                if m.dim() != 4 {
                    return Err(Error::DimensionMismatch { expected: 4, found: m.dim() });
                }
                DensityMatrix::new(m.clone())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelPreset {
    /// Pauli random external field with noise strength `ε`.
    Pauli { field: PauliField, epsilon: f64 },
    /// Amplitude damping with retention probability `p`.
    Damping { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub preset: ChannelPreset,
    pub side: SubsystemId,
}

impl ChannelSpec {
    pub fn pauli(field: PauliField, epsilon: f64, side: SubsystemId) -> Self {
        ChannelSpec { preset: ChannelPreset::Pauli { field, epsilon }, side }
    }

    pub fn damping(p: f64, side: SubsystemId) -> Self {
        ChannelSpec { preset: ChannelPreset::Damping { p }, side }
    }

    pub fn build(&self) -> Result<LocalChannel> {
        let ch = match self.preset {
            ChannelPreset::Pauli { field, epsilon } => field.channel(epsilon)?,
            ChannelPreset::Damping { p } => make_amplitude_damping(p)?,
        };
        LocalChannel::new(ch, self.side)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSpec {
    /// `σ_x ⊗ σ_y`
    H,
    /// `σ_y ⊗ σ_x`
    HPrime,
    /// No coupling; the unitary step is the identity.
    None,
    /// `(n̂₁·σ) ⊗ (n̂₂·σ)` with independent uniform unit vectors, redrawn every step.
    RandomProduct,
    Explicit(ComplexMatrix),
}

fn random_axis_operator(rng: &mut RandomSource) -> ComplexMatrix {
    let cos_t = 1.0 - 2.0 * rng.uniform();
    let sin_t = sqrt((1.0 - cos_t * cos_t).max(0.0));
    let phi = rng.angle();
    let n = [sin_t * cos(phi), sin_t * sin(phi), cos_t];
    let [x, y, z] = pauli::all();
    let nx = &x.scale_real(n[0]) + &y.scale_real(n[1]);
    &nx + &z.scale_real(n[2])
}

/// Coupling Hamiltonian. A random source is needed only for `RandomProduct`;
/// `None` yields the zero matrix.
pub fn make_hamiltonian(spec: &HamiltonianSpec, rng: Option<&mut RandomSource>) -> Result<ComplexMatrix> {
    match spec {
        HamiltonianSpec::H => Ok(kron(&pauli::x(), &pauli::y())),
        HamiltonianSpec::HPrime => Ok(kron(&pauli::y(), &pauli::x())),
        HamiltonianSpec::None => Ok(ComplexMatrix::zeros(4)),
        HamiltonianSpec::RandomProduct => {
            let rng = rng.ok_or(Error::MissingRandomSource)?;
            let a = random_axis_operator(rng);
            let b = random_axis_operator(rng);
            Ok(kron(&a, &b))
        }
        HamiltonianSpec::Explicit(h) => {
            if h.dim() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: h.dim() });
            }
            let residual = h.hermiticity_residual();
            if residual > tol::HERMITIAN {
                return Err(Error::NotHermitian { residual });
            }
            Ok(h.clone())
        }
    }
}

/// Full description of a run. `alpha < 0` runs the coupling backwards.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsConfig {
    pub initial: InitialSpec,
    pub channel: ChannelSpec,
    pub hamiltonian: HamiltonianSpec,
    pub alpha: f64,
    pub steps: usize,
    pub seed: u64,
    pub ensemble_size: usize,
    pub record_every: usize,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            initial: InitialSpec::PureRandom,
            channel: ChannelSpec::pauli(PauliField::Ref3, 0.0, SubsystemId::B),
            hamiltonian: HamiltonianSpec::None,
            alpha: 0.0,
            steps: 500,
            seed: 42,
            ensemble_size: 1,
            record_every: 1,
        }
    }
}

impl DynamicsConfig {
    pub fn check(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::ParameterOutOfRange { name: "steps", value: 0.0 });
        }
        if self.record_every == 0 {
            return Err(Error::ParameterOutOfRange { name: "record_every", value: 0.0 });
        }
        if self.ensemble_size == 0 {
            return Err(Error::ParameterOutOfRange { name: "ensemble_size", value: 0.0 });
        }
        if !self.alpha.is_finite() {
            return Err(Error::ParameterOutOfRange { name: "alpha", value: self.alpha });
        }
        Ok(())
    }

    fn has_coupling(&self) -> bool {
        self.alpha != 0.0 && self.hamiltonian != HamiltonianSpec::None
    }

    /// Number of rows a series of this config holds.
    pub fn record_count(&self) -> usize {
        self.steps / self.record_every + 1
    }
}

/// Observables of one state, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Observables {
    pub eof_nats: f64,
    pub eof_rescaled: f64,
    pub s_total: f64,
    pub s_a: f64,
    pub s_b: f64,
}

impl Observables {
    pub fn measure(rho: &DensityMatrix) -> Result<Self> {
        let e = entanglement_of_formation(rho)?;
        let s = entropy_report(rho)?;
        Ok(Observables {
            eof_nats: e.eof_nats,
            eof_rescaled: e.eof_rescaled,
            s_total: s.s_total,
            s_a: s.s_a,
            s_b: s.s_b,
        })
    }

    fn as_array(&self) -> [f64; 5] {
        [self.eof_nats, self.eof_rescaled, self.s_total, self.s_a, self.s_b]
    }

    fn from_array(v: [f64; 5]) -> Self {
        Observables { eof_nats: v[0], eof_rescaled: v[1], s_total: v[2], s_a: v[3], s_b: v[4] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRecord {
    pub step: usize,
    pub values: Observables,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectorySeries {
    pub records: Vec<ObservableRecord>,
}

impl TrajectorySeries {
    pub fn eof(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.values.eof_nats).collect()
    }

    pub fn entropy(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.values.s_total).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleRow {
    pub step: usize,
    pub mean: Observables,
    /// Unbiased (N-1) sample standard deviation; zero for a single member.
    pub std: Observables,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSeries {
    pub ensemble_size: usize,
    pub rows: Vec<EnsembleRow>,
}

impl EnsembleSeries {
    /// Per-step mean and standard deviation, summed in member order.
    /// All members must have been recorded on the same steps.
    pub fn aggregate(members: &[TrajectorySeries]) -> Result<Self> {
        let n = members.len();
        if n == 0 {
            return Err(Error::ParameterOutOfRange { name: "ensemble_size", value: 0.0 });
        }
        let len = members[0].records.len();
        if let Some(bad) = members.iter().find(|m| m.records.len() != len) {
            return Err(Error::DimensionMismatch { expected: len, found: bad.records.len() });
        }
        let rows = (0..len)
            .map(|r| {
                let step = members[0].records[r].step;
                let mut sum = [0.0; 5];
                for m in members {
                    for (s, v) in sum.iter_mut().zip(m.records[r].values.as_array()) {
                        *s += v;
                    }
                }
                let mean = sum.map(|s| s / n as f64);
                let mut sq = [0.0; 5];
                for m in members {
                    for ((acc, v), mu) in sq.iter_mut().zip(m.records[r].values.as_array()).zip(mean) {
                        *acc += (v - mu) * (v - mu);
                    }
                }
                let std = if n > 1 { sq.map(|s| sqrt(s / (n - 1) as f64)) } else { [0.0; 5] };
                EnsembleRow { step, mean: Observables::from_array(mean), std: Observables::from_array(std) }
            })
            .collect();
        Ok(EnsembleSeries { ensemble_size: n, rows })
    }

    pub fn mean_eof(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.mean.eof_nats).collect()
    }

    pub fn mean_entropy(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.mean.s_total).collect()
    }
}

/// One map iteration: channel, then `u ρ' u†`.
pub fn step(rho: &DensityMatrix, lc: &LocalChannel, u: &ComplexMatrix) -> Result<DensityMatrix> {
    let residual = u.unitarity_residual();
    if residual > tol::UNITARY {
        return Err(Error::NotUnitary { residual });
    }
    Ok(lc.apply(rho)?.conjugated(u))
}

fn advance(rho: &DensityMatrix, lc: &LocalChannel, u: Option<&ComplexMatrix>) -> Result<DensityMatrix> {
    let out = lc.apply(rho)?;
    Ok(match u {
        Some(u) => out.conjugated(u),
        None => out,
    })
}

/// Evolves `rho0` for `cfg.steps` steps; `rng` feeds random Hamiltonians.
pub fn run_trajectory(rho0: &DensityMatrix, cfg: &DynamicsConfig, rng: &mut RandomSource) -> Result<TrajectorySeries> {
    cfg.check()?;
    let lc = cfg.channel.build()?;
    let random_h = cfg.hamiltonian == HamiltonianSpec::RandomProduct;
    let fixed_u = if cfg.has_coupling() && !random_h {
        Some(unitary_exp(&make_hamiltonian(&cfg.hamiltonian, None)?, cfg.alpha, 1)?)
    } else {
        None
    };

    let mut records = Vec::with_capacity(cfg.record_count());
    records.push(ObservableRecord { step: 0, values: Observables::measure(rho0)? });
    let mut rho = rho0.clone();
    for n in 1..=cfg.steps {
        let drawn;
        let u = if cfg.has_coupling() && random_h {
            let h = make_hamiltonian(&cfg.hamiltonian, Some(rng)).map_err(|e| e.at_step(n))?;
            drawn = unitary_exp(&h, cfg.alpha, 1).map_err(|e| e.at_step(n))?;
            Some(&drawn)
        } else {
            fixed_u.as_ref()
        };
        rho = advance(&rho, &lc, u).map_err(|e| e.at_step(n))?;
        if n % VALIDATE_EVERY == 0 {
            rho.validate().map_err(|e| e.at_step(n))?;
        }
        if n % cfg.record_every == 0 {
            let values = Observables::measure(&rho).map_err(|e| e.at_step(n))?;
            records.push(ObservableRecord { step: n, values });
        }
    }
    Ok(TrajectorySeries { records })
}

/// Trajectory `index` of the ensemble described by `cfg`.
pub fn run_member(cfg: &DynamicsConfig, index: usize) -> Result<TrajectorySeries> {
    let mut rng = RandomSource::derive(cfg.seed, index as u64);
    cfg.initial
        .prepare(&mut rng)
        .and_then(|rho0| run_trajectory(&rho0, cfg, &mut rng))
        .map_err(|e| e.in_trajectory(index))
}

/// Runs all members sequentially and aggregates them.
pub fn run_ensemble(cfg: &DynamicsConfig) -> Result<EnsembleSeries> {
    cfg.check()?;
    let members = (0..cfg.ensemble_size).map(|k| run_member(cfg, k)).collect::<Result<Vec<_>>>()?;
    EnsembleSeries::aggregate(&members)
}
