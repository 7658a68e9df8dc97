//! Seeded sampling of random pure states.
//!
//! The generator is xoshiro256++ seeded through SplitMix64, so a given seed
//! yields the same stream on every platform. Ensembles never share one
//! generator: trajectory `k` of a run with seed `s` draws from
//! [`RandomSource::derive`]`(s, k)`.
//!
//! Three ensembles are provided, all built from the Hurwitz angle
//! parametrisation with inverse-CDF polar angles `ϑ_k = arcsin(ξ^{1/2k})`:
//! - [`sample_pure`]: unitarily invariant measure on all pure states;
//! - [`sample_separable`]: `U₁⊗U₂|00⟩` with independent uniform `U₁, U₂ ∈ SU(2)`;
//! - [`sample_max_entangled`]: the one-sided family `(I⊗U)|Ψ⟩`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use libm::{asin, cos, log, pow, sin, sincos, sqrt};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::matcore::{ComplexMatrix, C64};
use crate::states::PureState;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function (Stafford variant 13).
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sub-stream `index` of `seed`:
/// `mix64(seed + mix64(index + γ))` with `γ` the golden-ratio increment.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(mix64(index.wrapping_add(GOLDEN_GAMMA))))
}

/// A single-consumer random stream.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: Xoshiro256PlusPlus,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed, rng: Xoshiro256PlusPlus::seed_from_u64(seed) }
    }

    /// Independent sub-stream for trajectory `index`.
    pub fn derive(seed: u64, index: u64) -> Self {
        Self::new(derive_seed(seed, index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform azimuth on `[0, 2π)`.
    pub fn angle(&mut self) -> f64 {
        TAU * self.uniform()
    }

    /// Standard normal via Box–Muller (one of the pair is discarded).
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        sqrt(-2.0 * log(u1)) * cos(TAU * u2)
    }

    /// Polar angle with density `k·sin(2ϑ)·sin(ϑ)^{2k-2}` on `[0, π/2]`.
    pub fn hurwitz_polar(&mut self, k: u32) -> f64 {
        let xi = self.uniform();
        asin(pow(xi, 1.0 / (2.0 * k as f64)))
    }
}

/// Uniformly distributed pure state of two qubits.
///
/// Draw order: `ξ₁, ξ₂, ξ₃` then `φ₁, φ₂, φ₃`. Amplitudes are
/// `(cos ϑ₃, sin ϑ₃ cos ϑ₂ e^{iφ₃}, sin ϑ₃ sin ϑ₂ cos ϑ₁ e^{iφ₂}, sin ϑ₃ sin ϑ₂ sin ϑ₁ e^{iφ₁})`.
pub fn sample_pure(rng: &mut RandomSource) -> PureState {
    let t1 = rng.hurwitz_polar(1);
    let t2 = rng.hurwitz_polar(2);
    let t3 = rng.hurwitz_polar(3);
    let (p1, p2, p3) = (rng.angle(), rng.angle(), rng.angle());
    let (s1, c1) = sincos(t1);
    let (s2, c2) = sincos(t2);
    let (s3, c3) = sincos(t3);
    let amps = [
        C64::new(c3, 0.0),
        C64::from_polar(s3 * c2, p3),
        C64::from_polar(s3 * s2 * c1, p2),
        C64::from_polar(s3 * s2 * s1, p1),
    ];
    PureState::new(amps).expect("Hurwitz amplitudes are normalised")
}

/// Uniform element of SU(2): `[[a, -b*], [b, a*]]` with `(a, b)` uniform on
/// the unit sphere of C². Draw order: `ξ`, phase of `a`, phase of `b`.
pub fn sample_su2(rng: &mut RandomSource) -> ComplexMatrix {
    let theta = rng.hurwitz_polar(1);
    let (psi, phi) = (rng.angle(), rng.angle());
    let a = C64::from_polar(cos(theta), psi);
    let b = C64::from_polar(sin(theta), phi);
    ComplexMatrix::from_rows([[a, -b.conj()], [b, a.conj()]])
}

/// `U₁ ⊗ U₂ |00⟩`
pub fn sample_separable(rng: &mut RandomSource) -> PureState {
    let u1 = sample_su2(rng);
    let u2 = sample_su2(rng);
    PureState::product([u1[(0, 0)], u1[(1, 0)]], [u2[(0, 0)], u2[(1, 0)]])
        .expect("product of unit vectors is normalised")
}

/// `(cos ϑ e^{iφ₁}, sin ϑ e^{iφ₂}, -sin ϑ e^{-iφ₂}, cos ϑ e^{-iφ₁}) / √2` with
/// `P(ϑ) = sin 2ϑ`. Draw order: `ξ`, `φ₁`, `φ₂`.
pub fn sample_max_entangled(rng: &mut RandomSource) -> PureState {
    let theta = rng.hurwitz_polar(1);
    let (p1, p2) = (rng.angle(), rng.angle());
    let (s, c) = sincos(theta);
    let r = FRAC_1_SQRT_2;
    let amps = [
        C64::from_polar(r * c, p1),
        C64::from_polar(r * s, p2),
        -C64::from_polar(r * s, -p2),
        C64::from_polar(r * c, -p1),
    ];
    PureState::new(amps).expect("maximally entangled amplitudes are normalised")
}

/// Haar-random `dim × dim` unitary: Gram–Schmidt on a complex Ginibre matrix
/// (columns orthonormalised in order, phases kept from the projection).
pub fn sample_haar_unitary(rng: &mut RandomSource, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> =
        (0..dim).map(|_| (0..dim).map(|_| C64::new(rng.normal(), rng.normal())).collect()).collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: C64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm = sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>());
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}
