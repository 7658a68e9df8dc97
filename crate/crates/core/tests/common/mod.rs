#![allow(dead_code)]

use entdyn_core::matcore::{kron, ComplexMatrix, C64};
use entdyn_core::sampling::{sample_haar_unitary, sample_pure, sample_su2, RandomSource};
use entdyn_core::states::{pure_to_density, DensityMatrix};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian(rng: &mut RandomSource, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = c(rng.normal(), 0.0);
        for j in i + 1..dim {
            let z = c(rng.normal(), rng.normal());
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Full-rank-generic mixed state `G G† / Tr` with `G` Ginibre.
pub fn random_density(rng: &mut RandomSource) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = c(rng.normal(), rng.normal());
        }
    }
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

/// Mixed state of random rank 1..=4.
pub fn random_state_any_rank(rng: &mut RandomSource) -> DensityMatrix {
    let rank = 1 + (rng.next_u64() % 4) as usize;
    let mut acc = ComplexMatrix::zeros(4);
    let mut weights = [0.0; 4];
    for w in weights.iter_mut().take(rank) {
        *w = rng.uniform() + 1e-3;
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter().take(rank) {
        let psi = pure_to_density(&sample_pure(rng));
        acc = &acc + &psi.matrix().scale_real(w / total);
    }
    DensityMatrix::new(acc).unwrap()
}

/// Convex mixture of `terms` random product pure states.
pub fn random_separable_mixture(rng: &mut RandomSource, terms: usize) -> DensityMatrix {
    let mut acc = ComplexMatrix::zeros(4);
    let ws: Vec<f64> = (0..terms).map(|_| rng.uniform() + 1e-3).collect();
    let total: f64 = ws.iter().sum();
    for w in ws {
        let a = qubit_pure(rng);
        let b = qubit_pure(rng);
        acc = &acc + &kron(&a, &b).scale_real(w / total);
    }
    DensityMatrix::new(acc).unwrap()
}

pub fn qubit_pure(rng: &mut RandomSource) -> ComplexMatrix {
    let u = sample_su2(rng);
    let v = [u[(0, 0)], u[(1, 0)]];
    ComplexMatrix::outer(&v, &v)
}

pub fn random_local_unitary(rng: &mut RandomSource) -> ComplexMatrix {
    kron(&sample_haar_unitary(rng, 2), &sample_haar_unitary(rng, 2))
}

/// Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
