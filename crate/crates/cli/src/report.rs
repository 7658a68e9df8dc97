//! Plain-text reports for single states, channels and sampled ensembles.

use std::fmt::Write as _;

use entdyn_core::channels::{is_bistochastic, is_trace_preserving};
use entdyn_core::matcore::{eig_hermitian, SubsystemId};
use entdyn_core::measures::{entanglement_of_formation, entropy_report};
use entdyn_core::sampling::{sample_max_entangled, sample_pure, sample_separable, RandomSource};
use entdyn_core::states::{bloch_decompose, pure_to_density, PureState};
use entdyn_core::{DensityMatrix, KrausChannel};

use crate::format::{matrix, number};

fn vector(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| number(*x)).collect::<Vec<_>>().join(", "))
}

/// Matrix dump, entanglement, entropies, violation flags and Bloch data.
pub fn state_report(label: &str, rho: &DensityMatrix) -> entdyn_core::Result<String> {
    let e = entanglement_of_formation(rho)?;
    let s = entropy_report(rho)?;
    let d = bloch_decompose(rho)?;
    let mut out = String::new();
    let _ = writeln!(out, "state: {label}");
    let _ = writeln!(out, "matrix:");
    for line in matrix(rho.matrix()).lines() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "C = {}", number(e.concurrence));
    let _ = writeln!(out, "E_nats = {}", number(e.eof_nats));
    let _ = writeln!(out, "E_over_ln2 = {}", number(e.eof_rescaled));
    let _ = writeln!(out, "S = {}", number(s.s_total));
    let _ = writeln!(out, "S_A = {}", number(s.s_a));
    let _ = writeln!(out, "S_B = {}", number(s.s_b));
    let _ = writeln!(out, "violates_A = {}", s.violates_a);
    let _ = writeln!(out, "violates_B = {}", s.violates_b);
    let _ = writeln!(out, "bloch_a = {}", vector(&d.a));
    let _ = writeln!(out, "bloch_b = {}", vector(&d.b));
    let rows: Vec<String> = d.t.iter().map(|r| vector(r)).collect();
    let _ = writeln!(out, "correlations = [{}]", rows.join(", "));
    Ok(out)
}

pub fn channel_report(ch: &KrausChannel) -> String {
    let tp = is_trace_preserving(ch);
    let bi = is_bistochastic(ch);
    format!(
        "channel: {}\ntrace_preserving = {} (residual {})\nbistochastic = {} (residual {})\n",
        ch.label(),
        tp.holds,
        number(tp.residual),
        bi.holds,
        number(bi.residual)
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Pure,
    Separable,
    MaxEntangled,
}

impl Ensemble {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "pure" | "pure-random" => Some(Ensemble::Pure),
            "separable" | "separable-random" => Some(Ensemble::Separable),
            "max-entangled" | "max-entangled-random" => Some(Ensemble::MaxEntangled),
            _ => None,
        }
    }

    pub fn draw(self, rng: &mut RandomSource) -> PureState {
        match self {
            Ensemble::Pure => sample_pure(rng),
            Ensemble::Separable => sample_separable(rng),
            Ensemble::MaxEntangled => sample_max_entangled(rng),
        }
    }
}

pub const SAMPLE_HEADER: &str = "index,E_nats,S_marginal_A,r";

/// Per-draw CSV from one stream seeded with `seed`, then a `#` footer line
/// with the column means.
pub fn sample_csv(ensemble: Ensemble, count: usize, seed: u64) -> entdyn_core::Result<String> {
    let mut rng = RandomSource::new(seed);
    let mut out = format!("{SAMPLE_HEADER}\n");
    let mut sums = [0.0; 3];
    for k in 0..count {
        let rho = pure_to_density(&ensemble.draw(&mut rng));
        let e = entanglement_of_formation(&rho)?.eof_nats;
        let marginal = rho.marginal(SubsystemId::A)?;
        let s_a = entdyn_core::measures::von_neumann_entropy(&marginal)?;
        let ev = eig_hermitian(marginal.matrix())?.eigenvalues;
        let r = ((ev[0] - ev[1]) / 2.0).max(0.0);
        for (acc, v) in sums.iter_mut().zip([e, s_a, r]) {
            *acc += v;
        }
        let _ = writeln!(out, "{k},{},{},{}", number(e), number(s_a), number(r));
    }
    let n = count.max(1) as f64;
    let _ = writeln!(
        out,
        "# count={count} mean_E_nats={} mean_S_marginal_A={} mean_r={}",
        number(sums[0] / n),
        number(sums[1] / n),
        number(sums[2] / n)
    );
    Ok(out)
}
