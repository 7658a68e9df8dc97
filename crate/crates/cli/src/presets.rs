//! Parameter sets reproducing each figure, one CSV per curve.
//!
//! Each preset runs long enough to show the feature its figure is about (stated
//! in the manifest's `description` column). Unless noted, channels act on B and the
//! coupling Hamiltonian is `H = σx⊗σy`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use entdyn_core::channels::PauliField;
use entdyn_core::dynamics::{ChannelSpec, DynamicsConfig, HamiltonianSpec, InitialSpec};
use entdyn_core::SubsystemId;

use crate::config::{channel_label, hamiltonian_name, initial_name, side_name};
use crate::error::CliError;
use crate::format;
use crate::runner::run_ensemble;

pub const FIGURE_IDS: [&str; 15] = [
    "fig2", "fig3a", "fig3b", "fig4", "fig5a", "fig5b", "fig6a", "fig6b", "fig7", "fig8a", "fig8b", "fig9a", "fig9b",
    "fig10a", "fig10b",
];

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// File-name fragment, e.g. `star`.
    pub label: String,
    pub description: String,
    pub config: DynamicsConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: &'static str,
    pub curves: Vec<Curve>,
}

const RHO1: InitialSpec = InitialSpec::Rho1 { q: 0.6, a_sq: 0.75 };
const RHO2: InitialSpec = InitialSpec::Rho2 { q: 0.6, a_sq: 0.75 };

fn base(initial: InitialSpec, channel: ChannelSpec, seed: u64) -> DynamicsConfig {
    DynamicsConfig { initial, channel, seed, ..DynamicsConfig::default() }
}

fn curve(label: impl Into<String>, description: impl Into<String>, config: DynamicsConfig) -> Curve {
    Curve { label: label.into(), description: description.into(), config }
}

fn pauli_b(field: PauliField, eps: f64) -> ChannelSpec {
    ChannelSpec::pauli(field, eps, SubsystemId::B)
}

/// Two ensembles of 100 (alpha = 0 and 0.1) for the given start and field.
fn alpha_pair(initial: InitialSpec, field: PauliField, seed: u64, what: &str) -> Vec<Curve> {
    [(0.0, "alpha0"), (0.1, "alpha0.1")]
        .into_iter()
        .map(|(alpha, label)| {
            let cfg = DynamicsConfig {
                hamiltonian: HamiltonianSpec::H,
                alpha,
                ensemble_size: 100,
                ..base(initial.clone(), pauli_b(field, 0.01), seed)
            };
            curve(label, format!("{what}, {} eps=0.01, alpha={alpha}, 500 steps", field.name()), cfg)
        })
        .collect()
}

/// rho1 with `h_star` against rho2 with `h_cross`, both with the channel on B.
fn mirrored_pair(eps: f64, alpha: f64, h_star: HamiltonianSpec, h_cross: HamiltonianSpec, seed: u64) -> Vec<Curve> {
    let mk = |initial, h: HamiltonianSpec| DynamicsConfig {
        hamiltonian: h,
        alpha,
        ..base(initial, pauli_b(PauliField::Ref3, eps), seed)
    };
    let (hs, hc) = (hamiltonian_name(&h_star), hamiltonian_name(&h_cross));
    vec![
        curve(
            "star",
            format!("rho1 (classical side B attacked), {hs}, eps={eps}, alpha={alpha}, 500 steps"),
            mk(RHO1, h_star),
        ),
        curve(
            "cross",
            format!("rho2 (quantum side attacked), {hc}, eps={eps}, alpha={alpha}, 500 steps"),
            mk(RHO2, h_cross),
        ),
    ]
}

pub fn preset(id: &str, seed: u64) -> Option<Preset> {
    use HamiltonianSpec::{HPrime, H};
    let curves = match id {
        "fig2" => [0.01, 0.05]
            .into_iter()
            .map(|eps| {
                let cfg = DynamicsConfig {
                    ensemble_size: 100,
                    ..base(InitialSpec::PureRandom, pauli_b(PauliField::Ref2, eps), seed)
                };
                curve(format!("eps{eps}"), format!("100 random pure states, ref2 eps={eps}, alpha=0, 500 steps"), cfg)
            })
            .collect(),
        "fig3a" => {
            alpha_pair(InitialSpec::MaxEntangledRandom, PauliField::Ref1, seed, "100 maximally entangled states")
        }
        "fig3b" => {
            alpha_pair(InitialSpec::MaxEntangledRandom, PauliField::Ref2, seed, "100 maximally entangled states")
        }
        "fig4" => {
            let mut curves: Vec<Curve> = (0..5u64)
                .map(|k| {
                    let cfg = DynamicsConfig {
                        hamiltonian: HPrime,
                        alpha: 0.1,
                        steps: 300,
                        ..base(InitialSpec::MaxEntangledRandom, pauli_b(PauliField::Ref2, 0.01), seed.wrapping_add(k))
                    };
                    curve(
                        format!("state{k}"),
                        format!("single maximally entangled state, seed offset {k}, ref2 eps=0.01, Hprime alpha=0.1, 300 steps"),
                        cfg,
                    )
                })
                .collect();
            let reference = DynamicsConfig {
                steps: 300,
                ..base(InitialSpec::MaxEntangledRandom, pauli_b(PauliField::Ref2, 0.01), seed)
            };
            curves.push(curve(
                "reference",
                "alpha=0 reference (independent of the initial maximally entangled state), 300 steps",
                reference,
            ));
            curves
        }
        "fig5a" => alpha_pair(InitialSpec::SeparableRandom, PauliField::Ref1, seed, "100 separable pure states"),
        "fig5b" => alpha_pair(InitialSpec::SeparableRandom, PauliField::Ref2, seed, "100 separable pure states"),
        "fig6a" | "fig6b" => {
            let damping = ChannelSpec::damping(0.05, SubsystemId::B);
            let mk = |initial, alpha: f64| DynamicsConfig {
                hamiltonian: if alpha == 0.0 { HamiltonianSpec::None } else { H },
                alpha,
                steps: 800,
                ensemble_size: 100,
                ..base(initial, damping, seed)
            };
            if id == "fig6a" {
                vec![
                    curve(
                        "squares",
                        "100 separable pure states, damping p=0.05, alpha=0, 800 steps",
                        mk(InitialSpec::SeparableRandom, 0.0),
                    ),
                    curve(
                        "diamonds",
                        "100 maximally entangled states, damping p=0.05, alpha=0, 800 steps",
                        mk(InitialSpec::MaxEntangledRandom, 0.0),
                    ),
                ]
            } else {
                vec![
                    curve(
                        "circles",
                        "100 random pure states, damping p=0.05, alpha=0, 800 steps",
                        mk(InitialSpec::PureRandom, 0.0),
                    ),
                    curve(
                        "triangles",
                        "100 random pure states, damping p=0.05, H alpha=0.1, 800 steps",
                        mk(InitialSpec::PureRandom, 0.1),
                    ),
                ]
            }
        }
        "fig7" => {
            let mk = |initial| DynamicsConfig { steps: 200, ..base(initial, pauli_b(PauliField::Ref3, 0.01), seed) };
            vec![
                curve("star", "rho1, ref3 eps=0.01 on the classical side B, alpha=0, 200 steps", mk(RHO1)),
                curve("cross", "rho2, ref3 eps=0.01 on B (the quantum side of rho2), alpha=0, 200 steps", mk(RHO2)),
                curve(
                    "bold",
                    "Bell state reference, same channel (eps=0.01 assumed), alpha=0, 200 steps",
                    mk(InitialSpec::Bell),
                ),
            ]
        }
        "fig8a" => mirrored_pair(0.002, 0.06, H, HPrime, seed),
        "fig8b" => mirrored_pair(0.002, 0.06, HPrime, H, seed),
        "fig9a" => mirrored_pair(0.002, -0.06, H, HPrime, seed),
        "fig9b" => mirrored_pair(0.002, -0.06, HPrime, H, seed),
        "fig10a" => mirrored_pair(0.01, 0.04, H, HPrime, seed),
        "fig10b" => mirrored_pair(0.01, 0.04, HPrime, H, seed),
        _ => return None,
    };
    let id = FIGURE_IDS.iter().copied().find(|f| *f == id)?;
    Some(Preset { id, curves })
}

pub const MANIFEST_HEADER: &str =
    "file,curve,initial,channel,side,hamiltonian,alpha,steps,ensemble_size,seed,description";

/// Runs every curve of `id`, writing `<id>_<curve>.csv` and
/// `<id>_manifest.csv` into `out_dir`. Returns the written paths, manifest last.
pub fn reproduce(id: &str, out_dir: &Path, seed: u64, threads: Option<usize>) -> Result<Vec<PathBuf>, CliError> {
    let preset = preset(id, seed).ok_or_else(|| CliError::UnknownFigure(id.to_string()))?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Output { path: out_dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    let mut manifest = format!("{MANIFEST_HEADER}\n");
    for c in &preset.curves {
        let file = format!("{}_{}.csv", preset.id, c.label);
        let path = out_dir.join(&file);
        let series = run_ensemble(&c.config, threads)?;
        fs::write(&path, format::series_csv(&series))
            .map_err(|source| CliError::Output { path: path.clone(), source })?;
        written.push(path);
        let d = &c.config;
        let _ = writeln!(
            manifest,
            "{file},{},{},{},{},{},{},{},{},{},\"{}\"",
            c.label,
            initial_name(&d.initial),
            channel_label(&d.channel),
            side_name(d.channel.side),
            hamiltonian_name(&d.hamiltonian),
            format::number(d.alpha),
            d.steps,
            d.ensemble_size,
            d.seed,
            c.description.replace('"', "\"\""),
        );
    }
    let path = out_dir.join(format!("{}_manifest.csv", preset.id));
    fs::write(&path, manifest).map_err(|source| CliError::Output { path: path.clone(), source })?;
    written.push(path);
    Ok(written)
}
