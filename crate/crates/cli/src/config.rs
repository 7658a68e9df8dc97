//! Flat `key = value` experiment files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Every key is optional; missing keys take these defaults:
//!
//! | key             | default       | values                                                        |
//! |-----------------|---------------|---------------------------------------------------------------|
//! | `initial`       | `pure_random` | `pure_random`, `separable_random`, `max_entangled_random`, `rho1`, `rho2`, `bell` |
//! | `q`             | `0.6`         | mixing weight of `rho1`/`rho2`, in (0, 1)                     |
//! | `a_sq`          | `0.75`        | squared amplitude of `rho1`/`rho2`, in (0, 1)                 |
//! | `channel`       | `ref3`        | `ref1`, `ref2`, `ref3`, `damping`                             |
//! | `epsilon`       | `0`           | Pauli field strength in [0, 1]                                |
//! | `p`             | `1`           | damping retention probability in [0, 1]                       |
//! | `side`          | `B`           | `A`, `B`                                                      |
//! | `hamiltonian`   | `none`        | `H`, `Hprime`, `none`, `random_product`                       |
//! | `alpha`         | `0`           | signed coupling                                               |
//! | `steps`         | `500`         | positive integer                                              |
//! | `seed`          | `42`          | unsigned 64-bit                                               |
//! | `ensemble_size` | `1`           | positive integer                                              |
//! | `record_every`  | `1`           | positive integer                                              |
//! | `output`        | stdout        | file path, `-` for stdout                                     |
//!
//! Keys that do not apply to the chosen preset (say `p` with `channel = ref3`)
//! are accepted and ignored, so a file echoing every default stays valid.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use entdyn_core::channels::PauliField;
use entdyn_core::dynamics::{ChannelPreset, ChannelSpec, DynamicsConfig, HamiltonianSpec, InitialSpec};
use entdyn_core::states::make_rho1;
use entdyn_core::SubsystemId;

pub const KEYS: [&str; 14] = [
    "initial",
    "q",
    "a_sq",
    "channel",
    "epsilon",
    "p",
    "side",
    "hamiltonian",
    "alpha",
    "steps",
    "seed",
    "ensemble_size",
    "record_every",
    "output",
];

/// Environment variable that overrides the file's `seed`.
pub const SEED_ENV: &str = "ENTDYN_SEED";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown key `{key}`{}", at_line(*line))]
    UnknownKey { key: String, line: Option<usize> },
    #[error("key `{key}` given twice{}", at_line(Some(*line)))]
    Duplicate { key: String, line: usize },
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("invalid value `{value}` for key `{key}`: {reason}")]
    Invalid { key: String, value: String, reason: String },
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

fn invalid(key: &str, value: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), value: value.to_string(), reason: reason.into() }
}

fn canonical_key(key: &str) -> Option<&'static str> {
    KEYS.iter().copied().find(|k| *k == key)
}

/// Unvalidated assignments, keyed by canonical key name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    values: BTreeMap<&'static str, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(ConfigError::Syntax { line: line_no, text: body.to_string() });
            };
            let key = key.trim();
            let canonical = canonical_key(key)
                .ok_or_else(|| ConfigError::UnknownKey { key: key.to_string(), line: Some(line_no) })?;
            if raw.values.insert(canonical, value.trim().to_string()).is_some() {
                return Err(ConfigError::Duplicate { key: key.to_string(), line: line_no });
            }
        }
        Ok(raw)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    /// Overrides (or adds) one key.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), ConfigError> {
        let canonical =
            canonical_key(key).ok_or_else(|| ConfigError::UnknownKey { key: key.to_string(), line: None })?;
        self.values.insert(canonical, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn number<T: std::str::FromStr>(&self, key: &'static str, default: T) -> Result<T, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| invalid(key, v, "not a number of the expected kind")),
        }
    }

    /// Validates every key and assembles the run description.
    pub fn build(&self) -> Result<ExperimentConfig, ConfigError> {
        let q = self.number("q", 0.6)?;
        let a_sq = self.number("a_sq", 0.75)?;
        let initial_name = self.get("initial").unwrap_or("pure_random");
        let initial = parse_initial(initial_name, q, a_sq)?;
        if matches!(initial, InitialSpec::Rho1 { .. } | InitialSpec::Rho2 { .. }) {
            make_rho1(q, a_sq).map_err(|e| core_invalid(self, e))?;
        }

        let side = match self.get("side") {
            None => SubsystemId::B,
            Some(v) => parse_side(v).ok_or_else(|| invalid("side", v, "expected A or B"))?,
        };
        let epsilon = self.number("epsilon", 0.0)?;
        let p = self.number("p", 1.0)?;
        let channel_name = self.get("channel").unwrap_or("ref3");
        let channel = match normalise(channel_name).as_str() {
            "ref1" => ChannelSpec::pauli(PauliField::Ref1, epsilon, side),
            "ref2" => ChannelSpec::pauli(PauliField::Ref2, epsilon, side),
            "ref3" => ChannelSpec::pauli(PauliField::Ref3, epsilon, side),
            "damping" => ChannelSpec::damping(p, side),
            _ => return Err(invalid("channel", channel_name, "expected ref1, ref2, ref3 or damping")),
        };
        channel.build().map_err(|e| core_invalid(self, e))?;

        let h_name = self.get("hamiltonian").unwrap_or("none");
        let hamiltonian = parse_hamiltonian(h_name)
            .ok_or_else(|| invalid("hamiltonian", h_name, "expected H, Hprime, none or random_product"))?;

        let dynamics = DynamicsConfig {
            initial,
            channel,
            hamiltonian,
            alpha: self.number("alpha", 0.0)?,
            steps: self.number("steps", 500)?,
            seed: self.number("seed", 42)?,
            ensemble_size: self.number("ensemble_size", 1)?,
            record_every: self.number("record_every", 1)?,
        };
        dynamics.check().map_err(|e| core_invalid(self, e))?;

        let output = match self.get("output") {
            None | Some("-") | Some("") => None,
            Some(path) => Some(PathBuf::from(path)),
        };
        Ok(ExperimentConfig { dynamics, output })
    }
}

/// Range failures from the core name the parameter, which is also the key.
fn core_invalid(raw: &RawConfig, e: entdyn_core::Error) -> ConfigError {
    match e {
        entdyn_core::Error::ParameterOutOfRange { name, value } => {
            let shown = raw.get(name).map(str::to_string).unwrap_or_else(|| value.to_string());
            invalid(name, &shown, "out of range")
        }
        other => invalid("initial", raw.get("initial").unwrap_or(""), other.to_string()),
    }
}

fn normalise(v: &str) -> String {
    v.trim().to_ascii_lowercase().replace('-', "_")
}

pub fn parse_side(v: &str) -> Option<SubsystemId> {
    match normalise(v).as_str() {
        "a" => Some(SubsystemId::A),
        "b" => Some(SubsystemId::B),
        _ => None,
    }
}

pub fn parse_initial(v: &str, q: f64, a_sq: f64) -> Result<InitialSpec, ConfigError> {
    Ok(match normalise(v).as_str() {
        "pure_random" | "pure" => InitialSpec::PureRandom,
        "separable_random" | "separable" => InitialSpec::SeparableRandom,
        "max_entangled_random" | "max_entangled" => InitialSpec::MaxEntangledRandom,
        "rho1" => InitialSpec::Rho1 { q, a_sq },
        "rho2" => InitialSpec::Rho2 { q, a_sq },
        "bell" => InitialSpec::Bell,
        _ => {
            return Err(invalid(
                "initial",
                v,
                "expected pure_random, separable_random, max_entangled_random, rho1, rho2 or bell",
            ))
        }
    })
}

pub fn parse_hamiltonian(v: &str) -> Option<HamiltonianSpec> {
    match normalise(v).as_str() {
        "h" => Some(HamiltonianSpec::H),
        "hprime" | "h'" | "h_prime" => Some(HamiltonianSpec::HPrime),
        "none" => Some(HamiltonianSpec::None),
        "random_product" => Some(HamiltonianSpec::RandomProduct),
        _ => None,
    }
}

pub fn initial_name(spec: &InitialSpec) -> &'static str {
    match spec {
        InitialSpec::PureRandom => "pure_random",
        InitialSpec::SeparableRandom => "separable_random",
        InitialSpec::MaxEntangledRandom => "max_entangled_random",
        InitialSpec::Rho1 { .. } => "rho1",
        InitialSpec::Rho2 { .. } => "rho2",
        InitialSpec::Bell => "bell",
        InitialSpec::Explicit(_) => "explicit",
    }
}

pub fn hamiltonian_name(spec: &HamiltonianSpec) -> &'static str {
    match spec {
        HamiltonianSpec::H => "H",
        HamiltonianSpec::HPrime => "Hprime",
        HamiltonianSpec::None => "none",
        HamiltonianSpec::RandomProduct => "random_product",
        HamiltonianSpec::Explicit(_) => "explicit",
    }
}

pub fn side_name(side: SubsystemId) -> &'static str {
    match side {
        SubsystemId::A => "A",
        SubsystemId::B => "B",
    }
}

/// `ref3(epsilon=0.01)` / `damping(p=0.05)`
pub fn channel_label(spec: &ChannelSpec) -> String {
    match spec.preset {
        ChannelPreset::Pauli { field, epsilon } => format!("{}(epsilon={epsilon})", field.name()),
        ChannelPreset::Damping { p } => format!("damping(p={p})"),
    }
}

/// A validated simulation request.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dynamics: DynamicsConfig,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Fully specified file form; parsing it back yields `self`.
    pub fn to_config_text(&self) -> String {
        let d = &self.dynamics;
        let (q, a_sq) = match d.initial {
            InitialSpec::Rho1 { q, a_sq } | InitialSpec::Rho2 { q, a_sq } => (q, a_sq),
            _ => (0.6, 0.75),
        };
        let (channel, epsilon, p) = match d.channel.preset {
            ChannelPreset::Pauli { field, epsilon } => (field.name(), epsilon, 1.0),
            ChannelPreset::Damping { p } => ("damping", 0.0, p),
        };
        let mut out = String::new();
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        line("initial", &initial_name(&d.initial));
        line("q", &q);
        line("a_sq", &a_sq);
        line("channel", &channel);
        line("epsilon", &epsilon);
        line("p", &p);
        line("side", &side_name(d.channel.side));
        line("hamiltonian", &hamiltonian_name(&d.hamiltonian));
        line("alpha", &d.alpha);
        line("steps", &d.steps);
        line("seed", &d.seed);
        line("ensemble_size", &d.ensemble_size);
        line("record_every", &d.record_every);
        let output = self.output.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
        line("output", &output);
        out
    }
}
