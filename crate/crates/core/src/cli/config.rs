//! JSON run configurations. Every object rejects unknown keys and every file
//! carries `schema_version`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::fock::{
    cat_state, coherent_state, fock_state, squeezed_coherent_state, vacuum, yurke_stoler_state, PureState,
    SqueezeParams,
};

/// Version accepted by all run configurations.
pub const SCHEMA_VERSION: u32 = 1;

/// `[re, im]`.
pub type ComplexPair = [f64; 2];

fn c(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Initial single-mode state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Vacuum,
    Fock { n: usize },
    Coherent { alpha: ComplexPair },
    Squeezed {
        #[serde(default)]
        alpha: ComplexPair,
        r: f64,
        #[serde(default)]
        theta: f64,
    },
    Cat { alpha: ComplexPair, phase: f64 },
    YurkeStoler { alpha: ComplexPair },
}

impl StateSpec {
    pub fn build(&self, dim: usize) -> Result<PureState> {
        match *self {
            StateSpec::Vacuum => vacuum(dim),
            StateSpec::Fock { n } => fock_state(n, dim),
            StateSpec::Coherent { alpha } => coherent_state(c(alpha), dim),
            StateSpec::Squeezed { alpha, r, theta } => squeezed_coherent_state(c(alpha), SqueezeParams::new(r, theta)?, dim),
            StateSpec::Cat { alpha, phase } => cat_state(c(alpha), phase, dim),
            StateSpec::YurkeStoler { alpha } => yurke_stoler_state(c(alpha), dim),
        }
    }
}

/// `steps` evenly spaced points from `start` to `stop` inclusive; `steps = 1` gives `start`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::Config("grid bounds must be finite".into()));
        }
        Ok(match self.steps {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n).map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64).collect(),
        })
    }
}

fn default_dim() -> usize {
    60
}

fn default_angles() -> usize {
    8
}

fn default_true() -> bool {
    true
}

fn default_species() -> String {
    "Cs133".into()
}

fn default_nodes() -> usize {
    crate::channels::DEFAULT_HULL_NODES
}

fn default_pairs() -> Vec<[usize; 2]> {
    vec![[0, 1], [0, 2], [1, 3]]
}

/// `evolve`: Kerr (quantum gravity) against a phase channel (classical gravity).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub schema_version: u32,
    pub state: StateSpec,
    #[serde(default = "default_dim")]
    pub dim: usize,
    /// Kerr rate `χ`.
    pub chi: f64,
    /// Linear frequency `ω` shared by both models.
    #[serde(default)]
    pub omega: f64,
    /// Extra phase-channel rate of the classical model (`γ_CG/ħ − ω`).
    #[serde(default)]
    pub cg_rate: f64,
    pub times: Grid,
    /// Number of equally spaced quadrature angles in `[0, π)`.
    #[serde(default = "default_angles")]
    pub angles: usize,
    /// Report quadratures in the frame co-rotating with the linear phase.
    #[serde(default = "default_true")]
    pub rotating_frame: bool,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            schema_version: SCHEMA_VERSION,
            state: StateSpec::Coherent { alpha: [2.0, 0.0] },
            dim: default_dim(),
            chi: 1.0,
            omega: 0.0,
            cg_rate: 1.0,
            times: Grid { start: 0.0, stop: 0.2, steps: 11 },
            angles: default_angles(),
            rotating_frame: true,
        }
    }
}

/// Squeezing magnitude of a design row: `"full"` (`sinh² r = N`) or a number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Squeezing {
    Named(String),
    Value(f64),
}

impl Squeezing {
    pub fn value(&self) -> Result<Option<f64>> {
        match self {
            Squeezing::Named(s) if s == "full" => Ok(None),
            Squeezing::Named(s) => Err(Error::Config(format!("squeezing must be \"full\" or a number, got {s:?}"))),
            Squeezing::Value(r) if *r >= 0.0 => Ok(Some(*r)),
            Squeezing::Value(r) => Err(Error::Config(format!("squeezing must be non-negative, got {r}"))),
        }
    }
}

/// Which SNR columns `design` fills.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignModes {
    FirstOrder,
    Nonperturbative,
    #[default]
    Both,
}

/// `design`: SNR over the Cartesian product of the listed values. Quantities
/// carry units, e.g. `"1e-15 kg"`, `"200 um"`, `"2 s"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignConfig {
    pub schema_version: u32,
    #[serde(default = "default_species")]
    pub species: String,
    /// Optional key-value constants file extending the built-in species table.
    #[serde(default)]
    pub constants_file: Option<String>,
    #[serde(default)]
    pub total_mass: Vec<String>,
    #[serde(default)]
    pub radius: Vec<String>,
    #[serde(default)]
    pub time: Vec<String>,
    #[serde(default)]
    pub repetitions: Vec<u64>,
    #[serde(default)]
    pub squeezing: Vec<Squeezing>,
    #[serde(default)]
    pub modes: DesignModes,
    /// Prepend the two reference rows (1e-15 kg and 1e-14 kg at 200 µm, 2 s, 40000 runs).
    #[serde(default = "default_true")]
    pub include_anchors: bool,
}

impl Default for DesignConfig {
    fn default() -> Self {
        DesignConfig {
            schema_version: SCHEMA_VERSION,
            species: default_species(),
            constants_file: None,
            total_mass: Vec::new(),
            radius: Vec::new(),
            time: Vec::new(),
            repetitions: Vec::new(),
            squeezing: Vec::new(),
            modes: DesignModes::Both,
            include_anchors: true,
        }
    }
}

/// `wigner`: Wigner function of a state, optionally after Kerr evolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerConfig {
    pub schema_version: u32,
    pub state: StateSpec,
    #[serde(default = "default_dim")]
    pub dim: usize,
    /// Kerr evolution `χt` applied before evaluation.
    #[serde(default)]
    pub kerr_chi_t: f64,
    pub x: Grid,
    pub p: Grid,
}

impl Default for WignerConfig {
    fn default() -> Self {
        WignerConfig {
            schema_version: SCHEMA_VERSION,
            state: StateSpec::YurkeStoler { alpha: [2.0, 0.0] },
            dim: default_dim(),
            kerr_chi_t: 0.0,
            x: Grid { start: -8.0, stop: 8.0, steps: 161 },
            p: Grid { start: -8.0, stop: 8.0, steps: 161 },
        }
    }
}

/// Couplings `(λ_R, λ_I, κ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Couplings {
    pub lambda_r: f64,
    pub lambda_i: f64,
    pub kappa_geom: f64,
}

/// Free rates `κ_RR, κ_IR, κ_II`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rates {
    pub kappa_rr: f64,
    pub kappa_ir: f64,
    pub kappa_ii: f64,
}

/// Channel coefficients: either couplings or free rates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelConfig {
    Couplings(Couplings),
    Rates(Rates),
}

impl ChannelConfig {
    pub fn spec(&self) -> Result<ChannelSpec> {
        match *self {
            ChannelConfig::Couplings(c) => ChannelSpec::from_couplings(c.lambda_r, c.lambda_i, c.kappa_geom),
            ChannelConfig::Rates(r) => ChannelSpec::direct(r.kappa_rr, r.kappa_ir, r.kappa_ii),
        }
    }
}

/// `master`: master-equation evolution, with the Gaussian-mixture solution alongside
/// when the channel is given by couplings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasterConfig {
    pub schema_version: u32,
    pub state: StateSpec,
    #[serde(default = "default_dim")]
    pub dim: usize,
    pub channel: ChannelConfig,
    pub times: Grid,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_angles")]
    pub angles: usize,
    /// Off-diagonal elements `|ρ_mn|` to report.
    #[serde(default = "default_pairs")]
    pub coherences: Vec<[usize; 2]>,
}

impl Default for MasterConfig {
    fn default() -> Self {
        MasterConfig {
            schema_version: SCHEMA_VERSION,
            state: StateSpec::Coherent { alpha: [1.0, 0.0] },
            dim: 20,
            channel: ChannelConfig::Couplings(Couplings { lambda_r: 1.0, lambda_i: 0.0, kappa_geom: 1.0 }),
            times: Grid { start: 0.0, stop: 1.0, steps: 11 },
            nodes: default_nodes(),
            angles: default_angles(),
            coherences: default_pairs(),
        }
    }
}

/// Simulated homodyne records for `snr`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    /// Samples per angle.
    pub count: usize,
    /// Fock dimension of the sampled state.
    #[serde(default = "default_dim")]
    pub dim: usize,
}

/// `snr`: κ₄, Var(k₄) and SNR of a Kerr-evolved squeezed coherent state over angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnrConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub alpha: ComplexPair,
    pub r: f64,
    #[serde(default)]
    pub theta: f64,
    pub chi_t: f64,
    pub repetitions: u64,
    pub phi: Grid,
    /// Also maximise over the angle (squeezed vacuum only).
    #[serde(default)]
    pub optimize: bool,
    #[serde(default)]
    pub sampling: Option<SamplingConfig>,
}

impl Default for SnrConfig {
    fn default() -> Self {
        SnrConfig {
            schema_version: SCHEMA_VERSION,
            alpha: [0.0, 0.0],
            r: 1.0,
            theta: 0.0,
            chi_t: 1e-3,
            repetitions: 10_000,
            phi: Grid { start: 0.0, stop: std::f64::consts::PI, steps: 37 },
            optimize: true,
            sampling: None,
        }
    }
}

/// Parses a configuration and checks its schema version.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, version_of: impl Fn(&T) -> u32) -> Result<T> {
    let v: T = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let found = version_of(&v);
    if found != SCHEMA_VERSION {
        return Err(Error::Config(format!("schema_version {found} not supported (expected {SCHEMA_VERSION})")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let ok = r#"{"schema_version": 1, "state": {"kind": "coherent", "alpha": [1, 0]}, "chi": 1, "times": {"start": 0, "stop": 1, "steps": 3}}"#;
        assert!(parse::<EvolveConfig>(ok, |c| c.schema_version).is_ok());
        let extra = ok.replace("\"chi\"", "\"bogus\": 1, \"chi\"");
        assert!(matches!(parse::<EvolveConfig>(&extra, |c| c.schema_version), Err(Error::Config(_))));
        let nested = ok.replace("\"alpha\": [1, 0]", "\"alpha\": [1, 0], \"r\": 2");
        assert!(parse::<EvolveConfig>(&nested, |c| c.schema_version).is_err());
        let old = ok.replace("\"schema_version\": 1", "\"schema_version\": 0");
        assert!(parse::<EvolveConfig>(&old, |c| c.schema_version).is_err());
        let missing = ok.replace("\"schema_version\": 1,", "");
        assert!(parse::<EvolveConfig>(&missing, |c| c.schema_version).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(Grid { start: 0.0, stop: 1.0, steps: 3 }.points().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(Grid { start: 2.0, stop: 9.0, steps: 0 }.points().unwrap().is_empty());
        assert_eq!(Grid { start: 2.0, stop: 9.0, steps: 1 }.points().unwrap(), vec![2.0]);
    }

    #[test]
    fn channel_forms() {
        let a: ChannelConfig = serde_json::from_str(r#"{"lambda_r": 1, "lambda_i": 0, "kappa_geom": 1}"#).unwrap();
        assert!(matches!(a, ChannelConfig::Couplings(_)));
        let b: ChannelConfig = serde_json::from_str(r#"{"kappa_rr": 1, "kappa_ir": 0, "kappa_ii": 0}"#).unwrap();
        assert!(matches!(b, ChannelConfig::Rates(_)));
        assert!(serde_json::from_str::<ChannelConfig>(r#"{"kappa_rr": 1, "kappa_ir": 0, "kappa_ii": 0, "x": 1}"#).is_err());
        assert!(serde_json::from_str::<ChannelConfig>(r#"{"lambda_r": 1, "lambda_i": 0, "kappa_geom": 1, "kappa_rr": 1}"#).is_err());
    }
}
