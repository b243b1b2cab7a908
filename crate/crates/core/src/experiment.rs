//! Physical constants, BEC coupling constants and design SNR.
//!
//! Everything is SI internally. Text inputs carry explicit unit suffixes, parsed by
//! [`parse_quantity`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analytic::{first_order_optimal_snr, max_snr_squeezed_vacuum};
use crate::error::{Error, Result};
use crate::fock::SqueezeParams;

/// Newtonian constant of gravitation, m³ kg⁻¹ s⁻² (CODATA 2018).
pub const G: f64 = 6.67430e-11;
/// Reduced Planck constant, J s (CODATA 2018).
pub const HBAR: f64 = 1.054571817e-34;
/// Speed of light, m/s.
pub const C: f64 = 299_792_458.0;
/// Vacuum permeability, N A⁻² (CODATA 2018).
pub const MU0: f64 = 1.25663706212e-6;
/// Atomic mass constant, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.66053906660e-27;
/// Bohr radius, m (CODATA 2018).
pub const BOHR_RADIUS: f64 = 5.29177210903e-11;
/// One gauss in tesla.
pub const GAUSS: f64 = 1e-4;

/// Prefactor of the full-squeezing first-order design SNR `4.9 χtN² √M`.
pub const FIRST_ORDER_DESIGN_FACTOR: f64 = 4.9;

/// Schema version accepted by [`ConstantsRegistry::from_config_str`].
pub const CONSTANTS_SCHEMA_VERSION: u32 = 1;

/// Where a stored value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Codata,
    Config,
}

/// Feshbach resonance `a_s(B) = a_bg [1 − Δ/(B − B₀)]`; lengths in m, fields in T.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeshbachParams {
    pub a_bg: f64,
    pub b0: f64,
    pub delta: f64,
}

impl FeshbachParams {
    pub fn new(a_bg: f64, b0: f64, delta: f64) -> Result<Self> {
        if delta == 0.0 || !(a_bg.is_finite() && b0.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("Feshbach width must be finite and nonzero, got {delta}")));
        }
        Ok(FeshbachParams { a_bg, b0, delta })
    }

    /// Cs-133 default with a zero crossing at 17 G: `a_bg = 1720 a₀`, `B₀ = −11.7 G`, `Δ = 28.7 G`.
    pub fn cs133_default() -> Self {
        FeshbachParams { a_bg: 1720.0 * BOHR_RADIUS, b0: -11.7 * GAUSS, delta: 28.7 * GAUSS }
    }

    /// `B₀ + Δ`.
    pub fn zero_crossing(&self) -> f64 {
        self.b0 + self.delta
    }
}

/// `a_s(B)`; `ResonancePole` at `B = B₀`.
pub fn feshbach_a_s(b: f64, p: &FeshbachParams) -> Result<f64> {
    if b == p.b0 {
        return Err(Error::ResonancePole { field: b });
    }
    Ok(p.a_bg * (1.0 - p.delta / (b - p.b0)))
}

#[derive(Clone, Debug, PartialEq)]
struct Species {
    mass: f64,
    provenance: Provenance,
    feshbach: Option<(FeshbachParams, Provenance)>,
}

/// Fundamental constants and species data. Built once, read-only afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsRegistry {
    species: BTreeMap<String, Species>,
}

impl Default for ConstantsRegistry {
    fn default() -> Self {
        let mut species = BTreeMap::new();
        let mut add = |tag: &str, u: f64, f: Option<FeshbachParams>| {
            species.insert(
                tag.to_string(),
                Species {
                    mass: u * ATOMIC_MASS_UNIT,
                    provenance: Provenance::Codata,
                    feshbach: f.map(|f| (f, Provenance::Config)),
                },
            );
        };
        add("Cs133", 132.905451961, Some(FeshbachParams::cs133_default()));
        add("Rb87", 86.909180531, None);
        add("Na23", 22.9897692820, None);
        add("H1", 1.00782503223, None);
        add("Sr88", 87.9056125, None);
        ConstantsRegistry { species }
    }
}

impl ConstantsRegistry {
    pub fn g(&self) -> f64 {
        G
    }

    pub fn hbar(&self) -> f64 {
        HBAR
    }

    pub fn c(&self) -> f64 {
        C
    }

    pub fn mu0(&self) -> f64 {
        MU0
    }

    /// Species tags, sorted.
    pub fn species(&self) -> Vec<&str> {
        self.species.keys().map(String::as_str).collect()
    }

    /// Atomic mass in kg.
    pub fn mass(&self, tag: &str) -> Result<f64> {
        self.species
            .get(tag)
            .map(|s| s.mass)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown species {tag:?}")))
    }

    pub fn mass_provenance(&self, tag: &str) -> Option<Provenance> {
        self.species.get(tag).map(|s| s.provenance)
    }

    pub fn feshbach(&self, tag: &str) -> Option<(FeshbachParams, Provenance)> {
        self.species.get(tag).and_then(|s| s.feshbach)
    }

    /// Defaults extended by a key-value file:
    ///
    /// ```text
    /// # comment
    /// schema_version = 1
    /// species.Li7 = 7.0160034366 u
    /// feshbach.Li7.a_bg = -25 bohr
    /// feshbach.Li7.b0 = 736.8 G
    /// feshbach.Li7.delta = -192.3 G
    /// ```
    ///
    /// Unknown keys, missing or wrong `schema_version`, and partial Feshbach triples are errors.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut reg = ConstantsRegistry::default();
        let mut version = None;
        let mut partial: BTreeMap<String, [Option<f64>; 3]> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Config(format!("line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let parts: Vec<&str> = key.split('.').collect();
            match parts.as_slice() {
                ["schema_version"] => {
                    let v: u32 = value.parse().map_err(|_| bad(format!("bad schema_version {value:?}")))?;
                    if v != CONSTANTS_SCHEMA_VERSION {
                        return Err(bad(format!("unsupported schema_version {v}")));
                    }
                    version = Some(v);
                }
                ["species", tag] => {
                    let mass = parse_quantity(value, Dimension::Mass).map_err(|e| bad(e.to_string()))?;
                    if !(mass > 0.0) {
                        return Err(bad(format!("mass must be positive, got {value}")));
                    }
                    let feshbach = reg.species.get(*tag).and_then(|s| s.feshbach);
                    reg.species.insert(tag.to_string(), Species { mass, provenance: Provenance::Config, feshbach });
                }
                ["feshbach", tag, field] => {
                    let (slot, dim) = match *field {
                        "a_bg" => (0, Dimension::Length),
                        "b0" => (1, Dimension::Field),
                        "delta" => (2, Dimension::Field),
                        _ => return Err(bad(format!("unknown key {key:?}"))),
                    };
                    let v = parse_quantity(value, dim).map_err(|e| bad(e.to_string()))?;
                    partial.entry(tag.to_string()).or_default()[slot] = Some(v);
                }
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        if version.is_none() {
            return Err(Error::Config("missing schema_version".into()));
        }
        for (tag, triple) in partial {
            let [Some(a), Some(b0), Some(d)] = triple else {
                return Err(Error::Config(format!("feshbach.{tag} needs a_bg, b0 and delta")));
            };
            let species = reg
                .species
                .get_mut(&tag)
                .ok_or_else(|| Error::Config(format!("feshbach.{tag} given for an unknown species")))?;
            let p = FeshbachParams::new(a, b0, d).map_err(|e| Error::Config(e.to_string()))?;
            species.feshbach = Some((p, Provenance::Config));
        }
        Ok(reg)
    }
}

/// Physical dimension expected by [`parse_quantity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Mass,
    Length,
    Time,
    Field,
}

/// Parses `"<number> <unit>"` into SI. Accepted units:
/// mass `kg`, `g`, `u`; length `m`, `mm`, `um`, `µm`, `nm`, `bohr`;
/// time `s`, `ms`, `us`; field `T`, `mT`, `G`, `gauss`.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64> {
    let text = text.trim();
    // `e` inside a number is an exponent; no unit starts with e
    let split = text
        .char_indices()
        .find(|&(_, ch)| ch.is_alphabetic() && ch != 'e' && ch != 'E')
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (num, unit) = text.split_at(split);
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse number in {text:?}")))?;
    let unit = unit.trim();
    let scale = match (dim, unit) {
        (Dimension::Mass, "kg") => 1.0,
        (Dimension::Mass, "g") => 1e-3,
        (Dimension::Mass, "u") => ATOMIC_MASS_UNIT,
        (Dimension::Length, "m") => 1.0,
        (Dimension::Length, "mm") => 1e-3,
        (Dimension::Length, "um" | "µm" | "μm") => 1e-6,
        (Dimension::Length, "nm") => 1e-9,
        (Dimension::Length, "bohr" | "a0") => BOHR_RADIUS,
        (Dimension::Time, "s") => 1.0,
        (Dimension::Time, "ms") => 1e-3,
        (Dimension::Time, "us" | "µs" | "μs") => 1e-6,
        (Dimension::Field, "T") => 1.0,
        (Dimension::Field, "mT") => 1e-3,
        (Dimension::Field, "G" | "gauss") => GAUSS,
        (_, "") => return Err(Error::Config(format!("missing unit in {text:?}"))),
        _ => return Err(Error::Config(format!("unit {unit:?} not valid for {dim:?}"))),
    };
    if !value.is_finite() {
        return Err(Error::Config(format!("non-finite value in {text:?}")));
    }
    Ok(value * scale)
}

/// `λ_QG = −√(2/π) G m²/R` for the Gaussian ground state `ψ ∝ exp(−r²/2R²)`.
pub fn lambda_qg_gaussian(m: f64, r: f64) -> f64 {
    -(2.0 / PI).sqrt() * G * m * m / r
}

/// `χtN² = √(2/π) G M² t/(ħR)`.
pub fn interaction_scale(total_mass: f64, r: f64, t: f64) -> f64 {
    (2.0 / PI).sqrt() * G * total_mass * total_mass * t / (HBAR * r)
}

/// `λ_s = √(2/π) a_s ħ²/(m R³)`.
pub fn lambda_s(a_s: f64, m: f64, r: f64) -> f64 {
    (2.0 / PI).sqrt() * a_s * HBAR * HBAR / (m * r.powi(3))
}

/// `g_s = 4πħ² a_s/m`.
pub fn g_s(a_s: f64, m: f64) -> f64 {
    4.0 * PI * HBAR * HBAR * a_s / m
}

/// Planck mass `√(ħc/G)`.
pub fn planck_mass() -> f64 {
    (HBAR * C / G).sqrt()
}

/// Planck time `√(ħG/c⁵)`.
pub fn planck_time() -> f64 {
    (HBAR * G / C.powi(5)).sqrt()
}

/// `(M/M_P)(δτ/t_P)` with `δτ = √(2/π) G M t/(R c²)`.
pub fn planck_ratio(total_mass: f64, r: f64, t: f64) -> f64 {
    let dtau = (2.0 / PI).sqrt() * G * total_mass * t / (r * C * C);
    (total_mass / planck_mass()) * (dtau / planck_time())
}

/// `round(M_total / m)`.
pub fn atoms_for_mass(total_mass: f64, species_mass: f64) -> Result<u64> {
    if !(total_mass >= 0.0 && species_mass > 0.0) {
        return Err(Error::InvalidParameter(format!("masses {total_mass}, {species_mass}")));
    }
    Ok((total_mass / species_mass).round() as u64)
}

/// Laboratory parameters of a single spherical BEC.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub species_mass: f64,
    pub atom_count: f64,
    pub radius: f64,
    pub time: f64,
    pub repetitions: u64,
    pub trap_frequency: Option<f64>,
}

impl ExperimentParams {
    pub fn new(species_mass: f64, atom_count: f64, radius: f64, time: f64, repetitions: u64) -> Result<Self> {
        let p = ExperimentParams { species_mass, atom_count, radius, time, repetitions, trap_frequency: None };
        p.validate()?;
        Ok(p)
    }

    /// `N = round(M_total/m)`.
    pub fn from_total_mass(species_mass: f64, total_mass: f64, radius: f64, time: f64, repetitions: u64) -> Result<Self> {
        let n = atoms_for_mass(total_mass, species_mass)?;
        Self::new(species_mass, n as f64, radius, time, repetitions)
    }

    /// Attaches `ω₀`, which must satisfy `R = √(ħ/(mω₀))` to 1e-9.
    pub fn with_trap_frequency(mut self, omega0: f64) -> Result<Self> {
        self.trap_frequency = Some(omega0);
        self.validate()?;
        Ok(self)
    }

    /// `R = √(ħ/(mω₀))`.
    pub fn radius_for_trap(species_mass: f64, omega0: f64) -> f64 {
        (HBAR / (species_mass * omega0)).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.species_mass) && ok(self.atom_count) && ok(self.radius) && ok(self.time) && self.repetitions > 0) {
            return Err(Error::InvalidParameter(format!("experiment parameters must be positive: {self:?}")));
        }
        if let Some(w) = self.trap_frequency {
            let r = Self::radius_for_trap(self.species_mass, w);
            if !ok(w) || ((r - self.radius) / self.radius).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "radius {} inconsistent with trap frequency {w} (expects {r})",
                    self.radius
                )));
            }
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.atom_count * self.species_mass
    }

    /// `χt = |λ_QG| t/ħ`.
    pub fn chi_t(&self) -> f64 {
        lambda_qg_gaussian(self.species_mass, self.radius).abs() * self.time / HBAR
    }

    /// `χtN²`.
    pub fn chi_t_n2(&self) -> f64 {
        self.chi_t() * self.atom_count * self.atom_count
    }
}

/// How [`design_snr`] evaluates the SNR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignMode {
    FirstOrder,
    Nonperturbative,
}

/// SNR of `M` repetitions for a squeezed vacuum of magnitude `r` probed at the optimal angle.
///
/// `r = None` means full squeezing, `sinh² r = N`. In that case `FirstOrder` is
/// `4.9 χtN² √M`; with explicit `r` it evaluates the first-order formula at the
/// optimal angle. `Nonperturbative` maximises the exact-cumulant SNR.
pub fn design_snr(p: &ExperimentParams, r: Option<f64>, mode: DesignMode) -> Result<f64> {
    p.validate()?;
    let m = p.repetitions;
    match (mode, r) {
        (DesignMode::FirstOrder, None) => Ok(FIRST_ORDER_DESIGN_FACTOR * p.chi_t_n2() * (m as f64).sqrt()),
        (DesignMode::FirstOrder, Some(r)) => first_order_optimal_snr(SqueezeParams::new(r, 0.0)?, p.chi_t(), m),
        (DesignMode::Nonperturbative, r) => {
            let r = r.unwrap_or_else(|| p.atom_count.sqrt().asinh());
            Ok(max_snr_squeezed_vacuum(SqueezeParams::new(r, 0.0)?, p.chi_t(), m)?.snr)
        }
    }
}
