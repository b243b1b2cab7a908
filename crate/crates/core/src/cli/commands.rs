//! One function per subcommand, each turning a configuration into an [`Artifact`].

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::config::{ChannelConfig, DesignConfig, DesignModes, EvolveConfig, MasterConfig, SnrConfig, WignerConfig};
use super::output::{Artifact, Cell, Table};
use crate::acceptance::Outcome;
use crate::analytic::{max_snr_squeezed_vacuum, working_precision, KerrMomentTable};
use crate::channels::{default_angles, gaussianity_report, hull_evolve, master_evolve};
use crate::cumulants::{k_statistics, quadrature_cumulants, snr_squeezed_vacuum_first_order};
use crate::error::{Error, Result};
use crate::experiment::{design_snr, parse_quantity, ConstantsRegistry, DesignMode, Dimension, ExperimentParams};
use crate::fock::{
    kerr_evolve, phase_rotate, sample_quadrature, squeezed_coherent_state, wigner, KerrParams, QuadratureAngle,
    SqueezeParams, WIGNER_CONVENTION,
};
use crate::seed::child_seed;

/// Cumulant magnitude below which a state counts as Gaussian in `master`.
pub const GAUSSIANITY_TOLERANCE: f64 = 1e-8;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn positive_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Config("dim must be positive".into()));
    }
    Ok(())
}

pub fn evolve(cfg: &EvolveConfig) -> Result<Artifact> {
    positive_dim(cfg.dim)?;
    let psi0 = cfg.state.build(cfg.dim)?;
    let kerr = KerrParams::new(cfg.chi, cfg.omega)?;
    let angles = default_angles(cfg.angles);
    let mut table = Table::new(["model", "t", "phi", "kappa3", "kappa4", "mean_n", "fidelity"]);
    for t in cfg.times.points()? {
        let models = [
            ("qg", kerr_evolve(&psi0, &kerr, t), cfg.omega * t),
            ("cg", phase_rotate(&psi0, (cfg.omega + cfg.cg_rate) * t), (cfg.omega + cfg.cg_rate) * t),
        ];
        for (name, psi, frame) in models {
            let shift = if cfg.rotating_frame { frame } else { 0.0 };
            let mean_n = psi.mean_photon_number();
            let fidelity = psi.fidelity(&psi0);
            for phi in &angles {
                let k = quadrature_cumulants(&psi, QuadratureAngle::new(phi.radians() - shift), 4)?;
                table.push(vec![
                    name.into(),
                    t.into(),
                    phi.radians().into(),
                    k.get(3).into(),
                    k.get(4).into(),
                    mean_n.into(),
                    fidelity.into(),
                ]);
            }
        }
    }
    let mut metadata = Map::new();
    metadata.insert("quadrature".into(), json!("q = a e^{-i phi} + a^dag e^{i phi}, vacuum variance 1"));
    metadata.insert("tail_mass".into(), json!(psi0.tail_mass()));
    Ok(Artifact { command: "evolve", table, config: to_value(cfg), metadata })
}

const ANCHORS: [(&str, f64); 2] = [("anchor_1e-15kg", 1e-15), ("anchor_1e-14kg", 1e-14)];

struct DesignRow {
    label: String,
    total_mass: f64,
    radius: f64,
    time: f64,
    repetitions: u64,
    squeezing: Option<f64>,
}

pub fn design(cfg: &DesignConfig) -> Result<Artifact> {
    let registry = match &cfg.constants_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read constants file {path}: {e}")))?;
            ConstantsRegistry::from_config_str(&text)?
        }
        None => ConstantsRegistry::default(),
    };
    let species_mass = registry.mass(&cfg.species).map_err(|e| Error::Config(e.to_string()))?;
    let quantities = |list: &[String], dim| -> Result<Vec<f64>> {
        list.iter().map(|s| parse_quantity(s, dim).map_err(|e| Error::Config(e.to_string()))).collect()
    };
    let masses = quantities(&cfg.total_mass, Dimension::Mass)?;
    let radii = quantities(&cfg.radius, Dimension::Length)?;
    let times = quantities(&cfg.time, Dimension::Time)?;
    let squeezing = cfg.squeezing.iter().map(|s| s.value()).collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    if cfg.include_anchors {
        for (label, mass) in ANCHORS {
            rows.push(DesignRow {
                label: label.into(),
                total_mass: mass,
                radius: 200e-6,
                time: 2.0,
                repetitions: 40_000,
                squeezing: None,
            });
        }
    }
    for &total_mass in &masses {
        for &radius in &radii {
            for &time in &times {
                for &repetitions in &cfg.repetitions {
                    for &sq in &squeezing {
                        let label = format!("sweep_{}", rows.len());
                        rows.push(DesignRow { label, total_mass, radius, time, repetitions, squeezing: sq });
                    }
                }
            }
        }
    }

    let evaluated = rows
        .par_iter()
        .map(|row| -> Result<Vec<Cell>> {
            let p = ExperimentParams::from_total_mass(species_mass, row.total_mass, row.radius, row.time, row.repetitions)
                .map_err(|e| Error::Config(format!("{}: {e}", row.label)))?;
            let r = row.squeezing.unwrap_or_else(|| p.atom_count.sqrt().asinh());
            let first = match cfg.modes {
                DesignModes::Nonperturbative => None,
                _ => Some(design_snr(&p, row.squeezing, DesignMode::FirstOrder)?),
            };
            let exact = match cfg.modes {
                DesignModes::FirstOrder => None,
                _ => Some(design_snr(&p, row.squeezing, DesignMode::Nonperturbative)?),
            };
            Ok(vec![
                row.label.as_str().into(),
                row.total_mass.into(),
                row.radius.into(),
                row.time.into(),
                row.repetitions.into(),
                p.atom_count.into(),
                r.into(),
                p.chi_t_n2().into(),
                first.into(),
                exact.into(),
            ])
        })
        .collect::<Vec<_>>();

    let mut table = Table::new([
        "label",
        "total_mass_kg",
        "radius_m",
        "time_s",
        "repetitions",
        "atoms",
        "r",
        "chi_t_n2",
        "snr_first_order",
        "snr_nonperturbative",
    ]);
    for row in evaluated {
        table.push(row?);
    }
    let mut metadata = Map::new();
    metadata.insert("species_mass_kg".into(), json!(species_mass));
    metadata.insert(
        "mass_provenance".into(),
        to_value(&registry.mass_provenance(&cfg.species)),
    );
    Ok(Artifact { command: "design", table, config: to_value(cfg), metadata })
}

pub fn wigner_cmd(cfg: &WignerConfig) -> Result<Artifact> {
    positive_dim(cfg.dim)?;
    let mut psi = cfg.state.build(cfg.dim)?;
    if cfg.kerr_chi_t != 0.0 {
        psi = kerr_evolve(&psi, &KerrParams::new(1.0, 0.0)?, cfg.kerr_chi_t);
    }
    let xs = cfg.x.points()?;
    let ps = cfg.p.points()?;
    let grid = wigner(&psi, &xs, &ps);
    let mut table = Table::new(["x", "p", "w"]);
    for (i, &x) in grid.x_axis.iter().enumerate() {
        for (j, &p) in grid.p_axis.iter().enumerate() {
            table.push(vec![x.into(), p.into(), grid.values[i][j].into()]);
        }
    }
    let mut metadata = Map::new();
    metadata.insert("convention".into(), json!(WIGNER_CONVENTION));
    if xs.len() > 1 && ps.len() > 1 {
        metadata.insert("integral".into(), json!(grid.integral()));
    }
    if !xs.is_empty() && !ps.is_empty() {
        metadata.insert("min".into(), json!(grid.min()));
        metadata.insert("max".into(), json!(grid.max()));
    }
    Ok(Artifact { command: "wigner", table, config: to_value(cfg), metadata })
}

pub fn master(cfg: &MasterConfig) -> Result<Artifact> {
    positive_dim(cfg.dim)?;
    for &[m, n] in &cfg.coherences {
        if m >= cfg.dim || n >= cfg.dim {
            return Err(Error::Config(format!("coherence ({m}, {n}) outside dim {}", cfg.dim)));
        }
    }
    let spec = cfg.channel.spec().map_err(|e| Error::Config(e.to_string()))?;
    let couplings = match cfg.channel {
        ChannelConfig::Couplings(c) => Some(c),
        ChannelConfig::Rates(_) => None,
    };
    let rho0 = cfg.state.build(cfg.dim)?.to_mixed();
    let angles = default_angles(cfg.angles);

    let mut columns: Vec<String> = vec!["t".into(), "trace".into()];
    columns.extend(cfg.coherences.iter().map(|[m, n]| format!("abs_rho_{m}_{n}")));
    columns.extend(["max_abs_kappa3", "max_abs_kappa4", "non_gaussian"].map(String::from));
    if couplings.is_some() {
        columns.push("hull_max_diff".into());
    }
    let mut table = Table::new(columns);
    for t in cfg.times.points()? {
        if t < 0.0 {
            return Err(Error::Config(format!("negative time {t}")));
        }
        let rho = master_evolve(&rho0, &spec, t);
        let mut row: Vec<Cell> = vec![t.into(), rho.trace().into()];
        row.extend(cfg.coherences.iter().map(|&[m, n]| Cell::from(rho.get(m, n).norm())));
        let report = gaussianity_report(&rho.normalized(), &angles, GAUSSIANITY_TOLERANCE)?;
        row.extend([report.max_abs_kappa3.into(), report.max_abs_kappa4.into(), report.non_gaussian.into()]);
        if let Some(c) = couplings {
            let hull = hull_evolve(&rho0, c.lambda_r, c.lambda_i, c.kappa_geom, t, cfg.nodes)?;
            row.push(hull.max_abs_diff(&rho).into());
        }
        table.push(row);
    }
    let mut metadata = Map::new();
    metadata.insert("kappa_rr".into(), json!(spec.kappa_rr));
    metadata.insert("kappa_ir".into(), json!(spec.kappa_ir));
    metadata.insert("kappa_ii".into(), json!(spec.kappa_ii));
    metadata.insert("consistent".into(), json!(spec.consistent));
    metadata.insert("gaussianity_tolerance".into(), json!(GAUSSIANITY_TOLERANCE));
    Ok(Artifact { command: "master", table, config: to_value(cfg), metadata })
}

pub fn snr(cfg: &SnrConfig, seed: u64) -> Result<Artifact> {
    let alpha = Complex64::new(cfg.alpha[0], cfg.alpha[1]);
    let xi = SqueezeParams::new(cfg.r, cfg.theta).map_err(|e| Error::Config(e.to_string()))?;
    if cfg.repetitions < 4 {
        return Err(Error::Config("repetitions must be at least 4".into()));
    }
    let vacuum_input = alpha == Complex64::new(0.0, 0.0);
    if cfg.optimize && !vacuum_input {
        return Err(Error::Config("optimize is only available for squeezed vacuum (alpha = 0)".into()));
    }
    let prec = working_precision(alpha.norm_sqr() + xi.photons(), 8);
    let moments = KerrMomentTable::new(alpha, xi, cfg.chi_t, 8, prec)?;
    let phis = cfg.phi.points()?;

    let sampled = match cfg.sampling {
        Some(s) => {
            positive_dim(s.dim)?;
            let psi = squeezed_coherent_state(alpha, xi, s.dim)?;
            let psi = kerr_evolve(&psi, &KerrParams::new(1.0, 0.0)?, cfg.chi_t);
            let mut out = Vec::with_capacity(phis.len());
            for (i, &phi) in phis.iter().enumerate() {
                let set = sample_quadrature(&psi, QuadratureAngle::new(phi), s.count, child_seed(seed, i as u64))?;
                out.push(k_statistics(&set)?.k4);
            }
            Some(out)
        }
        None => None,
    };

    let mut columns = vec!["phi", "nu", "kappa4", "var_k4", "snr", "snr_first_order"];
    if sampled.is_some() {
        columns.push("k4_sampled");
    }
    let mut table = Table::new(columns);
    for (i, &phi) in phis.iter().enumerate() {
        let nu = 2.0 * phi - cfg.theta;
        let (k4, var, s) = moments.snr(phi, cfg.repetitions)?;
        let first = vacuum_input.then(|| snr_squeezed_vacuum_first_order(cfg.r, nu, cfg.chi_t, cfg.repetitions));
        let mut row: Vec<Cell> = vec![phi.into(), nu.into(), k4.into(), var.into(), s.into(), first.into()];
        if let Some(k) = &sampled {
            row.push(k[i].into());
        }
        table.push(row);
    }
    let mut metadata = Map::new();
    metadata.insert("precision_bits".into(), json!(prec));
    if cfg.optimize {
        let best = max_snr_squeezed_vacuum(xi, cfg.chi_t, cfg.repetitions)?;
        metadata.insert(
            "optimum".into(),
            json!({
                "phi": best.phi,
                "nu": best.nu,
                "kappa4": best.kappa4,
                "var_k4": best.var_k4,
                "snr": best.snr,
                "snr_per_sqrt_m": best.snr_per_sqrt_m,
            }),
        );
    }
    Ok(Artifact { command: "snr", table, config: to_value(cfg), metadata })
}

/// Table of acceptance outcomes. Elapsed times stay out of the files so reruns match.
pub fn acceptance_table(outcomes: &[Outcome]) -> Table {
    let mut table = Table::new(["id", "title", "passed", "detail"]);
    for o in outcomes {
        table.push(vec![o.id.into(), o.title.into(), o.passed.into(), o.detail.as_str().into()]);
    }
    table
}
