//! Scenario execution: building ensembles from configs, running the
//! selected analysis, disorder ensembles, parameter sweeps, and
//! writing all artifacts.

use std::path::PathBuf;

use ndarray::Array1;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::bands::{classify_bands, edge_localization, zak_phase};
use crate::coupling::{coherent_coupling, coupling_matrices, CouplingMatrices};
use crate::dynamics::{evolve, uniform_grid, AmplitudeState};
use crate::error::{Result, RingsimError};
use crate::geometry::{
    apply_frequency_disorder, apply_rotational_disorder, build_geometry, circular_polarization,
    EmitterEnsemble, GeometrySpec,
};
use crate::hamiltonian::{assemble_effective, gaussian_drive};
use crate::runner::config::{
    resolve_output_dir, AnalysisKind, DisorderKind, DriveCenter, ScenarioConfig,
};
use crate::runner::output::{fmt, write_csv, Manifest, Table};
use crate::runner::svg;
use crate::spectrum::{diagonalize, ring_center_analytics};
use crate::steady::{steady_analysis, single_emitter_trap_rate};

/// Everything a run leaves on disk.
#[derive(Clone, Debug)]
pub struct RunArtifacts {
    pub files: Vec<PathBuf>,
    pub manifest_path: PathBuf,
    /// Headline scalar of the run (analysis-dependent).
    pub scalar: f64,
}

/// Mean/std summary of a disorder ensemble with all per-seed values.
#[derive(Clone, Debug)]
pub struct EnsembleResult {
    pub seeds: Vec<u64>,
    pub values: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

/// Run `f` over `n` derived seeds in parallel and reduce in seed order.
/// A failed realization aborts the ensemble with its seed attached.
pub fn disorder_ensemble<F>(f: F, n: usize, base_seed: u64) -> Result<EnsembleResult>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    if n < 1 {
        return Err(RingsimError::InvalidArgument(
            "ensemble needs n_realizations >= 1".into(),
        ));
    }
    let seeds: Vec<u64> = (0..n as u64).map(|i| base_seed.wrapping_add(i)).collect();
    let values: Vec<f64> = seeds
        .par_iter()
        .map(|&seed| {
            f(seed).map_err(|e| RingsimError::Realization {
                seed,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(EnsembleResult {
        seeds,
        values,
        mean,
        std,
    })
}

/// Build the configured ensemble with detuning and trap rate applied.
pub fn base_ensemble(cfg: &ScenarioConfig) -> Result<EmitterEnsemble> {
    let ens = build_geometry(&cfg.geometry)?.with_donor_acceptor_detuning(cfg.physics.delta);
    if cfg.physics.trap_rate > 0.0 {
        ens.with_trap_rate(cfg.physics.trap_rate)
    } else {
        Ok(ens)
    }
}

/// Apply the configured disorder for one realization seed; reuses the
/// base coupling matrices when only the diagonal changes.
pub fn realized(
    cfg: &ScenarioConfig,
    base: &EmitterEnsemble,
    base_couplings: &CouplingMatrices,
    seed: Option<u64>,
) -> Result<(EmitterEnsemble, CouplingMatrices)> {
    match (seed, &cfg.disorder) {
        (Some(s), Some(d)) => match d.kind {
            DisorderKind::Frequency => {
                let ens = apply_frequency_disorder(base, d.sigma, s)?;
                Ok((ens, base_couplings.clone()))
            }
            DisorderKind::Rotational => {
                let ens = apply_rotational_disorder(base, s)?;
                let c = coupling_matrices(&ens)?;
                Ok((ens, c))
            }
        },
        _ => Ok((base.clone(), base_couplings.clone())),
    }
}

/// Magnitude of the nearest-neighbor coherent coupling |J| at the
/// configured lattice spacing; the natural rate scale of a geometry.
pub fn coupling_scale(cfg: &ScenarioConfig) -> Result<f64> {
    let d = match &cfg.geometry {
        GeometrySpec::SingleRing { d, .. }
        | GeometrySpec::RingChain { d, .. }
        | GeometrySpec::RingLatticeSquare { d, .. }
        | GeometrySpec::RingLatticeHexagonal { d, .. }
        | GeometrySpec::LinearChain { d, .. }
        | GeometrySpec::Hexagonal { d, .. }
        | GeometrySpec::Honeycomb { d, .. }
        | GeometrySpec::FreePair { d } => *d,
    };
    let p = circular_polarization();
    Ok(coherent_coupling([d, 0.0, 0.0], &p, &p)?.abs())
}

fn chain_params(spec: &GeometrySpec) -> Result<(usize, f64, f64)> {
    match spec {
        GeometrySpec::RingChain { n_ring, d, d_r, .. }
        | GeometrySpec::RingLatticeSquare { n_ring, d, d_r, .. }
        | GeometrySpec::RingLatticeHexagonal { n_ring, d, d_r, .. } => Ok((*n_ring, *d, *d_r)),
        other => Err(RingsimError::WrongGeometry(format!(
            "{:?} has no ring-chain parameters",
            std::mem::discriminant(other)
        ))),
    }
}

/// Donor-initialized transport run; returns the full trace table and
/// the final transport efficiency η_t(t_max).
pub fn transport_table(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<(Table, f64)> {
    let base = base_ensemble(cfg)?;
    let base_c = coupling_matrices(&base)?;
    let (ens, c) = realized(cfg, &base, &base_c, seed)?;
    let donor = ens
        .donor_index()
        .ok_or_else(|| RingsimError::InvalidArgument("transport needs a donor".into()))?;
    let h = assemble_effective(&ens, &c)?;
    let mut amps = Array1::<C64>::zeros(ens.len());
    amps[donor] = C64::new(1.0, 0.0);
    let psi0 = AmplitudeState {
        amplitudes: amps,
        time: 0.0,
    };
    let times = uniform_grid(cfg.physics.t_max, cfg.physics.time_points);
    let trace = evolve(&h, &psi0, &times, None)?;
    let mut table = Table::new(vec![
        "t",
        "donor_pop",
        "acceptor_pop",
        "norm2",
        "eta_t",
        "radiated",
    ]);
    for i in 0..times.len() {
        table.push_row(vec![
            fmt(trace.times[i]),
            fmt(trace.donor_pop[i]),
            fmt(trace.acceptor_pop[i]),
            fmt(trace.norm2[i]),
            fmt(trace.eta[i]),
            fmt(trace.radiated[i]),
        ])?;
    }
    Ok((table, trace.final_eta()))
}

/// Band classification of the bare lattice (donor/acceptor stripped);
/// scalar is the min edge-state distance to a band edge.
pub fn bands_table(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<(Table, f64)> {
    let base = base_ensemble(cfg)?;
    let base_c = coupling_matrices(&base)?;
    let (ens, _) = realized(cfg, &base, &base_c, seed)?;
    let chain = ens.without_donor_acceptor();
    let c = coupling_matrices(&chain)?;
    let h = assemble_effective(&chain, &c)?;
    let modes = diagonalize(&h)?;
    let bands = classify_bands(&modes, &chain)?;
    let localization = edge_localization(&modes, &chain)?;
    let mut table = Table::new(vec![
        "mode_index",
        "Re_lambda",
        "decay",
        "m_abs",
        "k",
        "fidelity",
        "edge_weight",
        "corner_weight",
    ]);
    for (p, loc) in bands.points.iter().zip(localization.iter()) {
        table.push_row(vec![
            format!("{}", p.mode_index),
            fmt(p.shift),
            fmt(p.decay),
            format!("{}", p.m_abs),
            fmt(p.k),
            fmt(p.fidelity),
            fmt(p.edge_weight),
            fmt(loc.corner_weight),
        ])?;
    }
    Ok((table, bands.min_gap.unwrap_or(f64::NAN)))
}

/// Zak phase with a k-grid convergence table; scalar is the finest
/// phase.
pub fn zak_table(cfg: &ScenarioConfig) -> Result<(Table, f64)> {
    let (n_ring, d, d_r) = chain_params(&cfg.geometry)?;
    let n_k = cfg.physics.zak_k_points.max(64);
    let mut table = Table::new(vec!["n_k", "phase"]);
    let mut last = f64::NAN;
    for grid in [n_k / 2, n_k] {
        let grid = grid.max(64);
        last = zak_phase(n_ring, d, d_r, grid)?;
        table.push_row(vec![format!("{grid}"), fmt(last)])?;
    }
    Ok((table, last))
}

/// Edge/corner localization of every mode of the bare lattice; scalar
/// is the minimum bulk weight among edge-localized modes.
pub fn edges_table(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<(Table, f64)> {
    let base = base_ensemble(cfg)?;
    let base_c = coupling_matrices(&base)?;
    let (ens, _) = realized(cfg, &base, &base_c, seed)?;
    let lattice = ens.without_donor_acceptor();
    let c = coupling_matrices(&lattice)?;
    let h = assemble_effective(&lattice, &c)?;
    let modes = diagonalize(&h)?;
    let report = edge_localization(&modes, &lattice)?;
    let mut table = Table::new(vec![
        "mode_index",
        "Re_lambda",
        "decay",
        "edge_weight",
        "bulk_weight",
        "corner_weight",
        "superradiant",
    ]);
    let mut min_bulk = f64::NAN;
    for r in &report {
        if r.edge_weight > 0.5 && !(r.bulk_weight >= min_bulk) {
            min_bulk = r.bulk_weight;
        }
        table.push_row(vec![
            format!("{}", r.mode_index),
            fmt(r.shift),
            fmt(r.decay),
            fmt(r.edge_weight),
            fmt(r.bulk_weight),
            fmt(r.corner_weight),
            format!("{}", r.superradiant),
        ])?;
    }
    Ok((table, min_bulk))
}

/// Steady-state trapping scan over a Γ_T grid; scalar is the
/// normalized rate at the configured Γ_T (or the grid maximum when
/// Γ_T = 0).
pub fn steady_table(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<(Table, f64)> {
    let j_scale = coupling_scale(cfg)?;
    let grid: Vec<f64> = if !cfg.physics.trap_rates.is_empty() {
        cfg.physics.trap_rates.clone()
    } else {
        // log grid spanning 1e-2..1e1 Γ0
        (0..25)
            .map(|i| 10f64.powf(-2.0 + 3.0 * i as f64 / 24.0))
            .collect()
    };
    let base = build_geometry(&cfg.geometry)?.with_donor_acceptor_detuning(cfg.physics.delta);
    let base_c = coupling_matrices(&base)?;
    let (ens, c) = realized(cfg, &base, &base_c, seed)?;
    let center_site = match cfg.physics.drive_center {
        DriveCenter::Donor => ens.donor_index(),
        DriveCenter::Acceptor => ens.acceptor_index(),
    }
    .ok_or_else(|| RingsimError::InvalidArgument("steady scan needs a drive target".into()))?;
    let center = ens.emitters[center_site].position;
    let mut table = Table::new(vec![
        "gamma_T",
        "gamma_T_over_J",
        "trap_rate",
        "normalized_rate",
        "waist",
        "delta",
    ]);
    let mut best = f64::NAN;
    let mut at_configured = f64::NAN;
    for &trap in &grid {
        let with_trap = ens.with_trap_rate(trap)?;
        let h = {
            // trap only changes the acceptor diagonal; coupling matrices
            // are reused across the scan
            assemble_effective(&with_trap, &c)?
        };
        let drive = gaussian_drive(&with_trap, cfg.physics.rabi, cfg.physics.waist, center)?;
        let steady = steady_analysis(&h, &drive)?;
        let reference = single_emitter_trap_rate(cfg.physics.rabi, trap);
        let normalized = if reference > 0.0 {
            steady.trapped_rate / reference
        } else {
            f64::NAN
        };
        if !(normalized <= best) {
            best = normalized;
        }
        if (trap - cfg.physics.trap_rate).abs() < 1e-12 {
            at_configured = normalized;
        }
        table.push_row(vec![
            fmt(trap),
            fmt(trap / j_scale),
            fmt(steady.trapped_rate),
            fmt(normalized),
            fmt(cfg.physics.waist),
            fmt(cfg.physics.delta),
        ])?;
    }
    let scalar = if cfg.physics.trap_rate > 0.0 && at_configured.is_finite() {
        at_configured
    } else if cfg.physics.trap_rate > 0.0 {
        // configured Γ_T not on the grid: evaluate it directly
        let with_trap = ens.with_trap_rate(cfg.physics.trap_rate)?;
        let h = assemble_effective(&with_trap, &c)?;
        let drive = gaussian_drive(&with_trap, cfg.physics.rabi, cfg.physics.waist, center)?;
        let steady = steady_analysis(&h, &drive)?;
        steady.trapped_rate / single_emitter_trap_rate(cfg.physics.rabi, cfg.physics.trap_rate)
    } else {
        best
    };
    Ok((table, scalar))
}

/// Single-ring closed-form analytics; scalar is Γ_eff at Δ_sub.
pub fn analytics_table(cfg: &ScenarioConfig) -> Result<(Table, f64)> {
    let ring = build_geometry(&cfg.geometry)?;
    let a = ring_center_analytics(&ring, cfg.physics.delta_scan)?;
    let mut table = Table::new(vec![
        "n_ring",
        "ring_shift",
        "ring_decay",
        "donor_coupling_j",
        "donor_coupling_gamma",
        "delta_sub",
        "delta_sub_approx",
        "gamma_eff",
        "donor_fraction",
    ]);
    table.push_row(vec![
        format!("{}", a.n_ring),
        fmt(a.ring_shift),
        fmt(a.ring_decay),
        fmt(a.donor_coupling_j),
        fmt(a.donor_coupling_gamma),
        fmt(a.delta_sub),
        fmt(a.delta_sub_approx),
        fmt(a.gamma_eff),
        fmt(a.donor_fraction),
    ])?;
    Ok((table, a.gamma_eff))
}

/// Geometry dump table (positions, roles, rates).
pub fn geometry_table(cfg: &ScenarioConfig) -> Result<(Table, f64)> {
    let ens = base_ensemble(cfg)?;
    let mut table = Table::new(vec![
        "index",
        "x",
        "y",
        "z",
        "role",
        "detuning",
        "trap_rate",
        "ring_index",
    ]);
    for (i, e) in ens.emitters.iter().enumerate() {
        table.push_row(vec![
            format!("{i}"),
            fmt(e.position[0]),
            fmt(e.position[1]),
            fmt(e.position[2]),
            format!("{:?}", e.role).to_lowercase(),
            fmt(e.detuning),
            fmt(e.trap_rate),
            ens.ring_index[i]
                .map(|r| r.to_string())
                .unwrap_or_else(|| "-".into()),
        ])?;
    }
    let n = ens.len() as f64;
    Ok((table, n))
}

/// Coupling matrices as long-form CSV (a, b, J_ab, Gamma_ab).
pub fn coupling_table(cfg: &ScenarioConfig) -> Result<(Table, f64)> {
    let ens = base_ensemble(cfg)?;
    let c = coupling_matrices(&ens)?;
    let mut table = Table::new(vec!["a", "b", "J", "Gamma"]);
    for a in 0..ens.len() {
        for b in 0..ens.len() {
            table.push_row(vec![
                format!("{a}"),
                format!("{b}"),
                fmt(c.j[[a, b]]),
                fmt(c.gamma[[a, b]]),
            ])?;
        }
    }
    Ok((table, c.j[[0, ens.len().min(2) - 1]]))
}

fn analysis_scalar_name(kind: AnalysisKind) -> &'static str {
    match kind {
        AnalysisKind::Transport => "eta",
        AnalysisKind::Bands => "min_gap",
        AnalysisKind::Zak => "phase",
        AnalysisKind::Edges => "min_bulk_weight",
        AnalysisKind::Steady => "normalized_rate",
        AnalysisKind::Analytics => "gamma_eff",
    }
}

fn eval_analysis(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<(Table, f64)> {
    match cfg.analysis.kind {
        AnalysisKind::Transport => transport_table(cfg, seed),
        AnalysisKind::Bands => bands_table(cfg, seed),
        AnalysisKind::Zak => zak_table(cfg),
        AnalysisKind::Edges => edges_table(cfg, seed),
        AnalysisKind::Steady => steady_table(cfg, seed),
        AnalysisKind::Analytics => analytics_table(cfg),
    }
}

fn eval_scalar(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<f64> {
    eval_analysis(cfg, seed).map(|(_, s)| s)
}

/// Execute a scenario end to end and write all artifacts into the
/// resolved output directory. `label` names the artifact files;
/// `overrides` are recorded in the manifest for provenance.
pub fn run_scenario(
    cfg: &ScenarioConfig,
    label: &str,
    overrides: &[String],
    workers: Option<usize>,
) -> Result<RunArtifacts> {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RingsimError::Config(e.to_string()))?
            .install(|| run_scenario_inner(cfg, label, overrides)),
        None => run_scenario_inner(cfg, label, overrides),
    }
}

fn run_scenario_inner(
    cfg: &ScenarioConfig,
    label: &str,
    overrides: &[String],
) -> Result<RunArtifacts> {
    cfg.validate()?;
    let out_dir = resolve_output_dir(cfg);
    std::fs::create_dir_all(&out_dir)?;
    let hash = cfg.hash()?;
    let mut manifest = Manifest::new(hash.clone(), cfg.to_toml_string()?);
    manifest.overrides = overrides.to_vec();
    let mut provenance = vec![("config_hash".to_string(), hash.clone())];
    for o in overrides {
        provenance.push(("override".to_string(), o.clone()));
    }
    let mut files = Vec::new();
    let scalar_name = analysis_scalar_name(cfg.analysis.kind);
    let scalar;

    if let Some(sweep) = &cfg.sweep {
        let grid = sweep.grid()?;
        let results: Vec<(f64, f64, f64, usize)> = grid
            .par_iter()
            .map(|&value| {
                let point = cfg.with_parameter(&sweep.parameter, value)?;
                match &point.disorder {
                    Some(dis) if dis_applies(point.analysis.kind) => {
                        let ens = disorder_ensemble(
                            |seed| eval_scalar(&point, Some(seed)),
                            dis.n_realizations,
                            dis.base_seed,
                        )?;
                        Ok((value, ens.mean, ens.std, ens.values.len()))
                    }
                    _ => Ok((value, eval_scalar(&point, None)?, 0.0, 1)),
                }
            })
            .collect::<Result<_>>()?;
        let mut table = Table::new(vec![
            sweep.parameter.clone(),
            scalar_name.to_string(),
            format!("{scalar_name}_std"),
            "n_realizations".to_string(),
        ]);
        for (v, mean, std, n) in &results {
            table.push_row(vec![fmt(*v), fmt(*mean), fmt(*std), format!("{n}")])?;
        }
        let csv = out_dir.join(format!("{label}_sweep.csv"));
        write_csv(&csv, &table, &provenance)?;
        files.push(csv);
        if cfg.output.svg {
            let plot = out_dir.join(format!("{label}_sweep.svg"));
            let pts: Vec<(f64, f64)> = results.iter().map(|r| (r.0, r.1)).collect();
            svg::line_plot(
                &plot,
                label,
                &sweep.parameter,
                scalar_name,
                &[(scalar_name.to_string(), pts)],
            )?;
            files.push(plot);
        }
        scalar = results.last().map(|r| r.1).unwrap_or(f64::NAN);
        if let Some(d) = &cfg.disorder {
            manifest.seeds = (0..d.n_realizations as u64)
                .map(|i| d.base_seed.wrapping_add(i))
                .collect();
        }
    } else {
        // single point: detail table from the clean system (or the
        // first realization when disorder is configured), plus an
        // ensemble summary if disorder is present
        let detail_seed = cfg.disorder.as_ref().map(|d| d.base_seed);
        let (table, point_scalar) = eval_analysis(cfg, detail_seed)?;
        let csv = out_dir.join(format!("{label}.csv"));
        write_csv(&csv, &table, &provenance)?;
        files.push(csv);
        if cfg.output.svg && cfg.analysis.kind == AnalysisKind::Transport {
            let plot = out_dir.join(format!("{label}.svg"));
            let t_idx = 0;
            let series: Vec<(String, Vec<(f64, f64)>)> = [(1, "donor_pop"), (2, "acceptor_pop"), (4, "eta_t")]
                .iter()
                .map(|&(col, name)| {
                    (
                        name.to_string(),
                        table
                            .rows
                            .iter()
                            .map(|r| {
                                (
                                    r[t_idx].parse().unwrap_or(f64::NAN),
                                    r[col].parse().unwrap_or(f64::NAN),
                                )
                            })
                            .collect(),
                    )
                })
                .collect();
            svg::line_plot(&plot, label, "t", "population", &series)?;
            files.push(plot);
        }
        match &cfg.disorder {
            Some(d) if dis_applies(cfg.analysis.kind) => {
                let ens = disorder_ensemble(
                    |seed| eval_scalar(cfg, Some(seed)),
                    d.n_realizations,
                    d.base_seed,
                )?;
                let mut summary = Table::new(vec!["seed", scalar_name]);
                for (s, v) in ens.seeds.iter().zip(ens.values.iter()) {
                    summary.push_row(vec![format!("{s}"), fmt(*v)])?;
                }
                let mut prov = provenance.clone();
                prov.push(("mean".to_string(), fmt(ens.mean)));
                prov.push(("std".to_string(), fmt(ens.std)));
                let csv = out_dir.join(format!("{label}_ensemble.csv"));
                write_csv(&csv, &summary, &prov)?;
                files.push(csv);
                manifest.seeds = ens.seeds.clone();
                scalar = ens.mean;
            }
            _ => scalar = point_scalar,
        }
    }

    manifest.files = files.clone();
    let manifest_path = out_dir.join(format!("{label}_manifest.json"));
    manifest.write(&manifest_path)?;
    Ok(RunArtifacts {
        files,
        manifest_path,
        scalar,
    })
}

/// Disorder only affects analyses that depend on the realized lattice.
fn dis_applies(kind: AnalysisKind) -> bool {
    !matches!(kind, AnalysisKind::Zak | AnalysisKind::Analytics)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transport_cfg(dir: &std::path::Path) -> ScenarioConfig {
        ScenarioConfig::from_toml_str(&format!(
            r#"
[geometry]
kind = "ring_chain"
n_ring = 6
rings = 3
d = 0.08
d_r = 0.07

[physics]
trap_rate = 2.0
t_max = 30.0
time_points = 61

[analysis]
kind = "transport"

[output]
directory = "{}"
"#,
            dir.display()
        ))
        .unwrap()
    }

    #[test]
    fn transport_scenario_writes_artifacts() {
        let dir = std::env::temp_dir().join("ringsim_scenario_transport");
        let cfg = transport_cfg(&dir);
        let run = run_scenario(&cfg, "run", &[], Some(2)).unwrap();
        assert!(run.files.iter().all(|f| f.exists()));
        assert!(run.manifest_path.exists());
        assert!(run.scalar > 0.0 && run.scalar < 1.0);
        let text = std::fs::read_to_string(&run.files[0]).unwrap();
        assert!(text.contains("t,donor_pop,acceptor_pop,norm2,eta_t,radiated"));
    }

    #[test]
    fn repeated_runs_are_byte_identical() {
        let dir = std::env::temp_dir().join("ringsim_scenario_repeat");
        let mut cfg = transport_cfg(&dir);
        cfg.disorder = Some(crate::runner::config::DisorderConfig {
            kind: DisorderKind::Frequency,
            sigma: 1.0,
            n_realizations: 4,
            base_seed: 11,
        });
        let a = run_scenario(&cfg, "rep", &[], Some(2)).unwrap();
        let first: Vec<Vec<u8>> = a.files.iter().map(|f| std::fs::read(f).unwrap()).collect();
        let b = run_scenario(&cfg, "rep", &[], Some(3)).unwrap();
        for (f, bytes) in b.files.iter().zip(first.iter()) {
            assert_eq!(&std::fs::read(f).unwrap(), bytes, "{}", f.display());
        }
    }

    #[test]
    fn sweep_rows_follow_grid_order() {
        let dir = std::env::temp_dir().join("ringsim_scenario_sweep");
        let mut cfg = transport_cfg(&dir);
        cfg.sweep = Some(crate::runner::config::SweepConfig {
            parameter: "trap_rate".into(),
            values: vec![4.0, 1.0, 2.0], // deliberately unsorted
            start: None,
            stop: None,
            points: None,
            log: false,
        });
        let run = run_scenario(&cfg, "sw", &[], Some(2)).unwrap();
        let text = std::fs::read_to_string(&run.files[0]).unwrap();
        let rows: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("trap_rate"))
            .collect();
        assert!(rows[0].starts_with("4,"));
        assert!(rows[1].starts_with("1,"));
        assert!(rows[2].starts_with("2,"));
    }

    #[test]
    fn zero_sigma_ensemble_has_zero_std() {
        let dir = std::env::temp_dir().join("ringsim_scenario_sigma0");
        let mut cfg = transport_cfg(&dir);
        cfg.disorder = Some(crate::runner::config::DisorderConfig {
            kind: DisorderKind::Frequency,
            sigma: 0.0,
            n_realizations: 3,
            base_seed: 5,
        });
        let run = run_scenario(&cfg, "s0", &[], Some(2)).unwrap();
        let ensemble = run
            .files
            .iter()
            .find(|f| f.to_string_lossy().contains("ensemble"))
            .unwrap();
        let text = std::fs::read_to_string(ensemble).unwrap();
        let std_line = text
            .lines()
            .find(|l| l.starts_with("# std = "))
            .expect("std provenance line");
        let std: f64 = std_line.trim_start_matches("# std = ").parse().unwrap();
        assert!(std < 1e-12, "std = {std}");
        // all realizations identical without randomness
        let values: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("seed"))
            .map(|l| l.split(',').nth(1).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn ensemble_reports_failing_seed() {
        let res = disorder_ensemble(
            |seed| {
                if seed == 8 {
                    Err(RingsimError::NonFinite("boom".into()))
                } else {
                    Ok(1.0)
                }
            },
            5,
            6,
        );
        match res {
            Err(RingsimError::Realization { seed, .. }) => assert_eq!(seed, 8),
            other => panic!("expected realization failure, got {other:?}"),
        }
    }

    #[test]
    fn geometry_and_coupling_tables() {
        let dir = std::env::temp_dir().join("ringsim_scenario_geom");
        let cfg = transport_cfg(&dir);
        let (geom, n) = geometry_table(&cfg).unwrap();
        assert_eq!(n as usize, 20); // 3 rings of 6 + donor + acceptor
        assert_eq!(geom.rows.len(), 20);
        let (coup, _) = coupling_table(&cfg).unwrap();
        assert_eq!(coup.rows.len(), 400);
    }
}
