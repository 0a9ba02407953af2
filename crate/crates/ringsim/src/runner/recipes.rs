//! Bundled scenario recipes: canned parameter sets for the headline
//! results (transport thresholds, band topology, disorder robustness,
//! steady-state trapping, Zeno scaling, corner states). Every recipe is
//! fully deterministic: fixed seeds, fixed grids, stable row order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::bands::optimal_trapping;
use crate::coupling::{coherent_coupling, coupling_matrices};
use crate::error::{Result, RingsimError};
use crate::geometry::{circular_polarization, ring_radius, GeometrySpec};
use crate::runner::config::{DisorderConfig, DisorderKind, ScenarioConfig};
use crate::runner::output::{fmt, write_csv, Manifest, Table};
use crate::runner::scenario::{
    disorder_ensemble, run_scenario, transport_table, RunArtifacts,
};
use crate::steady::{single_emitter_trap_rate, steady_analysis};

/// All bundled recipe identifiers.
pub fn list() -> Vec<&'static str> {
    vec![
        "fig1c", "fig2a", "fig2b", "fig2e", "fig3", "fig4a", "fig4b", "fig4c", "fig5a", "fig5b",
        "fig5c", "fig5d", "figM1", "figM2",
    ]
}

/// Run a bundled recipe into `out_dir` (default: the resolved scenario
/// output directory) and return the artifact list.
pub fn reproduce(
    figure_id: &str,
    out_dir: Option<PathBuf>,
    workers: Option<usize>,
) -> Result<RunArtifacts> {
    let run = || reproduce_inner(figure_id, out_dir.clone());
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RingsimError::Config(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn reproduce_inner(figure_id: &str, out_dir: Option<PathBuf>) -> Result<RunArtifacts> {
    match figure_id {
        "fig1c" => run_toml(FIG1C, "fig1c", out_dir),
        "fig2a" => run_toml(FIG2A, "fig2a", out_dir),
        "fig2b" => run_toml(FIG2B, "fig2b", out_dir),
        "fig2e" => run_toml(FIG2E, "fig2e", out_dir),
        "fig3" => fig3(out_dir),
        "fig4a" => fig4(out_dir, "fig4a"),
        "fig4b" => fig4(out_dir, "fig4b"),
        "fig4c" => fig4(out_dir, "fig4c"),
        "fig5a" => fig5(out_dir, "fig5a"),
        "fig5b" => fig5(out_dir, "fig5b"),
        "fig5c" => fig5(out_dir, "fig5c"),
        "fig5d" => fig5(out_dir, "fig5d"),
        "figM1" => fig_m1(out_dir),
        "figM2" => fig_m2(out_dir),
        other => Err(RingsimError::Config(format!(
            "unknown figure id `{other}` (known: {})",
            list().join(", ")
        ))),
    }
}

fn run_toml(text: &str, label: &str, out_dir: Option<PathBuf>) -> Result<RunArtifacts> {
    let mut cfg = ScenarioConfig::from_toml_str(text)?;
    if let Some(dir) = out_dir {
        cfg.output.directory = Some(dir);
    }
    run_scenario(&cfg, label, &[], None)
}

/// Transport efficiency vs emitters per ring: the N_R >= 6 threshold.
const FIG1C: &str = r#"
[geometry]
kind = "ring_chain"
n_ring = 9
rings = 10
d = 0.05
d_r = 0.045

[physics]
delta = 0.0
trap_rate = 2.0
t_max = 150.0
time_points = 151

[analysis]
kind = "transport"

[sweep]
parameter = "n_ring"
values = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
"#;

/// Finite-chain band classification for the 9-fold chain.
const FIG2A: &str = r#"
[geometry]
kind = "ring_chain"
n_ring = 9
rings = 10
d = 0.05
d_r = 0.045

[analysis]
kind = "bands"
"#;

/// Edge-state band gap vs inter-ring spacing, with a rotational
/// disorder ensemble.
const FIG2B: &str = r#"
[geometry]
kind = "ring_chain"
n_ring = 9
rings = 10
d = 0.05
d_r = 0.045

[analysis]
kind = "bands"

[sweep]
parameter = "d_r"
start = 0.015
stop = 0.055
points = 17

[disorder]
kind = "rotational"
n_realizations = 10
base_seed = 1
"#;

/// Transport vs inter-ring spacing: suppression dips at the critical
/// spacings where the edge states detach from the bulk.
const FIG2E: &str = r#"
[geometry]
kind = "ring_chain"
n_ring = 9
rings = 10
d = 0.05
d_r = 0.045

[physics]
delta = 0.0
trap_rate = 2.0
t_max = 150.0
time_points = 151

[analysis]
kind = "transport"

[sweep]
parameter = "d_r"
start = 0.015
stop = 0.055
points = 17
"#;

fn bespoke_manifest(
    out_dir: &Path,
    label: &str,
    description: &str,
    files: Vec<PathBuf>,
    seeds: Vec<u64>,
    scalar: f64,
) -> Result<RunArtifacts> {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(description.as_bytes());
    let mut manifest = Manifest::new(hex::encode(hasher.finalize()), description.to_string());
    manifest.files = files.clone();
    manifest.seeds = seeds;
    let manifest_path = out_dir.join(format!("{label}_manifest.json"));
    manifest.write(&manifest_path)?;
    Ok(RunArtifacts {
        files,
        manifest_path,
        scalar,
    })
}

fn resolve_dir(out_dir: Option<PathBuf>) -> PathBuf {
    out_dir
        .or_else(|| std::env::var_os("RINGSIM_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn transport_chain_cfg(n_ring: usize, rings: usize, d: f64, d_r: f64) -> ScenarioConfig {
    ScenarioConfig::from_toml_str(&format!(
        r#"
[geometry]
kind = "ring_chain"
n_ring = {n_ring}
rings = {rings}
d = {d}
d_r = {d_r}

[physics]
trap_rate = 2.0
t_max = 150.0
time_points = 151

[analysis]
kind = "transport"
"#
    ))
    .expect("static recipe config")
}

/// Transport scans over N_R and donor/acceptor detuning for three
/// inter-ring spacings; the subradiant ridge follows Δ_sub.
fn fig3(out_dir: Option<PathBuf>) -> Result<RunArtifacts> {
    let dir = resolve_dir(out_dir);
    std::fs::create_dir_all(&dir)?;
    let description = "transport eta over (n_ring, delta) for d_r/d in {0.9, 0.6, 0.34}; \
                       rings=10, d=0.05, trap_rate=2, t_max=150";
    let deltas: Vec<f64> = (0..13).map(|i| -3.0 + 0.5 * i as f64).collect();
    let n_rings: Vec<usize> = (3..=12).collect();
    let mut files = Vec::new();
    for (tag, ratio) in [("a", 0.9), ("b", 0.6), ("c", 0.34)] {
        let points: Vec<(usize, f64)> = n_rings
            .iter()
            .flat_map(|&n| deltas.iter().map(move |&dl| (n, dl)))
            .collect();
        let etas: Vec<f64> = points
            .par_iter()
            .map(|&(n, dl)| {
                let mut cfg = transport_chain_cfg(n, 10, 0.05, ratio * 0.05);
                cfg.physics.delta = dl;
                transport_table(&cfg, None).map(|(_, eta)| eta)
            })
            .collect::<Result<_>>()?;
        let mut table = Table::new(vec!["n_ring", "delta", "eta"]);
        for ((n, dl), eta) in points.iter().zip(etas.iter()) {
            table.push_row(vec![format!("{n}"), fmt(*dl), fmt(*eta)])?;
        }
        let csv = dir.join(format!("fig3{tag}.csv"));
        write_csv(
            &csv,
            &table,
            &[("d_r_over_d".to_string(), fmt(ratio))],
        )?;
        files.push(csv);
    }
    bespoke_manifest(&dir, "fig3", description, files, vec![], f64::NAN)
}

/// Disorder-robustness ensembles: mean transport efficiency vs Γ_T/|J|
/// for frequency disorder δω ∈ {|J|/4, |J|/2}, 25 realizations.
fn fig4(out_dir: Option<PathBuf>, panel: &str) -> Result<RunArtifacts> {
    let dir = resolve_dir(out_dir);
    std::fs::create_dir_all(&dir)?;
    let d = 0.06;
    let p = circular_polarization();
    let j_scale = coherent_coupling([d, 0.0, 0.0], &p, &p)?.abs();
    // (series label, geometry, delta)
    let series: Vec<(&str, GeometrySpec, f64)> = match panel {
        "fig4a" => vec![
            ("linear_chain", GeometrySpec::LinearChain { sites: 72, d }, 0.0),
            ("hexagonal", GeometrySpec::Hexagonal { nx: 20, ny: 10, d }, 0.0),
            ("free_pair", GeometrySpec::FreePair { d }, 0.0),
        ],
        "fig4b" => vec![
            ("honeycomb", GeometrySpec::Honeycomb { nx: 13, ny: 5, d }, 4.5),
            ("free_pair", GeometrySpec::FreePair { d }, 4.5),
        ],
        "fig4c" => vec![
            (
                "ring_chain",
                GeometrySpec::RingChain {
                    n_ring: 9,
                    rings: 5,
                    d,
                    d_r: 0.9 * d,
                    rotations: None,
                },
                -1.0,
            ),
            ("free_pair", GeometrySpec::FreePair { d }, -1.0),
        ],
        other => return Err(RingsimError::Config(format!("unknown panel {other}"))),
    };
    let description = format!(
        "{panel}: mean eta over 25 frequency-disorder realizations vs trap rate; \
         d=0.06, t_max=150, sigma in (|J|/4, |J|/2), J={j_scale:.3}"
    );
    let gamma_ratios: Vec<f64> = (0..9)
        .map(|i| 10f64.powf(-2.0 + 2.0 * i as f64 / 8.0))
        .collect();
    let sigmas = [j_scale / 4.0, j_scale / 2.0];
    let n_real = 25;
    let base_seed = 100;
    let mut table = Table::new(vec![
        "series",
        "sigma",
        "gamma_T_over_J",
        "gamma_T",
        "eta_mean",
        "eta_std",
        "n_realizations",
    ]);
    for (name, geometry, delta) in &series {
        for &sigma in &sigmas {
            let rows: Vec<(f64, f64, f64)> = gamma_ratios
                .par_iter()
                .map(|&ratio| {
                    let mut cfg = transport_chain_cfg(9, 5, d, 0.9 * d);
                    cfg.geometry = geometry.clone();
                    cfg.physics.delta = *delta;
                    cfg.physics.trap_rate = ratio * j_scale;
                    cfg.disorder = Some(DisorderConfig {
                        kind: DisorderKind::Frequency,
                        sigma,
                        n_realizations: n_real,
                        base_seed,
                    });
                    let ens = disorder_ensemble(
                        |seed| transport_table(&cfg, Some(seed)).map(|(_, eta)| eta),
                        n_real,
                        base_seed,
                    )?;
                    Ok((ratio, ens.mean, ens.std))
                })
                .collect::<Result<_>>()?;
            for (ratio, mean, std) in rows {
                table.push_row(vec![
                    name.to_string(),
                    fmt(sigma),
                    fmt(ratio),
                    fmt(ratio * j_scale),
                    fmt(mean),
                    fmt(std),
                    format!("{n_real}"),
                ])?;
            }
        }
    }
    let csv = dir.join(format!("{panel}.csv"));
    write_csv(&csv, &table, &[("description".to_string(), description.clone())])?;
    let seeds = (0..n_real as u64).map(|i| base_seed + i).collect();
    bespoke_manifest(&dir, panel, &description, vec![csv], seeds, f64::NAN)
}

/// Steady-state trapping scans: normalized trapped rate vs Γ_T/|J| for
/// the comparison geometries and the ring lattices, at two beam waists.
fn fig5(out_dir: Option<PathBuf>, panel: &str) -> Result<RunArtifacts> {
    let dir = resolve_dir(out_dir);
    std::fs::create_dir_all(&dir)?;
    let d = 0.06;
    let p = circular_polarization();
    let j_scale = coherent_coupling([d, 0.0, 0.0], &p, &p)?.abs();
    let series: Vec<(&str, GeometrySpec, f64)> = match panel {
        "fig5a" => vec![
            ("linear_chain", GeometrySpec::LinearChain { sites: 72, d }, 0.0),
            ("hexagonal", GeometrySpec::Hexagonal { nx: 20, ny: 10, d }, -18.0),
            ("free_pair", GeometrySpec::FreePair { d }, 0.0),
        ],
        "fig5b" => vec![
            ("honeycomb", GeometrySpec::Honeycomb { nx: 13, ny: 5, d }, -20.0),
            ("free_pair", GeometrySpec::FreePair { d }, -20.0),
        ],
        // The ring-lattice detunings sit on the narrow dark-state
        // resonance of the acceptor's host ring (linewidth ~1e-2 Γ0);
        // they are found by maximizing the trapped rate over Δ.
        "fig5c" => vec![(
            "ring_chain",
            GeometrySpec::RingChain {
                n_ring: 9,
                rings: 5,
                d,
                d_r: 0.9 * d,
                rotations: None,
            },
            -3.8746,
        )],
        // 4x4 patch: the corner-to-corner donor/acceptor distance is
        // 1.000 λ0, matching the ring-chain panel above.
        "fig5d" => vec![(
            "ring_lattice_hexagonal",
            GeometrySpec::RingLatticeHexagonal {
                n_ring: 9,
                nx: 4,
                ny: 4,
                d,
                d_r: 0.9 * d,
            },
            -3.946,
        )],
        other => return Err(RingsimError::Config(format!("unknown panel {other}"))),
    };
    let description = format!(
        "{panel}: steady normalized trapping rate vs trap rate, rabi=1e-3, \
         waists (0.3, 3.0), J={j_scale:.3}"
    );
    let rabi = 1e-3;
    let gamma_ratios: Vec<f64> = (0..13)
        .map(|i| 10f64.powf(-3.0 + 3.0 * i as f64 / 12.0))
        .collect();
    let mut table = Table::new(vec![
        "series",
        "waist",
        "gamma_T",
        "gamma_T_over_J",
        "trap_rate",
        "normalized_rate",
        "delta",
    ]);
    for (name, geometry, delta) in &series {
        let base = crate::geometry::build_geometry(geometry)?.with_donor_acceptor_detuning(*delta);
        let couplings = coupling_matrices(&base)?;
        // Gaussian beam centered at the donor; the acceptor sits at the
        // far side of the lattice and is only reached by transport
        let donor = base
            .donor_index()
            .ok_or_else(|| RingsimError::InvalidArgument("recipe geometry has no donor".into()))?;
        let center = base.emitters[donor].position;
        for &waist in &[0.3, 3.0] {
            let rows: Vec<(f64, f64, f64)> = gamma_ratios
                .par_iter()
                .map(|&ratio| {
                    let trap = ratio * j_scale;
                    let ens = base.with_trap_rate(trap)?;
                    let h = crate::hamiltonian::assemble_effective(&ens, &couplings)?;
                    let drive = crate::hamiltonian::gaussian_drive(&ens, rabi, waist, center)?;
                    let s = steady_analysis(&h, &drive)?;
                    let normalized = s.trapped_rate / single_emitter_trap_rate(rabi, trap);
                    Ok((trap, s.trapped_rate, normalized))
                })
                .collect::<Result<_>>()?;
            for (i, (trap, trapped, normalized)) in rows.iter().enumerate() {
                table.push_row(vec![
                    name.to_string(),
                    fmt(waist),
                    fmt(*trap),
                    fmt(gamma_ratios[i]),
                    fmt(*trapped),
                    fmt(*normalized),
                    fmt(*delta),
                ])?;
            }
        }
    }
    let csv = dir.join(format!("{panel}.csv"));
    write_csv(&csv, &table, &[("description".to_string(), description.clone())])?;
    bespoke_manifest(&dir, panel, &description, vec![csv], vec![], f64::NAN)
}

/// Zeno scaling: transport vs (N_R, Γ_T) at fixed ring radius, plus the
/// group-velocity prediction Γ_T ≈ v_g/d̃ from the |m| = 2 band.
fn fig_m1(out_dir: Option<PathBuf>) -> Result<RunArtifacts> {
    let dir = resolve_dir(out_dir);
    std::fs::create_dir_all(&dir)?;
    let description = "transport eta over (n_ring, gamma_T) at R=0.08, 10 rings, with the \
                       detuning placed at the |m|=2 Bloch band center, plus v_g/d_tilde there";
    let radius = 0.08;
    let n_rings: Vec<usize> = (6..=12).collect();
    let gamma_grid: Vec<f64> = (0..10)
        .map(|i| 10f64.powf(-1.3 + 2.3 * i as f64 / 9.0))
        .collect();
    let geometry_of = |n: usize| {
        let d = 2.0 * radius * (std::f64::consts::PI / n as f64).sin();
        let d_r = if n % 2 == 0 {
            d
        } else {
            3f64.sqrt() / 2.0 * d
        };
        (d, d_r)
    };
    // |m|=2 Bloch band window; the guided portion carries transport
    let band_window = |n: usize| -> Result<(f64, f64)> {
        let (d, d_r) = geometry_of(n);
        let bands = crate::bands::bloch_dispersion(n, d, d_r, 33)?;
        let curve = bands
            .bands
            .iter()
            .find(|c| c.m_abs == 2)
            .ok_or_else(|| RingsimError::InvalidArgument("no |m|=2 band".into()))?;
        let lo = curve.shift.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = curve.shift.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok((lo, hi))
    };
    // per-N_R transport-optimal detuning: coarse η(Δ) scan at Γ_T = Γ0
    // around the |m|=2 band (the optimum tracks Δ_sub of the ring)
    let transport_delta = |n: usize, lo: f64, hi: f64| -> Result<f64> {
        let (d, d_r) = geometry_of(n);
        let grid: Vec<f64> = (0..33)
            .map(|i| (lo - 6.0) + (hi + 3.0 - (lo - 6.0)) * i as f64 / 32.0)
            .collect();
        let etas: Vec<f64> = grid
            .par_iter()
            .map(|&dl| {
                let mut cfg = transport_chain_cfg(n, 10, d, d_r);
                cfg.physics.delta = dl;
                cfg.physics.trap_rate = 1.0;
                transport_table(&cfg, None).map(|(_, eta)| eta)
            })
            .collect::<Result<_>>()?;
        let best = etas
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite eta"))
            .map(|(i, _)| grid[i])
            .expect("non-empty grid");
        Ok(best)
    };
    let windows: Vec<(f64, f64)> = n_rings
        .iter()
        .map(|&n| band_window(n))
        .collect::<Result<_>>()?;
    let deltas: Vec<f64> = n_rings
        .iter()
        .zip(windows.iter())
        .map(|(&n, &(lo, hi))| transport_delta(n, lo, hi))
        .collect::<Result<_>>()?;
    let mut scan = Table::new(vec!["n_ring", "delta", "gamma_T", "eta"]);
    let points: Vec<(usize, f64, f64)> = n_rings
        .iter()
        .zip(deltas.iter())
        .flat_map(|(&n, &dl)| gamma_grid.iter().map(move |&g| (n, dl, g)))
        .collect();
    let etas: Vec<f64> = points
        .par_iter()
        .map(|&(n, dl, g)| {
            let (d, d_r) = geometry_of(n);
            let mut cfg = transport_chain_cfg(n, 10, d, d_r);
            cfg.physics.delta = dl;
            cfg.physics.trap_rate = g;
            transport_table(&cfg, None).map(|(_, eta)| eta)
        })
        .collect::<Result<_>>()?;
    for ((n, dl, g), eta) in points.iter().zip(etas.iter()) {
        scan.push_row(vec![format!("{n}"), fmt(*dl), fmt(*g), fmt(*eta)])?;
    }
    let scan_csv = dir.join("figM1a.csv");
    write_csv(&scan_csv, &scan, &[("description".to_string(), description.to_string())])?;

    let mut design = Table::new(vec![
        "n_ring",
        "d",
        "d_r",
        "ring_spacing",
        "delta",
        "delta_band",
        "k_star",
        "group_velocity",
        "gamma_T_opt",
    ]);
    for ((&n, &dl), &(lo, hi)) in n_rings.iter().zip(deltas.iter()).zip(windows.iter()) {
        let (d, d_r) = geometry_of(n);
        let spacing = 2.0 * ring_radius(n, d) + d_r;
        // evaluate v_g where the band is resonant: the transport
        // detuning clamped into the interior of the |m|=2 band (the
        // truncated Bloch sum misplaces the band above the light line,
        // so Δ_opt can fall just outside the computed window)
        let w = hi - lo;
        let dl_band = dl.clamp(lo + 0.1 * w, hi - 0.1 * w);
        match optimal_trapping(n, d, d_r, dl_band, Some(2)) {
            Ok(t) => design.push_row(vec![
                format!("{n}"),
                fmt(d),
                fmt(d_r),
                fmt(spacing),
                fmt(dl),
                fmt(dl_band),
                fmt(t.k_star),
                fmt(t.group_velocity),
                fmt(t.optimal_trap_rate),
            ])?,
            Err(RingsimError::NoResonantMomentum(_)) => design.push_row(vec![
                format!("{n}"),
                fmt(d),
                fmt(d_r),
                fmt(spacing),
                fmt(dl),
                fmt(dl_band),
                "nan".into(),
                "nan".into(),
                "nan".into(),
            ])?,
            Err(e) => return Err(e),
        }
    }
    let design_csv = dir.join("figM1b.csv");
    write_csv(&design_csv, &design, &[("description".to_string(), description.to_string())])?;
    bespoke_manifest(
        &dir,
        "figM1",
        description,
        vec![scan_csv, design_csv],
        vec![],
        f64::NAN,
    )
}

/// Edge and corner states in 1D and 2D ring lattices for N_R = 8.
fn fig_m2(out_dir: Option<PathBuf>) -> Result<RunArtifacts> {
    let dir = resolve_dir(out_dir);
    std::fs::create_dir_all(&dir)?;
    let description = "edge/corner localization for N_R=8, d=0.05: 1D chain at three \
                       spacings; 3x3 square and hexagonal ring lattices";
    let d = 0.05;
    let mut files = Vec::new();
    // (file tag, geometry, spacing ratios)
    let cases: Vec<(&str, fn(f64, f64) -> GeometrySpec, Vec<f64>)> = vec![
        (
            "a_chain",
            |d, d_r| GeometrySpec::RingChain {
                n_ring: 8,
                rings: 10,
                d,
                d_r,
                rotations: None,
            },
            vec![0.58, 0.8, 1.0],
        ),
        (
            "b_square",
            |d, d_r| GeometrySpec::RingLatticeSquare {
                n_ring: 8,
                nx: 3,
                ny: 3,
                d,
                d_r,
            },
            vec![0.8, 1.0],
        ),
        (
            "c_hexagonal",
            |d, d_r| GeometrySpec::RingLatticeHexagonal {
                n_ring: 8,
                nx: 3,
                ny: 3,
                d,
                d_r,
            },
            vec![0.8, 1.0],
        ),
    ];
    for (tag, make, ratios) in cases {
        let mut table = Table::new(vec![
            "d_r_over_d",
            "mode_index",
            "Re_lambda",
            "decay",
            "edge_weight",
            "bulk_weight",
            "corner_weight",
            "superradiant",
        ]);
        for &ratio in &ratios {
            let lattice = crate::geometry::build_geometry(&make(d, ratio * d))?
                .without_donor_acceptor();
            let c = coupling_matrices(&lattice)?;
            let h = crate::hamiltonian::assemble_effective(&lattice, &c)?;
            let modes = crate::spectrum::diagonalize(&h)?;
            let report = crate::bands::edge_localization(&modes, &lattice)?;
            for r in &report {
                table.push_row(vec![
                    fmt(ratio),
                    format!("{}", r.mode_index),
                    fmt(r.shift),
                    fmt(r.decay),
                    fmt(r.edge_weight),
                    fmt(r.bulk_weight),
                    fmt(r.corner_weight),
                    format!("{}", r.superradiant),
                ])?;
            }
        }
        let csv = dir.join(format!("figM2{tag}.csv"));
        write_csv(&csv, &table, &[("description".to_string(), description.to_string())])?;
        files.push(csv);
    }
    bespoke_manifest(&dir, "figM2", description, files, vec![], f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_figure_rejected() {
        assert!(matches!(
            reproduce("fig99", None, None),
            Err(RingsimError::Config(_))
        ));
    }

    #[test]
    fn recipe_list_is_stable() {
        let ids = list();
        assert!(ids.contains(&"fig1c"));
        assert!(ids.contains(&"fig5d"));
        assert!(ids.contains(&"figM2"));
    }
}
