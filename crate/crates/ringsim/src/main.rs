//! Thin command-line front end over the `ringsim` library. All physics
//! and file formats live in the library; this binary only parses
//! arguments, applies overrides, and maps errors to exit codes:
//! 0 = success, 2 = configuration error, 3 = numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ringsim::runner::config::{AnalysisKind, ScenarioConfig};
use ringsim::runner::output::write_csv;
use ringsim::runner::recipes;
use ringsim::runner::scenario::{coupling_table, geometry_table, run_scenario, RunArtifacts};
use ringsim::RingsimError;

#[derive(Parser)]
#[command(
    name = "ringsim",
    about = "Energy transport, band topology, and light trapping in subwavelength emitter ring lattices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Scenario TOML file.
    #[arg(short, long)]
    config: PathBuf,
    /// Dotted-path override, e.g. `physics.delta=-1.5` (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory (overrides config and RINGSIM_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps and ensembles (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Artifact file stem (default: subcommand name).
    #[arg(long)]
    label: Option<String>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Dump emitter positions, roles, and rates as CSV.
    Geometry(RunArgs),
    /// Dump the coherent and dissipative coupling matrices as CSV.
    Coupling(RunArgs),
    /// Donor-initialized transport dynamics.
    Transport(RunArgs),
    /// Finite-lattice band classification with edge weights.
    Bands(RunArgs),
    /// Zak phase of the infinite chain via a Wilson loop.
    Zak(RunArgs),
    /// Edge/corner localization of every lattice eigenmode.
    Edges(RunArgs),
    /// Driven steady state and trapping-rate scan.
    Steady(RunArgs),
    /// Closed-form single-ring analytics.
    Analytics(RunArgs),
    /// Run the [sweep] section of the config over its parameter grid.
    Sweep(RunArgs),
    /// Re-run a bundled recipe by its figure id.
    Reproduce {
        /// Figure id, or `list` to print the available ids.
        figure_id: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                RingsimError::Config(_) | RingsimError::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(command: Command) -> ringsim::Result<()> {
    match command {
        Command::Geometry(args) => run_dump(args, "geometry"),
        Command::Coupling(args) => run_dump(args, "coupling"),
        Command::Transport(args) => run_analysis(args, Some(AnalysisKind::Transport), "transport"),
        Command::Bands(args) => run_analysis(args, Some(AnalysisKind::Bands), "bands"),
        Command::Zak(args) => run_analysis(args, Some(AnalysisKind::Zak), "zak"),
        Command::Edges(args) => run_analysis(args, Some(AnalysisKind::Edges), "edges"),
        Command::Steady(args) => run_analysis(args, Some(AnalysisKind::Steady), "steady"),
        Command::Analytics(args) => run_analysis(args, Some(AnalysisKind::Analytics), "analytics"),
        Command::Sweep(args) => run_analysis(args, None, "sweep"),
        Command::Reproduce {
            figure_id,
            out,
            workers,
        } => {
            if figure_id == "list" {
                for id in recipes::list() {
                    println!("{id}");
                }
                return Ok(());
            }
            let run = recipes::reproduce(&figure_id, out, workers)?;
            report(&run);
            Ok(())
        }
    }
}

/// Load the config, apply `--set` overrides and `--out`.
fn load(args: &RunArgs) -> ringsim::Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig::from_path(&args.config)?;
    for o in &args.set {
        cfg = cfg.with_override(o)?;
    }
    if let Some(out) = &args.out {
        cfg.output.directory = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run_analysis(args: RunArgs, kind: Option<AnalysisKind>, default_label: &str) -> ringsim::Result<()> {
    let mut cfg = load(&args)?;
    match kind {
        Some(k) => {
            // analysis subcommands run a single point; the grid in the
            // config only applies under `sweep`
            cfg.analysis.kind = k;
            cfg.sweep = None;
        }
        None => {
            if cfg.sweep.is_none() {
                return Err(RingsimError::Config(
                    "`sweep` subcommand needs a [sweep] section in the config".into(),
                ));
            }
        }
    }
    let label = args.label.as_deref().unwrap_or(default_label);
    let run = run_scenario(&cfg, label, &args.set, args.workers)?;
    report(&run);
    Ok(())
}

/// geometry/coupling: plain table dumps, no manifest.
fn run_dump(args: RunArgs, which: &str) -> ringsim::Result<()> {
    let cfg = load(&args)?;
    let (table, _) = match which {
        "geometry" => geometry_table(&cfg),
        _ => coupling_table(&cfg),
    }?;
    let dir = ringsim::runner::config::resolve_output_dir(&cfg);
    std::fs::create_dir_all(&dir)?;
    let label = args.label.as_deref().unwrap_or(which);
    let path = dir.join(format!("{label}.csv"));
    write_csv(&path, &table, &[("config_hash".to_string(), cfg.hash()?)])?;
    println!("{}", path.display());
    Ok(())
}

fn report(run: &RunArtifacts) {
    for f in &run.files {
        println!("{}", f.display());
    }
    println!("{}", run.manifest_path.display());
    if run.scalar.is_finite() {
        println!("scalar = {}", run.scalar);
    }
}
