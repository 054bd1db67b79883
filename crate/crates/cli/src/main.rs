use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use d2tcp_dynamics::analysis::Observable;
use d2tcp_dynamics_cli::commands::{self, Artifacts};
use d2tcp_dynamics_cli::scenario::load_scenario;

/// Discrete-time DCTCP/D2TCP sender dynamics under threshold and RED
/// marking: orbits, bifurcation sweeps, return maps, cobwebs, marking
/// curves, period detection and Lyapunov estimates.
#[derive(Parser)]
#[command(name = "d2dyn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV path. With --svg an .svg sibling is written as well.
    #[arg(long)]
    out: PathBuf,
    /// Also render an SVG next to the CSV.
    #[arg(long)]
    svg: bool,
}

fn parse_observable(s: &str) -> Result<Observable, String> {
    s.parse::<Observable>().map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Time series of one orbit: k, window, alpha, queue, marked, rtt_s.
    Orbit {
        #[command(flatten)]
        io: IoArgs,
        /// Observable rendered in the SVG (the CSV always has all columns).
        #[arg(long, default_value = "window", value_parser = parse_observable)]
        observable: Observable,
    },
    /// Bifurcation diagram over the scenario's `[sweep]` section.
    Bifurcate {
        #[command(flatten)]
        io: IoArgs,
        /// Evaluate grid points in parallel (output is byte-identical).
        #[arg(long)]
        parallel: bool,
        /// Space the grid geometrically instead of linearly, keeping the
        /// point count implied by the linear step. Useful for sweeps of d
        /// across several decades.
        #[arg(long)]
        log_grid: bool,
    },
    /// Cobweb segments of the steady-state series.
    Cobweb {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value = "window", value_parser = parse_observable)]
        observable: Observable,
    },
    /// Order-n return map pairs `(x[k], x[k+n])`.
    ReturnMap {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value = "window", value_parser = parse_observable)]
        observable: Observable,
        /// Return-map order n.
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// One-step image of window or alpha with the other variable frozen.
    MapGraph {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value = "window", value_parser = parse_observable)]
        observable: Observable,
        /// Value the other state variable is held at. Defaults to the
        /// scenario's initial value of that variable.
        #[arg(long)]
        frozen: Option<f64>,
        /// Domain start; defaults to 1 for window, 0 for alpha.
        #[arg(long)]
        domain_from: Option<f64>,
        /// Domain end; defaults to twice the border for window, 1 for alpha.
        #[arg(long)]
        domain_to: Option<f64>,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
    /// Marking probability versus averaged queue for the scenario's
    /// marking policy (threshold scenarios use the equivalent RED form).
    RedCurve {
        #[command(flatten)]
        io: IoArgs,
        /// Number of curve points over [0, B].
        #[arg(long, default_value_t = 512)]
        resolution: usize,
    },
    /// Steady-state period of the observable, read from the recurrence of
    /// its successive maxima (one lobe per excursion).
    Period {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value = "window", value_parser = parse_observable)]
        observable: Observable,
        /// Absolute recurrence tolerance in observable units.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Largest period searched.
        #[arg(long, default_value_t = 32)]
        max_period: usize,
    },
    /// Largest-Lyapunov-exponent estimate by twin-orbit renormalization.
    Lyapunov {
        #[command(flatten)]
        io: IoArgs,
        /// Renormalization steps accumulated after the transient.
        #[arg(long, default_value_t = 20000)]
        iterations: usize,
        /// Twin-orbit separation, in window units.
        #[arg(long, default_value_t = 1e-8)]
        separation: f64,
    },
}

fn write_artifacts(artifacts: &Artifacts, out: &Path) -> Result<()> {
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
    }
    std::fs::write(out, &artifacts.csv)
        .with_context(|| format!("cannot write {}", out.display()))?;
    if let Some(svg) = &artifacts.svg {
        let svg_path = out.with_extension("svg");
        std::fs::write(&svg_path, svg)
            .with_context(|| format!("cannot write {}", svg_path.display()))?;
    }
    println!("{}", artifacts.summary);
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (io, artifacts) = match &cli.command {
        Command::Orbit { io, observable } => {
            let scenario = load_scenario(&io.scenario)?;
            (io, commands::orbit(&scenario, *observable, io.svg)?)
        }
        Command::Bifurcate {
            io,
            parallel,
            log_grid,
        } => {
            let scenario = load_scenario(&io.scenario)?;
            (
                io,
                commands::bifurcate(&scenario, *parallel, *log_grid, io.svg)?,
            )
        }
        Command::Cobweb { io, observable } => {
            let scenario = load_scenario(&io.scenario)?;
            (io, commands::cobweb_cmd(&scenario, *observable, io.svg)?)
        }
        Command::ReturnMap {
            io,
            observable,
            order,
        } => {
            let scenario = load_scenario(&io.scenario)?;
            (
                io,
                commands::return_map_cmd(&scenario, *observable, *order, io.svg)?,
            )
        }
        Command::MapGraph {
            io,
            observable,
            frozen,
            domain_from,
            domain_to,
            resolution,
        } => {
            let scenario = load_scenario(&io.scenario)?;
            (
                io,
                commands::map_graph_cmd(
                    &scenario,
                    *observable,
                    *frozen,
                    (*domain_from, *domain_to),
                    *resolution,
                    io.svg,
                )?,
            )
        }
        Command::RedCurve { io, resolution } => {
            let scenario = load_scenario(&io.scenario)?;
            (io, commands::red_curve(&scenario, *resolution, io.svg)?)
        }
        Command::Period {
            io,
            observable,
            tolerance,
            max_period,
        } => {
            let scenario = load_scenario(&io.scenario)?;
            (
                io,
                commands::period(&scenario, *observable, *tolerance, *max_period)?,
            )
        }
        Command::Lyapunov {
            io,
            iterations,
            separation,
        } => {
            let scenario = load_scenario(&io.scenario)?;
            (
                io,
                commands::lyapunov(&scenario, *iterations, *separation)?,
            )
        }
    };
    write_artifacts(&artifacts, &io.out)
}
