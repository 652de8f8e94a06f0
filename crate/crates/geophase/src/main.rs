use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use geophase::config::RunConfig;
use geophase::density::trajectory;
use geophase::error::{Error, Result};
use geophase::gp::{self, gp_vs_time};
use geophase::output::{format_real, write_csv, write_sidecar, Cell};
use geophase::params::CouplingRegime;
use geophase::presets::{run_preset, PresetOptions, PRESET_NAMES};
use geophase::sweep::{run_sweep, Axis, SweepParameter, SweepQuantity, SweepResult, SweepSpec};

#[derive(Parser)]
#[command(
    name = "geophase",
    about = "Geometric phase of a spin-1/2 in a composite spin + ohmic-bath environment",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Units {
    Rad,
    Pi,
}

#[derive(Args)]
struct ModelArgs {
    /// Plain-text config file with `key = value` lines (same keys as flags).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Entanglement weight of the initial two-spin state, in [0, 1].
    #[arg(long)]
    lambda0: Option<f64>,
    /// Bloch-ball angle of the initial state, in [0, pi].
    #[arg(long)]
    theta0: Option<f64>,
    /// Excitation weight of spin 1 (product states), in [0, 1].
    #[arg(long)]
    p: Option<f64>,
    /// Excitation weight of spin 2 (product states), in [0, 1].
    #[arg(long)]
    q: Option<f64>,
    /// Dimensionless bath coupling.
    #[arg(long)]
    gamma0: Option<f64>,
    /// Bath cutoff frequency, in units of omega1.
    #[arg(long)]
    cutoff: Option<f64>,
    /// Spin-spin coupling strength.
    #[arg(long)]
    chi: Option<f64>,
    /// Level splitting of spin 1 (sets the time unit).
    #[arg(long)]
    omega1: Option<f64>,
    /// Level splitting of spin 2 (defaults to omega1).
    #[arg(long)]
    omega2: Option<f64>,
    /// Coupling regime: isolated | chi-only | ohmic | spin2-uncoupled.
    #[arg(long)]
    regime: Option<String>,
    /// Number of quasi-cycles in the evolution window.
    #[arg(long = "tau-cycles")]
    tau_cycles: Option<u32>,
    /// Time samples per quasi-cycle (even, >= 16).
    #[arg(long)]
    steps: Option<usize>,
    /// Phase units for printed values.
    #[arg(long, value_enum, default_value = "rad")]
    units: Units,
}

impl ModelArgs {
    fn run_config(&self) -> Result<RunConfig> {
        let cli = RunConfig {
            omega1: self.omega1,
            omega2: self.omega2,
            chi: self.chi,
            gamma0: self.gamma0,
            cutoff: self.cutoff,
            lambda0: self.lambda0,
            theta0: self.theta0,
            p: self.p,
            q: self.q,
            regime: match &self.regime {
                Some(s) => Some(s.parse::<CouplingRegime>()?),
                None => None,
            },
            cycles: self.tau_cycles,
            steps: self.steps,
        };
        Ok(match &self.config {
            Some(path) => RunConfig::from_file(path)?.overlay(&cli),
            None => cli,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single geometric phase and print its audit trail.
    Gp {
        #[command(flatten)]
        model: ModelArgs,
        /// Named single-evaluation preset: mes-isolated | werner-theta0.
        #[arg(long)]
        preset: Option<String>,
        /// Also write the result as a one-row CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-axis parameter sweep written as CSV (header axis1,axis2,phase_over_pi).
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// First axis as name:lo:hi:count (e.g. concurrence:0:1:64).
        #[arg(long)]
        axis1: String,
        /// Second axis as name:lo:hi:count (e.g. theta0:0:3.14159265:64).
        #[arg(long)]
        axis2: String,
        /// Which scalar each cell evaluates.
        #[arg(long, value_enum, default_value = "gp-entangled")]
        quantity: QuantityArg,
        /// Output CSV path (a .params.txt sidecar is written next to it).
        #[arg(long)]
        out: PathBuf,
    },
    /// Bloch trajectory of spin 1 written as CSV (t,x,y,z,purity).
    Trajectory {
        #[command(flatten)]
        model: ModelArgs,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase as a function of time written as CSV (t,phase_rad,phase_over_pi).
    Series {
        #[command(flatten)]
        model: ModelArgs,
        /// Evaluation points per cycle (cycle boundaries always included).
        #[arg(long, default_value = "16")]
        points_per_cycle: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named figure preset (fig1 .. fig11).
    Preset {
        /// Preset name.
        #[arg(long)]
        name: String,
        /// Directory the CSV files and sidecar go to.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Points per surface axis.
        #[arg(long, default_value = "64")]
        surface_points: usize,
        /// Time samples per quasi-cycle.
        #[arg(long, default_value = "512")]
        steps: usize,
        /// Cycles covered by time-series presets.
        #[arg(long, default_value = "10")]
        cycles: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    GpEntangled,
    GpProduct,
}

fn parse_axis(text: &str) -> Result<Axis> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "axis '{text}' must be name:lo:hi:count"
        )));
    }
    let parameter: SweepParameter = parts[0].parse()?;
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("axis lo '{}' not a number", parts[1])))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("axis hi '{}' not a number", parts[2])))?;
    let count: usize = parts[3].parse().map_err(|_| {
        Error::InvalidParameter(format!("axis count '{}' not an integer", parts[3]))
    })?;
    Ok(Axis {
        parameter,
        lo,
        hi,
        count,
    })
}

fn named_gp_preset(name: &str) -> Result<RunConfig> {
    match name {
        "mes-isolated" => Ok(RunConfig {
            lambda0: Some(0.5),
            theta0: Some(PI / 2.0),
            regime: Some(CouplingRegime::Isolated),
            ..Default::default()
        }),
        "werner-theta0" => Ok(RunConfig {
            lambda0: Some(0.3),
            theta0: Some(0.0),
            regime: Some(CouplingRegime::Isolated),
            ..Default::default()
        }),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

fn phase_text(phase: f64, units: Units) -> String {
    match units {
        Units::Rad => format!(
            "{} rad ({} pi)",
            format_real(phase),
            format_real(phase / PI)
        ),
        Units::Pi => format!(
            "{} pi ({} rad)",
            format_real(phase / PI),
            format_real(phase)
        ),
    }
}

fn cmd_gp(model: ModelArgs, preset: Option<String>, out: Option<PathBuf>) -> Result<()> {
    let units = model.units;
    let mut cfg = model.run_config()?;
    if let Some(name) = preset {
        cfg = named_gp_preset(&name)?.overlay(&cfg);
    }
    let (m, grid) = cfg.build()?;
    let r = gp::evaluate(&m, &grid)?;

    println!("phase       = {}", phase_text(r.phase, units));
    match r.branch_terms {
        Some([tp, tm]) => {
            println!(
                "branch +    = {} + {} i",
                format_real(tp.re),
                format_real(tp.im)
            );
            println!(
                "branch -    = {} + {} i",
                format_real(tm.re),
                format_real(tm.im)
            );
            let s = r.sum.unwrap();
            println!(
                "branch sum  = {} + {} i",
                format_real(s.re),
                format_real(s.im)
            );
        }
        None => println!("branch sum  = (degenerate assignment, no branch terms)"),
    }
    println!("degenerate  = {}", r.degenerate);
    match (r.oracle_phase, r.oracle_delta) {
        (Some(op), Some(od)) => {
            println!("oracle      = {}", phase_text(op, units));
            println!("oracle delta= {}", format_real(od));
        }
        _ => println!("oracle      = (not available for this evolution)"),
    }
    println!("halving     = {}", format_real(r.halving_delta));
    println!("converged   = {}", r.converged());
    if r.halving_delta.is_nan() || r.halving_delta > 1e-6 {
        return Err(Error::NonConvergence(r.halving_delta));
    }

    if let Some(path) = out {
        let row = vec![vec![
            Cell::Value(r.phase),
            Cell::Value(r.phase / PI),
            r.oracle_phase.map_or(Cell::Empty, Cell::Value),
            r.oracle_delta.map_or(Cell::Empty, Cell::Value),
            Cell::Value(r.halving_delta),
        ]];
        write_csv(
            &path,
            "phase_rad,phase_over_pi,oracle_rad,oracle_delta,halving_delta",
            row,
        )?;
    }
    Ok(())
}

fn cmd_sweep(
    model: ModelArgs,
    axis1: String,
    axis2: String,
    quantity: QuantityArg,
    out: PathBuf,
) -> Result<()> {
    let cfg = model.run_config()?;
    let (m, grid) = cfg.build()?;
    let spec = SweepSpec {
        axis1: parse_axis(&axis1)?,
        axis2: parse_axis(&axis2)?,
        quantity: match quantity {
            QuantityArg::GpEntangled => SweepQuantity::GpEntangled,
            QuantityArg::GpProduct => SweepQuantity::GpProduct,
        },
        base_params: m.params,
        base_init: m.init,
        regime: m.regime,
        grid,
    };
    let result = run_sweep(&spec)?;
    for f in &result.failures {
        eprintln!("sweep: {f}");
    }
    write_csv(&out, SweepResult::CSV_HEADER, result.csv_rows())?;
    let sidecar = out.with_extension("params.txt");
    write_sidecar(
        &sidecar,
        &[
            format!("axis1 = {axis1}"),
            format!("axis2 = {axis2}"),
            format!("regime = {}", m.regime.name()),
            format!("omega1 = {}", format_real(m.params.omega1)),
            format!("omega2 = {}", format_real(m.params.omega2)),
            format!("chi = {}", format_real(m.params.chi)),
            format!("gamma0 = {}", format_real(m.params.gamma0)),
            format!("cutoff = {}", format_real(m.params.cutoff)),
            format!("cycles = {}", grid.cycles),
            format!("steps = {}", grid.steps_per_cycle),
            "concurrence_map = lambda0 = (1 - sqrt(1 - C^2)) / 2, branch lambda0 <= 1/2".into(),
        ],
    )?;
    Ok(())
}

fn cmd_trajectory(model: ModelArgs, out: Option<PathBuf>) -> Result<()> {
    let cfg = model.run_config()?;
    let (m, grid) = cfg.build()?;
    let points = trajectory(&m, &grid)?;
    let rows = points.iter().map(|pt| {
        vec![
            Cell::Value(pt.t),
            Cell::Value(pt.point.x),
            Cell::Value(pt.point.y),
            Cell::Value(pt.point.z),
            Cell::Value(pt.purity),
        ]
    });
    match out {
        Some(path) => write_csv(&path, "t,x,y,z,purity", rows)?,
        None => {
            println!("t,x,y,z,purity");
            for pt in &points {
                println!(
                    "{},{},{},{},{}",
                    format_real(pt.t),
                    format_real(pt.point.x),
                    format_real(pt.point.y),
                    format_real(pt.point.z),
                    format_real(pt.purity)
                );
            }
        }
    }
    Ok(())
}

fn cmd_series(model: ModelArgs, points_per_cycle: usize, out: Option<PathBuf>) -> Result<()> {
    let cfg = model.run_config()?;
    let (m, grid) = cfg.build()?;
    let series = gp_vs_time(&m, grid.cycles, grid.steps_per_cycle, points_per_cycle)?;
    let rows = series
        .iter()
        .map(|&(t, ph)| vec![Cell::Value(t), Cell::Value(ph), Cell::Value(ph / PI)]);
    match out {
        Some(path) => write_csv(&path, "t,phase_rad,phase_over_pi", rows)?,
        None => {
            println!("t,phase_rad,phase_over_pi");
            for &(t, ph) in &series {
                println!(
                    "{},{},{}",
                    format_real(t),
                    format_real(ph),
                    format_real(ph / PI)
                );
            }
        }
    }
    Ok(())
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Gp { model, preset, out } => cmd_gp(model, preset, out),
        Command::Sweep {
            model,
            axis1,
            axis2,
            quantity,
            out,
        } => cmd_sweep(model, axis1, axis2, quantity, out),
        Command::Trajectory { model, out } => cmd_trajectory(model, out),
        Command::Series {
            model,
            points_per_cycle,
            out,
        } => cmd_series(model, points_per_cycle, out),
        Command::Preset {
            name,
            out_dir,
            surface_points,
            steps,
            cycles,
        } => {
            if !PRESET_NAMES.contains(&name.as_str()) {
                return Err(Error::UnknownPreset(name));
            }
            let opts = PresetOptions {
                surface_points,
                steps_per_cycle: steps,
                series_cycles: cycles,
                ..Default::default()
            };
            let files = run_preset(&name, &out_dir, &opts)?;
            for f in files {
                println!("wrote {}", f.display());
            }
            Ok(())
        }
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
