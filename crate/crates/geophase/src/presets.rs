//! Named figure presets: canned sweeps, trajectories and time series with
//! fixed parameters, written as CSV files plus a sidecar documenting every
//! parameter that went in.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::density::trajectory;
use crate::error::{Error, Result};
use crate::gp::gp_vs_time;
use crate::output::{format_real, write_csv, write_sidecar, Cell};
use crate::params::{
    lambda0_from_concurrence, validate, CouplingRegime, EntangledInit, InitialState, ProductInit,
    SystemParams, TimeGrid, ValidatedModel,
};
use crate::sweep::{run_sweep, Axis, SweepParameter, SweepQuantity, SweepResult, SweepSpec};

/// Tunable resolutions; the defaults match the documented contract
/// (64 x 64 surfaces, 512 steps per cycle).
#[derive(Debug, Clone, Copy)]
pub struct PresetOptions {
    pub surface_points: usize,
    pub steps_per_cycle: usize,
    pub series_cycles: u32,
    pub series_points_per_cycle: usize,
}

impl Default for PresetOptions {
    fn default() -> Self {
        Self {
            surface_points: 64,
            steps_per_cycle: 512,
            series_cycles: 10,
            series_points_per_cycle: 16,
        }
    }
}

pub const PRESET_NAMES: [&str; 11] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11",
];

const OHMIC: (f64, f64, f64) = (0.1, 0.02, 20.0); // chi, gamma0, cutoff

fn ohmic_params() -> SystemParams {
    SystemParams {
        chi: OHMIC.0,
        gamma0: OHMIC.1,
        cutoff: OHMIC.2,
        ..Default::default()
    }
}

fn ent(lambda0: f64, theta0: f64) -> InitialState {
    InitialState::Entangled(EntangledInit::new(lambda0, theta0))
}

fn prod_theta0(theta0: f64, q: f64) -> InitialState {
    InitialState::Product(ProductInit::from_theta0(theta0, q))
}

struct PresetSink<'a> {
    name: &'a str,
    dir: &'a Path,
    files: Vec<PathBuf>,
    notes: Vec<String>,
}

impl<'a> PresetSink<'a> {
    fn new(name: &'a str, dir: &'a Path, description: &str) -> Self {
        Self {
            name,
            dir,
            files: Vec::new(),
            notes: vec![
                format!("preset = {name}"),
                format!("description = {description}"),
            ],
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    fn note_system(&mut self, p: &SystemParams, regime: CouplingRegime) {
        self.note(format!("regime = {}", regime.name()));
        self.note(format!("omega1 = {}", format_real(p.omega1)));
        self.note(format!("omega2 = {}", format_real(p.omega2)));
        self.note(format!("chi = {}", format_real(p.chi)));
        self.note(format!("gamma0 = {}", format_real(p.gamma0)));
        self.note(format!("cutoff = {}", format_real(p.cutoff)));
    }

    fn surface(&mut self, result: &SweepResult) -> Result<()> {
        let path = self.dir.join(format!("{}.csv", self.name));
        write_csv(&path, SweepResult::CSV_HEADER, result.csv_rows())?;
        for f in &result.failures {
            eprintln!("{}: {f}", self.name);
        }
        self.note(format!("file = {}.csv", self.name));
        self.note(format!("csv_header = {}", SweepResult::CSV_HEADER));
        self.files.push(path);
        Ok(())
    }

    fn curve_csv<R>(&mut self, index: usize, header: &str, rows: R, label: &str) -> Result<()>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = Cell>,
    {
        let file = format!("{}_curve{}.csv", self.name, index);
        let path = self.dir.join(&file);
        write_csv(&path, header, rows)?;
        self.note(format!("file = {file}  ({label})"));
        self.files.push(path);
        Ok(())
    }

    fn finish(mut self) -> Result<Vec<PathBuf>> {
        let sidecar = self.dir.join(format!("{}_params.txt", self.name));
        write_sidecar(&sidecar, &self.notes)?;
        self.files.push(sidecar);
        Ok(self.files)
    }
}

fn concurrence_note(sink: &mut PresetSink) {
    sink.note("concurrence_map = lambda0 = (1 - sqrt(1 - C^2)) / 2, branch lambda0 <= 1/2");
}

fn entangled_surface(
    sink: &mut PresetSink,
    params: SystemParams,
    regime: CouplingRegime,
    axis1: Axis,
    axis2: Axis,
    grid: TimeGrid,
) -> Result<()> {
    let spec = SweepSpec {
        axis1,
        axis2,
        quantity: SweepQuantity::GpEntangled,
        base_params: params,
        base_init: ent(0.3, 0.5),
        regime,
        grid,
    };
    sink.note(format!(
        "axis1 = {} in [{}, {}] x {}",
        axis1.parameter.name(),
        format_real(axis1.lo),
        format_real(axis1.hi),
        axis1.count
    ));
    sink.note(format!(
        "axis2 = {} in [{}, {}] x {}",
        axis2.parameter.name(),
        format_real(axis2.lo),
        format_real(axis2.hi),
        axis2.count
    ));
    sink.note(format!(
        "grid = {} cycles x {} steps",
        grid.cycles, grid.steps_per_cycle
    ));
    sink.note_system(&params, regime);
    sink.surface(&run_sweep(&spec)?)
}

fn trajectory_curves(
    sink: &mut PresetSink,
    curves: &[(ValidatedModel, String)],
    grid: TimeGrid,
) -> Result<()> {
    sink.note(format!(
        "grid = {} cycles x {} steps",
        grid.cycles, grid.steps_per_cycle
    ));
    for (i, (model, label)) in curves.iter().enumerate() {
        let tr = trajectory(model, &grid)?;
        let rows = tr.iter().map(|pt| {
            vec![
                Cell::Value(pt.t),
                Cell::Value(pt.point.x),
                Cell::Value(pt.point.y),
                Cell::Value(pt.point.z),
                Cell::Value(pt.purity),
            ]
        });
        sink.curve_csv(i + 1, "t,x,y,z,purity", rows, label)?;
    }
    Ok(())
}

fn series_curves(
    sink: &mut PresetSink,
    curves: &[(ValidatedModel, String)],
    cycles: u32,
    steps: usize,
    points_per_cycle: usize,
) -> Result<()> {
    sink.note(format!("series = {cycles} cycles x {steps} steps"));
    for (i, (model, label)) in curves.iter().enumerate() {
        let series = gp_vs_time(model, cycles, steps, points_per_cycle)?;
        let rows = series
            .iter()
            .map(|&(t, ph)| vec![Cell::Value(t), Cell::Value(ph), Cell::Value(ph / PI)]);
        sink.curve_csv(i + 1, "t,phase_rad,phase_over_pi", rows, label)?;
    }
    Ok(())
}

/// Runs one named preset, writing its CSV file(s) and sidecar into `dir`.
/// Returns the paths written.
pub fn run_preset(name: &str, dir: &Path, opts: &PresetOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let n = opts.surface_points.max(2);
    let steps = opts.steps_per_cycle;
    let one_cycle = TimeGrid::quasi_cyclic(1.0, 1, steps);

    match name {
        "fig1" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "isolated entangled phase vs theta0 at maximal and near-zero concurrence",
            );
            concurrence_note(&mut sink);
            entangled_surface(
                &mut sink,
                SystemParams::default(),
                CouplingRegime::Isolated,
                Axis {
                    parameter: SweepParameter::Concurrence,
                    lo: 0.06,
                    hi: 1.0,
                    count: 2,
                },
                Axis {
                    parameter: SweepParameter::Theta0,
                    lo: 0.0,
                    hi: PI,
                    count: n,
                },
                one_cycle,
            )?;
            sink.finish()
        }
        "fig2" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "isolated Bloch trajectories at four concurrences (equatorial start)",
            );
            concurrence_note(&mut sink);
            sink.note("theta0 = pi/2 (caption leaves the angle free; equator shows the circles)");
            let params = SystemParams::default();
            sink.note_system(&params, CouplingRegime::Isolated);
            let curves: Vec<(ValidatedModel, String)> = [1.0, 0.95, 0.8, 0.43]
                .iter()
                .map(|&c| {
                    let lam0 = lambda0_from_concurrence(c);
                    (
                        validate(params, ent(lam0, PI / 2.0), CouplingRegime::Isolated).unwrap(),
                        format!("concurrence = {c}, lambda0 = {lam0}"),
                    )
                })
                .collect();
            trajectory_curves(&mut sink, &curves, one_cycle)?;
            sink.finish()
        }
        "fig3" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "entangled phase surface with spin-spin coupling only",
            );
            concurrence_note(&mut sink);
            let params = SystemParams {
                chi: 0.1,
                ..Default::default()
            };
            entangled_surface(
                &mut sink,
                params,
                CouplingRegime::ChiOnly,
                Axis {
                    parameter: SweepParameter::Concurrence,
                    lo: 0.0,
                    hi: 1.0,
                    count: n,
                },
                Axis {
                    parameter: SweepParameter::Theta0,
                    lo: 0.0,
                    hi: PI,
                    count: n,
                },
                one_cycle,
            )?;
            sink.finish()
        }
        "fig4" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "entangled phase surface with the full composite environment",
            );
            concurrence_note(&mut sink);
            entangled_surface(
                &mut sink,
                ohmic_params(),
                CouplingRegime::OhmicBothCoupled,
                Axis {
                    parameter: SweepParameter::Concurrence,
                    lo: 0.0,
                    hi: 1.0,
                    count: n,
                },
                Axis {
                    parameter: SweepParameter::Theta0,
                    lo: 0.0,
                    hi: PI,
                    count: n,
                },
                one_cycle,
            )?;
            sink.finish()
        }
        "fig5" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "entangled phase vs time for three weights at theta0 = pi/5",
            );
            let params = ohmic_params();
            sink.note_system(&params, CouplingRegime::OhmicBothCoupled);
            let curves: Vec<(ValidatedModel, String)> = [0.2, 0.1, 0.01]
                .iter()
                .map(|&lam0| {
                    (
                        validate(
                            params,
                            ent(lam0, PI / 5.0),
                            CouplingRegime::OhmicBothCoupled,
                        )
                        .unwrap(),
                        format!("lambda0 = {lam0}, theta0 = pi/5"),
                    )
                })
                .collect();
            series_curves(
                &mut sink,
                &curves,
                opts.series_cycles,
                steps,
                opts.series_points_per_cycle,
            )?;
            sink.finish()
        }
        "fig6" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "entangled Bloch spirals at three concurrences, theta0 = pi/5",
            );
            concurrence_note(&mut sink);
            let params = ohmic_params();
            sink.note_system(&params, CouplingRegime::OhmicBothCoupled);
            let curves: Vec<(ValidatedModel, String)> = [0.91, 0.71, 0.43]
                .iter()
                .map(|&c| {
                    let lam0 = lambda0_from_concurrence(c);
                    (
                        validate(
                            params,
                            ent(lam0, PI / 5.0),
                            CouplingRegime::OhmicBothCoupled,
                        )
                        .unwrap(),
                        format!("concurrence = {c}, lambda0 = {lam0}, theta0 = pi/5"),
                    )
                })
                .collect();
            let grid = TimeGrid::quasi_cyclic(1.0, opts.series_cycles, steps);
            trajectory_curves(&mut sink, &curves, grid)?;
            sink.finish()
        }
        "fig7" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "entangled phase vs bath coupling and concurrence, theta0 = pi/3",
            );
            concurrence_note(&mut sink);
            sink.note("gamma0 range chosen inside the weak-coupling window");
            let params = SystemParams {
                cutoff: 20.0,
                ..Default::default()
            };
            let spec = SweepSpec {
                axis1: Axis {
                    parameter: SweepParameter::Gamma0,
                    lo: 0.0,
                    hi: 0.05,
                    count: n,
                },
                axis2: Axis {
                    parameter: SweepParameter::Concurrence,
                    lo: 0.0,
                    hi: 1.0,
                    count: n,
                },
                quantity: SweepQuantity::GpEntangled,
                base_params: params,
                base_init: ent(0.3, PI / 3.0),
                regime: CouplingRegime::OhmicBothCoupled,
                grid: one_cycle,
            };
            sink.note(format!("axis1 = gamma0 in [0, 0.05] x {n}"));
            sink.note(format!("axis2 = concurrence in [0, 1] x {n}"));
            sink.note("theta0 = pi/3");
            sink.note_system(&params, CouplingRegime::OhmicBothCoupled);
            sink.surface(&run_sweep(&spec)?)?;
            sink.finish()
        }
        "fig8" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "uncoupled product-state phase vs q and theta0 (p = cos^2(theta0/2))",
            );
            let params = SystemParams::default();
            let spec = SweepSpec {
                axis1: Axis {
                    parameter: SweepParameter::Q,
                    lo: 0.0,
                    hi: 1.0,
                    count: n,
                },
                axis2: Axis {
                    parameter: SweepParameter::Theta0,
                    lo: 0.0,
                    hi: PI,
                    count: n,
                },
                quantity: SweepQuantity::GpProduct,
                base_params: params,
                base_init: prod_theta0(PI / 2.0, 0.5),
                regime: CouplingRegime::Isolated,
                grid: one_cycle,
            };
            sink.note(format!("axis1 = q in [0, 1] x {n}"));
            sink.note(format!(
                "axis2 = theta0 in [0, pi] x {n} (p = cos^2(theta0/2))"
            ));
            sink.note_system(&params, CouplingRegime::Isolated);
            sink.surface(&run_sweep(&spec)?)?;
            sink.finish()
        }
        "fig9" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "product-state phase vs time: two q values at theta0 = pi/5, one at pi/3",
            );
            let params = ohmic_params();
            sink.note_system(&params, CouplingRegime::OhmicBothCoupled);
            sink.note("p = cos^2(theta0/2)");
            let cases = [(PI / 5.0, 0.05), (PI / 5.0, 0.4), (PI / 3.0, 0.05)];
            let curves: Vec<(ValidatedModel, String)> = cases
                .iter()
                .map(|&(th0, q)| {
                    (
                        validate(
                            params,
                            prod_theta0(th0, q),
                            CouplingRegime::OhmicBothCoupled,
                        )
                        .unwrap(),
                        format!("theta0 = {th0}, q = {q}"),
                    )
                })
                .collect();
            series_curves(
                &mut sink,
                &curves,
                opts.series_cycles,
                steps,
                opts.series_points_per_cycle,
            )?;
            sink.finish()
        }
        "fig10" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "product-state Bloch trajectories for the time-series initial states",
            );
            let params = ohmic_params();
            sink.note_system(&params, CouplingRegime::OhmicBothCoupled);
            sink.note("p = cos^2(theta0/2)");
            let cases = [(PI / 5.0, 0.05), (PI / 5.0, 0.4), (PI / 3.0, 0.05)];
            let curves: Vec<(ValidatedModel, String)> = cases
                .iter()
                .map(|&(th0, q)| {
                    (
                        validate(
                            params,
                            prod_theta0(th0, q),
                            CouplingRegime::OhmicBothCoupled,
                        )
                        .unwrap(),
                        format!("theta0 = {th0}, q = {q}"),
                    )
                })
                .collect();
            let grid = TimeGrid::quasi_cyclic(1.0, opts.series_cycles, steps);
            trajectory_curves(&mut sink, &curves, grid)?;
            sink.finish()
        }
        "fig11" => {
            let mut sink = PresetSink::new(
                name,
                dir,
                "product-state phase vs bath coupling, with and without the spin-spin term",
            );
            sink.note("theta0 = pi/3 (p = cos^2(pi/6)), gamma0 in [0, 0.05]");
            let cases = [(0.4, 0.0), (0.4, 0.1), (0.01, 0.0), (0.01, 0.1)];
            let gammas: Vec<f64> = Axis {
                parameter: SweepParameter::Gamma0,
                lo: 0.0,
                hi: 0.05,
                count: n,
            }
            .values();
            for (i, &(q, chi)) in cases.iter().enumerate() {
                let rows: Vec<Vec<Cell>> = gammas
                    .iter()
                    .map(|&g0| {
                        let params = SystemParams {
                            chi,
                            gamma0: g0,
                            cutoff: 20.0,
                            ..Default::default()
                        };
                        let model = validate(
                            params,
                            prod_theta0(PI / 3.0, q),
                            CouplingRegime::OhmicBothCoupled,
                        )?;
                        let r = crate::gp::gp_closed_form(&model, &one_cycle)?;
                        Ok(vec![
                            Cell::Value(g0),
                            Cell::Value(r.phase),
                            Cell::Value(r.phase / PI),
                        ])
                    })
                    .collect::<Result<_>>()?;
                sink.curve_csv(
                    i + 1,
                    "gamma0,phase_rad,phase_over_pi",
                    rows,
                    &format!("q = {q}, chi = {chi}"),
                )?;
            }
            sink.finish()
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
