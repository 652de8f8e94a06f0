//! Parameter sweeps over a two-axis grid, evaluated on a worker pool.
//!
//! Cells are pure functions of their parameters, so they can run in any
//! order; assembly is index-ordered, which keeps the CSV deterministic.
//! A failed cell becomes an empty CSV field and a stderr note, never an
//! aborted sweep.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gp::gp_closed_form;
use crate::output::Cell;
use crate::params::{
    lambda0_from_concurrence, validate, CouplingRegime, InitialState, ProductInit, SystemParams,
    TimeGrid, ValidatedModel,
};

/// Parameter a sweep axis can range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Lambda0,
    Concurrence,
    Theta0,
    Gamma0,
    Chi,
    P,
    Q,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Lambda0 => "lambda0",
            SweepParameter::Concurrence => "concurrence",
            SweepParameter::Theta0 => "theta0",
            SweepParameter::Gamma0 => "gamma0",
            SweepParameter::Chi => "chi",
            SweepParameter::P => "p",
            SweepParameter::Q => "q",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lambda0" => Ok(SweepParameter::Lambda0),
            "concurrence" | "c" => Ok(SweepParameter::Concurrence),
            "theta0" => Ok(SweepParameter::Theta0),
            "gamma0" => Ok(SweepParameter::Gamma0),
            "chi" => Ok(SweepParameter::Chi),
            "p" => Ok(SweepParameter::P),
            "q" => Ok(SweepParameter::Q),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep parameter '{other}'"
            ))),
        }
    }
}

/// Inclusive linearly spaced axis.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub parameter: SweepParameter,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|j| {
                // endpoints exact; lo + 63 * step lands subtly off hi
                if j == self.count - 1 {
                    self.hi
                } else {
                    self.lo + step * j as f64
                }
            })
            .collect()
    }
}

/// Which scalar a sweep evaluates per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    /// Closed-form phase for the entangled family, in units of pi.
    GpEntangled,
    /// Closed-form phase for the product family, in units of pi.
    GpProduct,
}

/// A two-axis sweep bound to a base configuration.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    pub quantity: SweepQuantity,
    pub base_params: SystemParams,
    pub base_init: InitialState,
    pub regime: CouplingRegime,
    pub grid: TimeGrid,
}

impl SweepSpec {
    fn check(&self) -> Result<()> {
        if self.axis1.parameter == self.axis2.parameter {
            return Err(Error::InvalidParameter(
                "sweep axes must name distinct parameters".into(),
            ));
        }
        if self.axis1.count < 2 || self.axis2.count < 2 {
            return Err(Error::InvalidParameter("axis counts must be >= 2".into()));
        }
        self.grid.validate()?;
        // Fail early if any axis endpoint leaves its validity domain.
        for axis in [&self.axis1, &self.axis2] {
            for v in [axis.lo, axis.hi] {
                apply(self.base_params, self.base_init, axis.parameter, v)?;
            }
        }
        Ok(())
    }
}

fn apply(
    mut params: SystemParams,
    mut init: InitialState,
    parameter: SweepParameter,
    value: f64,
) -> Result<(SystemParams, InitialState)> {
    match parameter {
        SweepParameter::Gamma0 => params.gamma0 = value,
        SweepParameter::Chi => params.chi = value,
        SweepParameter::Theta0 => match init {
            InitialState::Entangled(mut e) => {
                e.theta0 = value;
                init = InitialState::Entangled(e);
            }
            // Product states take the same angular coordinate through
            // p = cos^2(theta0 / 2).
            InitialState::Product(p) => {
                init = InitialState::Product(ProductInit::from_theta0(value, p.q));
            }
        },
        SweepParameter::Lambda0 | SweepParameter::Concurrence => {
            let mut e = match init {
                InitialState::Entangled(e) => e,
                InitialState::Product(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "axis '{}' needs an entangled initial state",
                        parameter.name()
                    )))
                }
            };
            if parameter == SweepParameter::Lambda0 {
                e.lambda0 = value;
            } else {
                if !(0.0..=1.0).contains(&value) {
                    return Err(Error::InvalidParameter("concurrence out of [0,1]".into()));
                }
                e.lambda0 = lambda0_from_concurrence(value);
            }
            init = InitialState::Entangled(e);
        }
        SweepParameter::P | SweepParameter::Q => {
            let mut pr = match init {
                InitialState::Product(p) => p,
                InitialState::Entangled(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "axis '{}' needs a product initial state",
                        parameter.name()
                    )))
                }
            };
            if parameter == SweepParameter::P {
                pr.p = value;
            } else {
                pr.q = value;
            }
            init = InitialState::Product(pr);
        }
    }
    Ok((params, init))
}

fn cell_model(spec: &SweepSpec, v1: f64, v2: f64) -> Result<ValidatedModel> {
    let (params, init) = apply(spec.base_params, spec.base_init, spec.axis1.parameter, v1)?;
    let (params, init) = apply(params, init, spec.axis2.parameter, v2)?;
    match (spec.quantity, init) {
        (SweepQuantity::GpEntangled, InitialState::Entangled(_)) => {}
        (SweepQuantity::GpProduct, InitialState::Product(_)) => {}
        _ => {
            return Err(Error::InvalidParameter(
                "sweep quantity does not match the initial-state family".into(),
            ))
        }
    }
    validate(params, init, spec.regime)
}

/// Sweep output: one row per cell in row-major axis order, plus the
/// diagnostics of failed cells.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<(f64, f64, Option<f64>)>,
    pub failures: Vec<String>,
}

impl SweepResult {
    pub const CSV_HEADER: &'static str = "axis1,axis2,phase_over_pi";

    pub fn csv_rows(&self) -> impl Iterator<Item = Vec<Cell>> + '_ {
        self.rows.iter().map(|&(a, b, v)| {
            vec![
                Cell::Value(a),
                Cell::Value(b),
                v.map_or(Cell::Empty, Cell::Value),
            ]
        })
    }
}

/// Thread pool sized by `GEOPHASE_THREADS` when set, otherwise by rayon's
/// default.
pub fn worker_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("GEOPHASE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        builder = builder.num_threads(n);
    }
    builder.build().expect("worker pool")
}

/// Evaluates every cell of the sweep on the worker pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.check()?;
    let v1 = spec.axis1.values();
    let v2 = spec.axis2.values();
    let cells: Vec<(f64, f64)> = v1
        .iter()
        .flat_map(|&a| v2.iter().map(move |&b| (a, b)))
        .collect();

    let pool = worker_pool();
    let outcomes: Vec<std::result::Result<f64, String>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(a, b)| {
                cell_model(spec, a, b)
                    .and_then(|m| gp_closed_form(&m, &spec.grid))
                    .map(|r| r.phase / std::f64::consts::PI)
                    .map_err(|e| format!("cell ({a}, {b}): {e}"))
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(cells.len());
    let mut failures = Vec::new();
    for ((a, b), outcome) in cells.into_iter().zip(outcomes) {
        match outcome {
            Ok(v) => rows.push((a, b, Some(v))),
            Err(msg) => {
                rows.push((a, b, None));
                failures.push(msg);
            }
        }
    }
    Ok(SweepResult { rows, failures })
}
