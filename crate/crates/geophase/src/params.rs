//! Physical parameters, initial-state parametrizations and validation.
//!
//! All frequencies are expressed in units of the spin-1 level splitting
//! `omega1`, which is kept as an explicit field so dimensional traces stay
//! auditable. The two bath couplings are equal by construction; distinct
//! couplings per spin are out of scope.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Physical constants of the spin pair and its bosonic bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Level splitting of spin 1 (rad/time, the unit scale).
    pub omega1: f64,
    /// Level splitting of spin 2.
    pub omega2: f64,
    /// Spin-spin coupling strength.
    pub chi: f64,
    /// Dimensionless bath coupling.
    pub gamma0: f64,
    /// Bath cutoff frequency, in units of `omega1`.
    pub cutoff: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega1: 1.0,
            omega2: 1.0,
            chi: 0.0,
            gamma0: 0.0,
            cutoff: 20.0,
        }
    }
}

/// Entangled two-spin initial state: weight `lambda0` on the
/// |00>/|10> pair and Bloch-ball angle `theta0`. The complementary weight
/// `1 - lambda0` is implied, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledInit {
    pub lambda0: f64,
    pub theta0: f64,
}

impl EntangledInit {
    pub fn new(lambda0: f64, theta0: f64) -> Self {
        Self { lambda0, theta0 }
    }

    /// Concurrence of the initial two-spin state, `2 sqrt(l0 (1 - l0))`.
    pub fn concurrence(&self) -> f64 {
        2.0 * (self.lambda0 * (1.0 - self.lambda0)).sqrt()
    }
}

/// Weight `lambda0 <= 1/2` reproducing a given concurrence.
pub fn lambda0_from_concurrence(c: f64) -> f64 {
    (1.0 - (1.0 - c * c).max(0.0).sqrt()) / 2.0
}

/// Product (unentangled) initial state: excitation weights of the two spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductInit {
    pub p: f64,
    pub q: f64,
}

impl ProductInit {
    pub fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    /// Angular coordinate for spin 1, `p = cos^2(theta0 / 2)`.
    pub fn from_theta0(theta0: f64, q: f64) -> Self {
        Self {
            p: (theta0 / 2.0).cos().powi(2),
            q,
        }
    }

    /// Inverse of [`ProductInit::from_theta0`] on `[0, pi]`.
    pub fn theta0(&self) -> f64 {
        2.0 * self.p.sqrt().min(1.0).acos()
    }
}

/// Initial state of the spin pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Entangled(EntangledInit),
    Product(ProductInit),
}

/// Which parts of the composite environment are switched on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    /// No bath and no spin-spin coupling.
    Isolated,
    /// Spin-spin coupling only, no bath.
    ChiOnly,
    /// Both spins coupled to the ohmic bath, plus the spin-spin coupling.
    OhmicBothCoupled,
    /// Spin 1 couples to the bath, spin 2 only through the spin-spin term.
    OhmicSpin2Uncoupled,
}

impl CouplingRegime {
    pub fn name(&self) -> &'static str {
        match self {
            CouplingRegime::Isolated => "isolated",
            CouplingRegime::ChiOnly => "chi-only",
            CouplingRegime::OhmicBothCoupled => "ohmic",
            CouplingRegime::OhmicSpin2Uncoupled => "spin2-uncoupled",
        }
    }
}

impl std::str::FromStr for CouplingRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "isolated" | "iso" => Ok(CouplingRegime::Isolated),
            "chi-only" | "chi" | "chionly" => Ok(CouplingRegime::ChiOnly),
            "ohmic" | "ohmic-both" | "both" => Ok(CouplingRegime::OhmicBothCoupled),
            "spin2-uncoupled" | "s2u" | "uncoupled" => Ok(CouplingRegime::OhmicSpin2Uncoupled),
            other => Err(Error::InvalidParameter(format!(
                "unknown regime '{other}' (expected isolated | chi-only | ohmic | spin2-uncoupled)"
            ))),
        }
    }
}

/// Uniform sampling of `[0, cycles * cycle_time]`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    /// Duration of one quasi-cycle, `2 pi / omega1` by default.
    pub cycle_time: f64,
    /// Number of quasi-cycles covered.
    pub cycles: u32,
    /// Samples per cycle. Must be even (composite Simpson) and >= 16.
    pub steps_per_cycle: usize,
}

impl TimeGrid {
    /// Grid spanning `cycles` quasi-cycles of length `2 pi / omega1`.
    pub fn quasi_cyclic(omega1: f64, cycles: u32, steps_per_cycle: usize) -> Self {
        Self {
            cycle_time: 2.0 * PI / omega1,
            cycles,
            steps_per_cycle,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cycle_time.is_nan() || self.cycle_time <= 0.0 {
            return Err(Error::InvalidParameter(
                "cycle time must be positive".into(),
            ));
        }
        if self.cycles == 0 {
            return Err(Error::InvalidParameter("cycles must be >= 1".into()));
        }
        if self.steps_per_cycle < 16 {
            return Err(Error::InvalidParameter(
                "steps per cycle must be >= 16".into(),
            ));
        }
        if !self.steps_per_cycle.is_multiple_of(4) {
            return Err(Error::InvalidParameter(
                "steps per cycle must be divisible by 4".into(),
            ));
        }
        Ok(())
    }

    pub fn total_time(&self) -> f64 {
        self.cycle_time * self.cycles as f64
    }

    pub fn n_intervals(&self) -> usize {
        self.steps_per_cycle * self.cycles as usize
    }

    pub fn dt(&self) -> f64 {
        self.total_time() / self.n_intervals() as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.n_intervals();
        let dt = self.dt();
        (0..=n).map(|j| j as f64 * dt).collect()
    }
}

/// A parameter set that passed validation, with derived quantities filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedModel {
    pub params: SystemParams,
    pub init: InitialState,
    pub regime: CouplingRegime,
    /// Effective rotation frequency `2 chi - gamma0 * cutoff`.
    pub omega_r: f64,
    /// Concurrence of the initial state; zero for product states.
    pub concurrence: f64,
}

impl ValidatedModel {
    /// Constant diagonal entry of the spin-1 reduced density matrix
    /// (occupation of |0>).
    pub fn population0(&self) -> f64 {
        match self.init {
            InitialState::Entangled(e) => (e.lambda0 - 0.5) * e.theta0.cos() + 0.5,
            InitialState::Product(p) => 1.0 - p.p,
        }
    }

    /// Magnitude of the initial spin-1 coherence before the decoherence
    /// factor is applied.
    pub fn coherence_amplitude(&self) -> f64 {
        match self.init {
            InitialState::Entangled(e) => 0.5 * e.theta0.sin(),
            InitialState::Product(p) => (p.p * (1.0 - p.p)).sqrt(),
        }
    }
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} out of [0,1]")));
    }
    Ok(())
}

/// Validates a configuration and fills the derived fields.
pub fn validate(
    params: SystemParams,
    init: InitialState,
    regime: CouplingRegime,
) -> Result<ValidatedModel> {
    if !params.omega1.is_finite() || params.omega1 <= 0.0 {
        return Err(Error::InvalidParameter("omega1 must be positive".into()));
    }
    if !params.omega2.is_finite() {
        return Err(Error::InvalidParameter("omega2 must be finite".into()));
    }
    if params.gamma0 < 0.0 || !params.gamma0.is_finite() {
        return Err(Error::InvalidParameter("gamma0 must be >= 0".into()));
    }
    if !params.cutoff.is_finite() || params.cutoff <= 0.0 {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    if !params.chi.is_finite() {
        return Err(Error::InvalidParameter("chi must be finite".into()));
    }
    match init {
        InitialState::Entangled(e) => {
            check_unit_interval("lambda0", e.lambda0)?;
            if !e.theta0.is_finite() || !(0.0..=PI).contains(&e.theta0) {
                return Err(Error::InvalidParameter("theta0 out of [0,pi]".into()));
            }
        }
        InitialState::Product(p) => {
            check_unit_interval("p", p.p)?;
            check_unit_interval("q", p.q)?;
        }
    }
    match regime {
        CouplingRegime::Isolated => {
            if params.chi != 0.0 {
                return Err(Error::RegimeConflict(
                    "isolated regime requires chi = 0".into(),
                ));
            }
            if params.gamma0 != 0.0 {
                return Err(Error::RegimeConflict(
                    "isolated regime requires gamma0 = 0".into(),
                ));
            }
        }
        CouplingRegime::ChiOnly if params.gamma0 != 0.0 => {
            return Err(Error::RegimeConflict(
                "chi-only regime requires gamma0 = 0".into(),
            ));
        }
        _ => {}
    }
    let concurrence = match init {
        InitialState::Entangled(e) => e.concurrence(),
        InitialState::Product(_) => 0.0,
    };
    Ok(ValidatedModel {
        params,
        init,
        regime,
        omega_r: 2.0 * params.chi - params.gamma0 * params.cutoff,
        concurrence,
    })
}
