//! Plain-text configuration: `key = value` lines mapping one-to-one onto the
//! model fields, with the same keys accepted as CLI flags. CLI flags win over
//! file values.

use std::path::Path;

use crate::error::{Error, Result};
use crate::params::{
    validate, CouplingRegime, EntangledInit, InitialState, ProductInit, SystemParams, TimeGrid,
    ValidatedModel,
};

/// Partially specified run configuration. Unset fields fall back to defaults
/// at build time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub chi: Option<f64>,
    pub gamma0: Option<f64>,
    pub cutoff: Option<f64>,
    pub lambda0: Option<f64>,
    pub theta0: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub regime: Option<CouplingRegime>,
    pub cycles: Option<u32>,
    pub steps: Option<usize>,
}

impl RunConfig {
    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        let text = std::fs::read_to_string(&path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: String| Error::Config(format!("line {}: {e}", lineno + 1));
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .map_err(|_| bad(format!("'{value}' is not a number")))
            };
            match key {
                "omega1" => cfg.omega1 = Some(num()?),
                "omega2" => cfg.omega2 = Some(num()?),
                "chi" => cfg.chi = Some(num()?),
                "gamma0" => cfg.gamma0 = Some(num()?),
                "cutoff" => cfg.cutoff = Some(num()?),
                "lambda0" => cfg.lambda0 = Some(num()?),
                "theta0" => cfg.theta0 = Some(num()?),
                "p" => cfg.p = Some(num()?),
                "q" => cfg.q = Some(num()?),
                "regime" => cfg.regime = Some(value.parse()?),
                "cycles" => {
                    cfg.cycles = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("'{value}' is not an integer")))?,
                    )
                }
                "steps" => {
                    cfg.steps = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("'{value}' is not an integer")))?,
                    )
                }
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }

    /// Overlays `other` (typically CLI flags) on top of this configuration.
    pub fn overlay(&self, other: &RunConfig) -> RunConfig {
        RunConfig {
            omega1: other.omega1.or(self.omega1),
            omega2: other.omega2.or(self.omega2),
            chi: other.chi.or(self.chi),
            gamma0: other.gamma0.or(self.gamma0),
            cutoff: other.cutoff.or(self.cutoff),
            lambda0: other.lambda0.or(self.lambda0),
            theta0: other.theta0.or(self.theta0),
            p: other.p.or(self.p),
            q: other.q.or(self.q),
            regime: other.regime.or(self.regime),
            cycles: other.cycles.or(self.cycles),
            steps: other.steps.or(self.steps),
        }
    }

    pub fn system_params(&self) -> SystemParams {
        let d = SystemParams::default();
        SystemParams {
            omega1: self.omega1.unwrap_or(d.omega1),
            omega2: self.omega2.unwrap_or(self.omega1.unwrap_or(d.omega1)),
            chi: self.chi.unwrap_or(d.chi),
            gamma0: self.gamma0.unwrap_or(d.gamma0),
            cutoff: self.cutoff.unwrap_or(d.cutoff),
        }
    }

    pub fn initial_state(&self) -> Result<InitialState> {
        let entangled = self.lambda0.is_some() || self.theta0.is_some();
        let product = self.p.is_some() || self.q.is_some();
        match (entangled, product) {
            (true, true) => Err(Error::Config(
                "lambda0/theta0 and p/q are mutually exclusive".into(),
            )),
            (false, false) => Err(Error::Config(
                "initial state unspecified: set lambda0/theta0 or p/q".into(),
            )),
            (true, false) => {
                let lambda0 = self
                    .lambda0
                    .ok_or_else(|| Error::Config("entangled state needs lambda0".into()))?;
                Ok(InitialState::Entangled(EntangledInit::new(
                    lambda0,
                    self.theta0.unwrap_or(0.0),
                )))
            }
            (false, true) => {
                let p = self
                    .p
                    .ok_or_else(|| Error::Config("product state needs p".into()))?;
                Ok(InitialState::Product(ProductInit::new(
                    p,
                    self.q.unwrap_or(0.0),
                )))
            }
        }
    }

    /// Explicit regime, or the weakest one consistent with the couplings.
    pub fn effective_regime(&self) -> CouplingRegime {
        if let Some(r) = self.regime {
            return r;
        }
        if self.gamma0.unwrap_or(0.0) > 0.0 {
            CouplingRegime::OhmicBothCoupled
        } else if self.chi.unwrap_or(0.0) != 0.0 {
            CouplingRegime::ChiOnly
        } else {
            CouplingRegime::Isolated
        }
    }

    pub fn build(&self) -> Result<(ValidatedModel, TimeGrid)> {
        let params = self.system_params();
        let model = validate(params, self.initial_state()?, self.effective_regime())?;
        let grid = TimeGrid::quasi_cyclic(
            params.omega1,
            self.cycles.unwrap_or(1),
            self.steps.unwrap_or(512),
        );
        grid.validate()?;
        Ok((model, grid))
    }
}
