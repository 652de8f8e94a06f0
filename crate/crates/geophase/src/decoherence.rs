//! Closed-form decoherence factors and their polar decomposition.
//!
//! Every coupling regime multiplies the spin-1 coherence by a complex factor
//! `Gamma(t) = r(t) exp(i theta(t))`. The modulus encodes noise, the argument
//! encodes dissipation; both feed the phase integrals downstream. The argument
//! is unwrapped along the grid so it stays differentiable.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::{CouplingRegime, InitialState, TimeGrid, ValidatedModel};

/// Below this modulus a sample is treated as an exact zero of the factor.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Ohmic dephasing envelope `(1 + cutoff^2 t^2)^(-2 gamma0)`.
pub fn envelope(gamma0: f64, cutoff: f64, t: f64) -> f64 {
    (-2.0 * gamma0 * ((cutoff * t) * (cutoff * t)).ln_1p()).exp()
}

/// Envelope switch and rotation frequency for a regime.
fn regime_factors(model: &ValidatedModel) -> (bool, f64) {
    match model.regime {
        CouplingRegime::Isolated => (false, 0.0),
        CouplingRegime::ChiOnly => (false, 2.0 * model.params.chi),
        CouplingRegime::OhmicBothCoupled => (true, model.omega_r),
        CouplingRegime::OhmicSpin2Uncoupled => (true, 2.0 * model.params.chi),
    }
}

fn entangled_kernel(asym: f64, omega: f64, env: f64, t: f64) -> C64 {
    let (s, c) = (omega * t).sin_cos();
    C64::new(env * asym * c, -env * s)
}

fn product_kernel(bias: f64, omega: f64, env: f64, t: f64) -> C64 {
    let (s, c) = (omega * t).sin_cos();
    C64::new(env * c, env * bias * s)
}

fn entangled_asymmetry(model: &ValidatedModel) -> f64 {
    match model.init {
        InitialState::Entangled(e) => 2.0 * e.lambda0 - 1.0,
        InitialState::Product(_) => panic!("entangled factor requested for a product state"),
    }
}

/// Factor for an entangled pair with both spins coupled to the ohmic bath:
/// envelope times `(2 l0 - 1) cos(omega_r t) - i sin(omega_r t)`.
pub fn gamma_entangled_ohmic(model: &ValidatedModel, t: f64) -> C64 {
    let a = entangled_asymmetry(model);
    let env = envelope(model.params.gamma0, model.params.cutoff, t);
    entangled_kernel(a, model.omega_r, env, t)
}

/// Factor for an entangled pair with no bath, spin-spin coupling only.
pub fn gamma_chi_only(model: &ValidatedModel, t: f64) -> C64 {
    let a = entangled_asymmetry(model);
    entangled_kernel(a, 2.0 * model.params.chi, 1.0, t)
}

/// Factor for an entangled pair when only spin 1 sees the bath. Equals
/// [`gamma_chi_only`] multiplied by the real dephasing envelope.
pub fn gamma_spin2_uncoupled(model: &ValidatedModel, t: f64) -> C64 {
    let a = entangled_asymmetry(model);
    let env = envelope(model.params.gamma0, model.params.cutoff, t);
    entangled_kernel(a, 2.0 * model.params.chi, env, t)
}

/// Factor for a product initial state; `Gamma(0) = 1` always.
pub fn gamma_product(model: &ValidatedModel, t: f64) -> C64 {
    let q = match model.init {
        InitialState::Product(p) => p.q,
        InitialState::Entangled(_) => panic!("product factor requested for an entangled state"),
    };
    let (use_env, omega) = regime_factors(model);
    let env = if use_env {
        envelope(model.params.gamma0, model.params.cutoff, t)
    } else {
        1.0
    };
    product_kernel(2.0 * q - 1.0, omega, env, t)
}

/// Decoherence factor for the model's initial state and regime.
pub fn gamma(model: &ValidatedModel, t: f64) -> C64 {
    match model.init {
        InitialState::Entangled(_) => {
            let a = entangled_asymmetry(model);
            let (use_env, omega) = regime_factors(model);
            let env = if use_env {
                envelope(model.params.gamma0, model.params.cutoff, t)
            } else {
                1.0
            };
            entangled_kernel(a, omega, env, t)
        }
        InitialState::Product(_) => gamma_product(model, t),
    }
}

/// Analytic `d theta / dt` of the factor's argument. Real envelopes never
/// contribute. Undefined where the factor itself vanishes.
pub fn theta_dot_analytic(model: &ValidatedModel, t: f64) -> Result<f64> {
    let (_, omega) = regime_factors(model);
    let (s, c) = (omega * t).sin_cos();
    match model.init {
        InitialState::Entangled(_) => {
            let a = entangled_asymmetry(model);
            let denom = a * a * c * c + s * s;
            if denom == 0.0 {
                return Err(Error::UndefinedPhaseDerivative(t));
            }
            Ok(-a * omega / denom)
        }
        InitialState::Product(p) => {
            let b = 2.0 * p.q - 1.0;
            let denom = c * c + b * b * s * s;
            if denom == 0.0 {
                return Err(Error::UndefinedPhaseDerivative(t));
            }
            Ok(b * omega / denom)
        }
    }
}

/// Argument with negative zeros flushed, so that a negative real value maps
/// to +pi rather than -pi.
fn arg_canonical(z: C64) -> f64 {
    (z.im + 0.0).atan2(z.re + 0.0)
}

fn wrap_to_pi(x: f64) -> f64 {
    let mut y = x % (2.0 * std::f64::consts::PI);
    if y > std::f64::consts::PI {
        y -= 2.0 * std::f64::consts::PI;
    } else if y <= -std::f64::consts::PI {
        y += 2.0 * std::f64::consts::PI;
    }
    y
}

/// The decoherence factor sampled on a time grid, in polar form with an
/// unwrapped argument and its derivative.
#[derive(Debug, Clone)]
pub struct DecoherenceTrace {
    pub grid: TimeGrid,
    pub times: Vec<f64>,
    pub gamma_values: Vec<C64>,
    pub r_values: Vec<f64>,
    /// Unwrapped argument, continuous along the grid.
    pub theta_values: Vec<f64>,
    pub theta_dot_values: Vec<f64>,
}

/// Samples the factor on `grid` and unwraps its argument.
///
/// Samples with `r < DEGENERACY_EPS` carry the last defined argument; if the
/// whole interval is below the threshold the trace is degenerate and the
/// caller must switch to the degenerate-evolution treatment.
pub fn polar_trace(model: &ValidatedModel, grid: &TimeGrid) -> Result<DecoherenceTrace> {
    grid.validate()?;
    let times = grid.times();
    let gamma_values: Vec<C64> = times.iter().map(|&t| gamma(model, t)).collect();
    let r_values: Vec<f64> = gamma_values.iter().map(|g| g.norm()).collect();
    if r_values.iter().all(|&r| r < DEGENERACY_EPS) {
        return Err(Error::DegenerateTrace);
    }

    let n = times.len();
    let mut theta_values = vec![0.0; n];
    let mut last_defined: Option<usize> = None;
    for j in 0..n {
        if r_values[j] < DEGENERACY_EPS {
            theta_values[j] = if j > 0 { theta_values[j - 1] } else { 0.0 };
            continue;
        }
        let raw = arg_canonical(gamma_values[j]);
        theta_values[j] = match last_defined {
            None => {
                // Backfill any leading zero samples with the first branch value.
                for v in theta_values.iter_mut().take(j) {
                    *v = raw;
                }
                raw
            }
            Some(prev) => theta_values[prev] + wrap_to_pi(raw - theta_values[prev]),
        };
        last_defined = Some(j);
    }

    let theta_dot_values: Vec<f64> = times
        .iter()
        .zip(&r_values)
        .map(|(&t, &r)| {
            match theta_dot_analytic(model, t) {
                Ok(v) => v,
                // Only reachable at exact zeros of the factor; the argument
                // is piecewise constant there.
                Err(_) => {
                    debug_assert!(r < 1e-6);
                    0.0
                }
            }
        })
        .collect();

    Ok(DecoherenceTrace {
        grid: *grid,
        times,
        gamma_values,
        r_values,
        theta_values,
        theta_dot_values,
    })
}

impl DecoherenceTrace {
    /// Central finite difference of the unwrapped argument (one-sided at the
    /// endpoints). Cross-check for the analytic derivative.
    pub fn theta_dot_finite_difference(&self, j: usize) -> f64 {
        let n = self.times.len();
        let dt = self.grid.dt();
        if j == 0 {
            (self.theta_values[1] - self.theta_values[0]) / dt
        } else if j == n - 1 {
            (self.theta_values[n - 1] - self.theta_values[n - 2]) / dt
        } else {
            (self.theta_values[j + 1] - self.theta_values[j - 1]) / (2.0 * dt)
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle digits stay as computed
mod tests {
    use super::*;
    use crate::params::{
        validate, CouplingRegime, EntangledInit, InitialState, ProductInit, SystemParams,
    };
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn model_ent(
        lambda0: f64,
        theta0: f64,
        regime: CouplingRegime,
        chi: f64,
        gamma0: f64,
    ) -> ValidatedModel {
        let p = SystemParams {
            chi,
            gamma0,
            ..Default::default()
        };
        validate(
            p,
            InitialState::Entangled(EntangledInit::new(lambda0, theta0)),
            regime,
        )
        .unwrap()
    }

    fn model_prod(p: f64, q: f64, regime: CouplingRegime, chi: f64, gamma0: f64) -> ValidatedModel {
        let sp = SystemParams {
            chi,
            gamma0,
            ..Default::default()
        };
        validate(sp, InitialState::Product(ProductInit::new(p, q)), regime).unwrap()
    }

    #[test]
    fn entangled_factor_at_zero_is_weight_asymmetry() {
        for lam0 in [0.0, 0.2, 0.5, 0.8, 1.0] {
            let m = model_ent(lam0, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
            let g = gamma(&m, 0.0);
            assert_relative_eq!(g.re, 2.0 * lam0 - 1.0);
            assert_eq!(g.im, 0.0);
        }
    }

    #[test]
    fn isolated_factor_is_constant() {
        let m = model_ent(0.2, 0.4, CouplingRegime::Isolated, 0.0, 0.0);
        for t in [0.0, 1.0, 5.0, 20.0] {
            assert_relative_eq!(gamma(&m, t).re, -0.6);
            assert_eq!(gamma(&m, t).im, 0.0);
        }
    }

    #[test]
    fn mes_chi_only_factor_is_pure_dissipation() {
        let m = model_ent(0.5, 0.4, CouplingRegime::ChiOnly, 0.1, 0.0);
        for t in [0.3, 1.7, 4.0] {
            let g = gamma(&m, t);
            assert_relative_eq!(g.re, 0.0);
            assert_relative_eq!(g.im, -(0.2 * t).sin());
        }
    }

    #[test]
    fn chi_only_half_period_value() {
        // cos(pi) = -1, sin(pi) = 0 at t = pi / (2 chi)
        let m = model_ent(0.3, 0.4, CouplingRegime::ChiOnly, 0.1, 0.0);
        let g = gamma(&m, PI / 0.2);
        assert_relative_eq!(g.re, 0.4, epsilon = 1e-12);
        assert_relative_eq!(g.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ohmic_factor_matches_independent_evaluation() {
        // Frozen from a 30-digit evaluation of the closed form.
        let m = model_ent(0.2, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
        let g = gamma_entangled_ohmic(&m, PI);
        assert_relative_eq!(g.re, -0.34853797669482142, epsilon = 1e-15);
        assert_relative_eq!(g.im, 0.42204610448954851, epsilon = 1e-15);
    }

    #[test]
    fn spin2_uncoupled_matches_independent_evaluation() {
        let m = model_ent(0.5, 0.4, CouplingRegime::OhmicSpin2Uncoupled, 0.1, 0.02);
        let g = gamma_spin2_uncoupled(&m, 2.0 * PI);
        assert_relative_eq!(g.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(g.im, -0.64605342972434782, epsilon = 1e-15);
    }

    #[test]
    fn product_factor_matches_independent_evaluation() {
        let m = model_prod(0.3, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
        let g = gamma_product(&m, PI);
        assert_relative_eq!(g.re, 0.58089662782470236, epsilon = 1e-15);
        assert_relative_eq!(g.im, 0.08440922089790970, epsilon = 1e-15);
    }

    #[test]
    fn product_factor_is_one_at_zero() {
        for q in [0.0, 0.4, 1.0] {
            let m = model_prod(0.3, q, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
            assert_eq!(gamma(&m, 0.0), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn balanced_product_factor_is_real() {
        let m = model_prod(0.3, 0.5, CouplingRegime::ChiOnly, 0.1, 0.0);
        for t in [0.5, 2.0, 6.0] {
            let g = gamma(&m, t);
            assert_relative_eq!(g.re, (0.2 * t).cos());
            assert_eq!(g.im, 0.0);
        }
    }

    #[test]
    fn spin2_uncoupled_is_envelope_times_chi_only() {
        let m = model_ent(0.27, 0.4, CouplingRegime::OhmicSpin2Uncoupled, 0.13, 0.04);
        for t in [0.0, 0.7, 3.1, 6.2] {
            let lhs = gamma_spin2_uncoupled(&m, t);
            let rhs = gamma_chi_only(&m, t) * envelope(0.04, 20.0, t);
            assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-15);
            assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn constant_negative_factor_unwraps_to_pi() {
        let m = model_ent(0.3, 0.4, CouplingRegime::Isolated, 0.0, 0.0);
        let grid = TimeGrid::quasi_cyclic(1.0, 1, 64);
        let tr = polar_trace(&m, &grid).unwrap();
        for (&r, &th) in tr.r_values.iter().zip(&tr.theta_values) {
            assert_relative_eq!(r, 0.4);
            assert_relative_eq!(th, PI);
        }
        assert!(tr.theta_dot_values.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn chi_only_argument_starts_at_pi_and_stays_continuous() {
        let m = model_ent(0.3, 0.4, CouplingRegime::ChiOnly, 0.1, 0.0);
        let grid = TimeGrid::quasi_cyclic(1.0, 1, 256);
        let tr = polar_trace(&m, &grid).unwrap();
        assert_relative_eq!(tr.theta_values[0], PI);
        for w in tr.theta_values.windows(2) {
            assert!((w[1] - w[0]).abs() < PI);
        }
        // winds forward: negative real and negative imaginary just after 0
        assert!(tr.theta_values[1] > PI);
    }

    #[test]
    fn fully_degenerate_trace_is_rejected() {
        let m = model_ent(0.5, 0.4, CouplingRegime::Isolated, 0.0, 0.0);
        let grid = TimeGrid::quasi_cyclic(1.0, 1, 64);
        match polar_trace(&m, &grid) {
            Err(Error::DegenerateTrace) => {}
            other => panic!("expected DegenerateTrace, got {other:?}"),
        }
    }

    #[test]
    fn analytic_theta_dot_matches_finite_differences() {
        let m = model_ent(0.2, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
        let grid = TimeGrid::quasi_cyclic(1.0, 1, 4096);
        let tr = polar_trace(&m, &grid).unwrap();
        for j in (1..tr.times.len() - 1).step_by(37) {
            if tr.r_values[j] < 1e-6 {
                continue;
            }
            let fd = tr.theta_dot_finite_difference(j);
            let an = tr.theta_dot_values[j];
            assert!(
                (fd - an).abs() <= 1e-6 * an.abs().max(1.0),
                "j={j}: fd={fd} analytic={an}"
            );
        }
    }

    #[test]
    fn theta_dot_is_constant_rotation_for_pure_weights() {
        let m = model_ent(1.0, 0.4, CouplingRegime::ChiOnly, 0.1, 0.0);
        for t in [0.1, 1.0, 3.0] {
            assert_relative_eq!(theta_dot_analytic(&m, t).unwrap(), -0.2);
        }
    }

    #[test]
    fn theta_dot_undefined_at_zero_of_degenerate_factor() {
        let m = model_ent(0.5, 0.4, CouplingRegime::ChiOnly, 0.1, 0.0);
        assert!(theta_dot_analytic(&m, 0.0).is_err());
        assert_eq!(theta_dot_analytic(&m, 1.0).unwrap(), 0.0);
    }

    proptest! {
        #[test]
        fn modulus_never_exceeds_one(
            lam0 in 0.0f64..=1.0,
            chi in 0.0f64..=0.3,
            g0 in 0.0f64..=0.2,
            t in 0.0f64..=50.0,
        ) {
            for regime in [
                CouplingRegime::ChiOnly,
                CouplingRegime::OhmicBothCoupled,
                CouplingRegime::OhmicSpin2Uncoupled,
            ] {
                let g0r = if regime == CouplingRegime::ChiOnly { 0.0 } else { g0 };
                let m = model_ent(lam0, 0.4, regime, chi, g0r);
                prop_assert!(gamma(&m, t).norm() <= 1.0 + 1e-12);
            }
        }

        #[test]
        fn weight_swap_flips_real_part_only(
            lam0 in 0.0f64..=1.0,
            t in 0.0f64..=20.0,
        ) {
            let a = gamma(&model_ent(lam0, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02), t);
            let b = gamma(&model_ent(1.0 - lam0, 0.4, CouplingRegime::OhmicBothCoupled, 0.1, 0.02), t);
            prop_assert!((a.re + b.re).abs() < 1e-12);
            prop_assert!((a.im - b.im).abs() < 1e-12);
        }

        #[test]
        fn polar_modulus_agrees_with_norm(
            lam0 in 0.0f64..=1.0,
            chi in 0.0f64..=0.3,
        ) {
            let m = model_ent(lam0, 0.9, CouplingRegime::OhmicBothCoupled, chi, 0.02);
            let grid = TimeGrid::quasi_cyclic(1.0, 1, 64);
            if let Ok(tr) = polar_trace(&m, &grid) {
                for (g, &r) in tr.gamma_values.iter().zip(&tr.r_values) {
                    prop_assert!((g.norm() - r).abs() < 1e-12);
                }
            }
        }
    }
}
