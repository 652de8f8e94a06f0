//! Gauge-fixed eigendecomposition of the spin-1 density matrix along a
//! trajectory, with continuous branch tracking.
//!
//! Gauge: the |1> component of every emitted eigenvector is real and
//! nonnegative; the |0> component carries the whole phase. When a branch is
//! exactly |0>-aligned the coherence is zero and its phase is taken from the
//! decoherence trace instead, so eigenvectors stay continuous in time and
//! reproducible across runs.

use num_complex::Complex64 as C64;

use crate::decoherence::DecoherenceTrace;
use crate::density::{reduced_density_spin1, QubitDensity};
use crate::error::{Error, Result};
use crate::params::{TimeGrid, ValidatedModel};

/// Eigenvalue gap below which a sample counts as degenerate.
pub const DEGENERATE_GAP: f64 = 1e-9;

/// Eigen-data of the reduced density matrix at one grid point.
#[derive(Debug, Clone, Copy)]
pub struct SpectralSample {
    pub eps_plus: f64,
    pub eps_minus: f64,
    pub v_plus: [C64; 2],
    pub v_minus: [C64; 2],
    pub degenerate: bool,
}

impl SpectralSample {
    pub fn branch(&self, k: usize) -> &[C64; 2] {
        if k == 0 {
            &self.v_plus
        } else {
            &self.v_minus
        }
    }
}

pub fn inner(a: &[C64; 2], b: &[C64; 2]) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Eigendecomposition of one sample.
///
/// `phase_hint` is the phase of the coherence at this instant (unwrapped
/// factor argument minus the free rotation); it fixes the gauge of a branch
/// whose |0> component would otherwise carry an indeterminate phase.
/// `previous` is consulted only when this sample is degenerate; the previous
/// eigenvectors are carried through so branches stay continuous.
pub fn eigensystem(
    rho: &QubitDensity,
    phase_hint: f64,
    previous: Option<&SpectralSample>,
) -> SpectralSample {
    let a = rho.population0();
    let c = rho.coherence();
    let csq = c.norm_sqr();
    let z = 2.0 * a - 1.0;
    let gap = (z * z + 4.0 * csq).sqrt();
    let eps_plus = 0.5 + gap / 2.0;
    let eps_minus = 0.5 - gap / 2.0;
    let degenerate = gap < DEGENERATE_GAP;

    if degenerate {
        if let Some(prev) = previous {
            return SpectralSample {
                eps_plus,
                eps_minus,
                v_plus: prev.v_plus,
                v_minus: prev.v_minus,
                degenerate: true,
            };
        }
    }

    let (v_plus, v_minus) = if c == C64::new(0.0, 0.0) {
        let aligned = [C64::from_polar(1.0, phase_hint), C64::new(0.0, 0.0)];
        let anti = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        if a >= 0.5 {
            (aligned, anti)
        } else {
            (anti, aligned)
        }
    } else {
        // |1> components, written to avoid cancellation for small coherences.
        let d_plus = if z > 0.0 {
            2.0 * csq / (gap + z)
        } else {
            (gap - z) / 2.0
        };
        let d_minus = if z < 0.0 {
            2.0 * csq / (gap - z)
        } else {
            (gap + z) / 2.0
        };
        let np = (csq + d_plus * d_plus).sqrt();
        let nm = (csq + d_minus * d_minus).sqrt();
        (
            [c / np, C64::new(d_plus / np, 0.0)],
            [-c / nm, C64::new(d_minus / nm, 0.0)],
        )
    };

    SpectralSample {
        eps_plus,
        eps_minus,
        v_plus,
        v_minus,
        degenerate,
    }
}

/// Closed-form mixing-angle cosine for the entangled family:
/// `r sin(theta0) / sqrt(r^2 sin^2(theta0) + [(2 eps - 1) + (1 - 2 l0) cos(theta0)]^2)`.
///
/// Cross-check only; the generic eigensystem is authoritative.
pub fn mixing_angle_cos(model: &ValidatedModel, eps: f64, r: f64) -> Result<f64> {
    let e = match model.init {
        crate::params::InitialState::Entangled(e) => e,
        crate::params::InitialState::Product(_) => {
            return Err(Error::InvalidParameter(
                "mixing-angle closed form applies to the entangled family".into(),
            ))
        }
    };
    let num = r * e.theta0.sin();
    let bracket = (2.0 * eps - 1.0) + (1.0 - 2.0 * e.lambda0) * e.theta0.cos();
    let denom = (num * num + bracket * bracket).sqrt();
    if denom < 1e-300 {
        return Err(Error::UndefinedPhase);
    }
    Ok(num / denom)
}

/// Eigen-data along a whole trajectory.
#[derive(Debug, Clone)]
pub struct SpectralTrajectory {
    pub grid: TimeGrid,
    pub times: Vec<f64>,
    pub samples: Vec<SpectralSample>,
    pub degenerate_at: Vec<usize>,
    /// Every sample is maximally mixed; the branch machinery does not apply.
    pub fully_degenerate: bool,
}

impl SpectralTrajectory {
    /// Modulus of the |0> component, i.e. the mixing-angle cosine.
    pub fn cos_theta_plus(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.v_plus[0].norm()).collect()
    }

    pub fn cos_theta_minus(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.v_minus[0].norm()).collect()
    }
}

/// Decomposes the reduced state on every grid point of `trace`, fixing the
/// gauge from the unwrapped argument and resolving degenerate samples by
/// one-sided continuity.
pub fn spectral_trajectory(
    model: &ValidatedModel,
    trace: &DecoherenceTrace,
) -> Result<SpectralTrajectory> {
    let times = &trace.times;
    let omega1 = model.params.omega1;
    let n = times.len();
    let mut samples: Vec<SpectralSample> = Vec::with_capacity(n);
    let mut degenerate_at = Vec::new();

    let hint_at = |j: usize| trace.theta_values[j] - omega1 * times[j];
    #[allow(clippy::needless_range_loop)] // walks several parallel arrays
    for j in 0..n {
        let rho = reduced_density_spin1(model, times[j]);
        let hint = hint_at(j);
        let prev = samples.last();
        let mut s = eigensystem(&rho, hint, prev);
        if s.degenerate && j > 0 {
            // Carried vectors must keep following the local phase flow, or
            // an isolated degeneracy leaves them one step stale.
            let rot = C64::from_polar(1.0, hint - hint_at(j - 1));
            s.v_plus[0] *= rot;
            s.v_minus[0] *= rot;
        }
        if let Some(p) = prev {
            // Keep branches continuous: swap labels if the crossed pairing
            // overlaps better. Only ever triggers around degeneracies.
            let straight =
                inner(&p.v_plus, &s.v_plus).norm_sqr() + inner(&p.v_minus, &s.v_minus).norm_sqr();
            let crossed =
                inner(&p.v_plus, &s.v_minus).norm_sqr() + inner(&p.v_minus, &s.v_plus).norm_sqr();
            if crossed > straight {
                std::mem::swap(&mut s.v_plus, &mut s.v_minus);
                std::mem::swap(&mut s.eps_plus, &mut s.eps_minus);
            }
        }
        if s.degenerate {
            degenerate_at.push(j);
        }
        samples.push(s);
    }

    let fully_degenerate = degenerate_at.len() == n;
    if !fully_degenerate && samples[0].degenerate {
        // t = 0 eigenvectors as the limit from t -> 0+: copy the first
        // resolved sample and undo its free rotation on the |0> component.
        if let Some(&j1) = (1..n).find(|&j| !samples[j].degenerate).as_ref() {
            let rot = C64::from_polar(1.0, omega1 * times[j1]);
            let mut s0 = samples[j1];
            s0.v_plus[0] *= rot;
            s0.v_minus[0] *= rot;
            let rho0 = reduced_density_spin1(model, times[0]);
            let (ep, em) = rho0.eigenvalues();
            s0.eps_plus = ep;
            s0.eps_minus = em;
            s0.degenerate = true;
            samples[0] = s0;
        }
    }

    Ok(SpectralTrajectory {
        grid: trace.grid,
        times: times.clone(),
        samples,
        degenerate_at,
        fully_degenerate,
    })
}
