//! Density matrices of the spin pair and of spin 1 alone, plus the map to
//! Bloch-ball coordinates.
//!
//! The two-spin matrix follows the basis order |00>, |01>, |10>, |11>. Its
//! off-diagonal entries carry free phases fixed by the level splittings and
//! the spin-spin coupling, multiplied by environment factors `F_ij`. Tracing
//! out spin 2 reproduces the closed-form single-spin matrices, which is the
//! consistency check tying the two representations together.

use num_complex::Complex64 as C64;

use crate::decoherence::{envelope, gamma};
use crate::error::{Error, Result};
use crate::params::{EntangledInit, ProductInit, SystemParams, TimeGrid, ValidatedModel};

/// Environment factors multiplying the six upper off-diagonal entries of the
/// two-spin density matrix, in the order F12, F13, F14, F23, F24, F34.
/// Each must equal 1 at t = 0 and stay inside the unit disk.
#[derive(Debug, Clone, Copy)]
pub enum FFactorSet {
    /// No environment: all six factors are 1.
    AllOnes,
    /// Only spin 1 sees the bath: F12 = F34 = 1 and the four factors touching
    /// a spin-1 flip carry the real dephasing envelope.
    Spin2Uncoupled { gamma0: f64, cutoff: f64 },
    /// Both spins see the bath. The spin-flip factors carry the envelope with
    /// a bath-induced frequency-shift phase; the double-flip factor decays
    /// four times faster; the zero-total-weight pair |01>,|10> is untouched
    /// by the collective coupling.
    OhmicInferred { gamma0: f64, cutoff: f64 },
    /// Arbitrary factors, mostly for tests.
    Custom(fn(f64) -> [C64; 6]),
}

impl FFactorSet {
    pub fn eval(&self, t: f64) -> [C64; 6] {
        let one = C64::new(1.0, 0.0);
        match *self {
            FFactorSet::AllOnes => [one; 6],
            FFactorSet::Spin2Uncoupled { gamma0, cutoff } => {
                let d = C64::new(envelope(gamma0, cutoff, t), 0.0);
                [one, d, d, d, d, one]
            }
            FFactorSet::OhmicInferred { gamma0, cutoff } => {
                let d = envelope(gamma0, cutoff, t);
                let shift = C64::from_polar(1.0, gamma0 * cutoff * t);
                let up = shift * d;
                let down = shift.conj() * d;
                [up, up, C64::new(d.powi(4), 0.0), one, down, down]
            }
            FFactorSet::Custom(f) => f(t),
        }
    }
}

/// Two-spin density matrix at one instant, basis |00>, |01>, |10>, |11>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteDensity(pub [[C64; 4]; 4]);

/// Single-qubit density matrix at one instant, basis |0>, |1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensity(pub [[C64; 2]; 2]);

/// Point in the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochPoint {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// One sample of a Bloch trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub point: BlochPoint,
    pub purity: f64,
}

/// Amplitudes of the entangled initial state on |00>, |01>, |10>, |11>.
pub fn entangled_coefficients(init: &EntangledInit) -> [C64; 4] {
    let l1 = 1.0 - init.lambda0;
    let (s, c) = (init.theta0 / 2.0).sin_cos();
    [
        C64::new(init.lambda0.sqrt() * c, 0.0),
        C64::new(-l1.sqrt() * s, 0.0),
        C64::new(init.lambda0.sqrt() * s, 0.0),
        C64::new(l1.sqrt() * c, 0.0),
    ]
}

/// Amplitudes of the product initial state on |00>, |01>, |10>, |11>.
pub fn product_coefficients(init: &ProductInit) -> [C64; 4] {
    let (p, q) = (init.p, init.q);
    [
        C64::new(((1.0 - p) * (1.0 - q)).sqrt(), 0.0),
        C64::new(((1.0 - p) * q).sqrt(), 0.0),
        C64::new((p * (1.0 - q)).sqrt(), 0.0),
        C64::new((p * q).sqrt(), 0.0),
    ]
}

/// Two-spin reduced density matrix at time `t` for initial amplitudes
/// `coeffs` and environment factors `f`.
#[allow(clippy::needless_range_loop)]
pub fn bipartite_density(
    t: f64,
    coeffs: [C64; 4],
    params: &SystemParams,
    f: &FFactorSet,
) -> Result<BipartiteDensity> {
    let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "initial amplitudes not normalized: |.|^2 sums to {norm}"
        )));
    }
    let [al, be, ze, de] = coeffs;
    let (o1, o2, chi) = (params.omega1, params.omega2, params.chi);
    let fv = f.eval(t);
    let ph = |w: f64| C64::from_polar(1.0, -w * t);

    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    m[0][0] = C64::new(al.norm_sqr(), 0.0);
    m[1][1] = C64::new(be.norm_sqr(), 0.0);
    m[2][2] = C64::new(ze.norm_sqr(), 0.0);
    m[3][3] = C64::new(de.norm_sqr(), 0.0);
    m[0][1] = al * be.conj() * ph(2.0 * chi + o2) * fv[0];
    m[0][2] = al * ze.conj() * ph(2.0 * chi + o1) * fv[1];
    m[0][3] = al * de.conj() * ph(o1 + o2) * fv[2];
    m[1][2] = be * ze.conj() * ph(o1 - o2) * fv[3];
    m[1][3] = be * de.conj() * ph(o1 - 2.0 * chi) * fv[4];
    m[2][3] = ze * de.conj() * ph(o2 - 2.0 * chi) * fv[5];
    for i in 1..4 {
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
    Ok(BipartiteDensity(m))
}

/// Partial trace over spin 2, pairing |00>,|01> and |10>,|11>.
pub fn trace_out_spin2(rho: &BipartiteDensity) -> QubitDensity {
    let m = &rho.0;
    let c = m[0][2] + m[1][3];
    QubitDensity([[m[0][0] + m[1][1], c], [c.conj(), m[2][2] + m[3][3]]])
}

/// Spin-1 reduced density matrix straight from the closed forms: constant
/// diagonal, coherence rotating at `omega1` under the decoherence factor.
pub fn reduced_density_spin1(model: &ValidatedModel, t: f64) -> QubitDensity {
    let a = model.population0();
    let c = model.coherence_amplitude()
        * C64::from_polar(1.0, -model.params.omega1 * t)
        * gamma(model, t);
    QubitDensity([[C64::new(a, 0.0), c], [c.conj(), C64::new(1.0 - a, 0.0)]])
}

impl BipartiteDensity {
    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }
}

impl QubitDensity {
    /// Occupation of |0>, real by construction.
    pub fn population0(&self) -> f64 {
        self.0[0][0].re
    }

    /// Upper off-diagonal entry (the coherence).
    pub fn coherence(&self) -> C64 {
        self.0[0][1]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn purity(&self) -> f64 {
        let a = self.0[0][0].re;
        let b = self.0[1][1].re;
        a * a + b * b + 2.0 * self.0[0][1].norm_sqr()
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let half_gap = ((2.0 * a - 1.0).powi(2) + 4.0 * self.0[0][1].norm_sqr()).sqrt() / 2.0;
        (0.5 + half_gap, 0.5 - half_gap)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        ((self.0[0][1] - self.0[1][0].conj()).norm())
            .max(self.0[0][0].im.abs())
            .max(self.0[1][1].im.abs())
    }
}

/// Bloch coordinates `x = 2 Re c`, `y = -2 Im c`, `z = a - b`.
pub fn bloch_coords(rho: &QubitDensity) -> BlochPoint {
    let c = rho.coherence();
    BlochPoint {
        x: 2.0 * c.re,
        y: -2.0 * c.im,
        z: rho.0[0][0].re - rho.0[1][1].re,
    }
}

/// Bloch trajectory of spin 1 over the grid.
pub fn trajectory(model: &ValidatedModel, grid: &TimeGrid) -> Result<Vec<TrajectoryPoint>> {
    grid.validate()?;
    Ok(grid
        .times()
        .into_iter()
        .map(|t| {
            let rho = reduced_density_spin1(model, t);
            TrajectoryPoint {
                t,
                point: bloch_coords(&rho),
                purity: rho.purity(),
            }
        })
        .collect())
}
