//! Geometric phase of spin 1 over a quasi-cyclic window, by two routes.
//!
//! The closed-form route decomposes the phase into two eigenbranch terms,
//! each an endpoint overlap times the exponential of an accumulated
//! connection integral evaluated by composite Simpson. The discretized route
//! evaluates the defining functional directly: a gauge-invariant
//! parallel-transport product over the sampled eigenvectors, Richardson
//! extrapolated once. The two must agree; the discretized route is the
//! in-crate oracle for the closed form.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::decoherence::{gamma, polar_trace, DecoherenceTrace, DEGENERACY_EPS};
use crate::error::{Error, Result};
use crate::params::{InitialState, TimeGrid, ValidatedModel};
use crate::spectral::{inner, spectral_trajectory, SpectralTrajectory};

/// Step-halving change below which the closed-form quadrature is converged.
pub const QUADRATURE_CONVERGENCE: f64 = 1e-8;

/// Geometric-phase value with its audit trail.
#[derive(Debug, Clone, Copy)]
pub struct GpResult {
    /// Phase in `[0, 2 pi)`.
    pub phase: f64,
    /// The two complex branch summands; absent for the degenerate assignment.
    pub branch_terms: Option<[C64; 2]>,
    /// Pre-reduction complex branch sum, exposed for audit.
    pub sum: Option<C64>,
    /// Set when the value comes from the degenerate-evolution rule.
    pub degenerate: bool,
    /// Closed-form phase change under step halving.
    pub halving_delta: f64,
    /// Discretized defining-functional value, when evaluated.
    pub oracle_phase: Option<f64>,
    /// Circular distance between the closed form and the oracle.
    pub oracle_delta: Option<f64>,
}

impl GpResult {
    /// Whether the closed-form quadrature met the step-halving declaration.
    pub fn converged(&self) -> bool {
        self.halving_delta < QUADRATURE_CONVERGENCE
    }
}

/// Maps a phase to `[0, 2 pi)`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y == 2.0 * PI {
        0.0
    } else {
        y
    }
}

/// Shortest circular distance between two phases.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn wrap_to_pi(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    } else if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

/// Composite Simpson over an odd number of uniformly spaced samples.
fn simpson(values: &[f64], dt: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    let mut s = values[0] + values[n];
    for (j, v) in values.iter().enumerate().take(n).skip(1) {
        s += if j % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * dt / 3.0
}

/// Everything both phase routes need, computed once per evaluation.
///
/// Exact zeros of the factor flip the argument by pi, but the eigenbranch
/// tracking carries each branch smoothly through them, so the connection
/// integrals see only the analytic derivative.
struct Pipeline<'m> {
    model: &'m ValidatedModel,
    trace: DecoherenceTrace,
    spec: SpectralTrajectory,
}

impl<'m> Pipeline<'m> {
    fn new(model: &'m ValidatedModel, grid: &TimeGrid) -> Result<Self> {
        let trace = polar_trace(model, grid)?;
        let spec = spectral_trajectory(model, &trace)?;
        if spec.fully_degenerate {
            return Err(Error::DegenerateTrace);
        }
        Ok(Self { model, trace, spec })
    }

    /// Connection integral for branch `k` over the strided grid.
    fn connection_integral(&self, k: usize, stride: usize) -> f64 {
        let omega1 = self.model.params.omega1;
        let values: Vec<f64> = self
            .spec
            .samples
            .iter()
            .zip(&self.trace.theta_dot_values)
            .step_by(stride)
            .map(|(s, &td)| (omega1 - td) * s.branch(k)[0].norm_sqr())
            .collect();
        simpson(&values, self.trace.grid.dt() * stride as f64)
    }

    /// Closed-form branch decomposition at the given stride.
    fn closed(&self, stride: usize) -> Result<(f64, C64, [C64; 2])> {
        let first = &self.spec.samples[0];
        let last = self.spec.samples.last().unwrap();
        let weight_plus = (first.eps_plus * last.eps_plus).max(0.0).sqrt();
        let weight_minus = (first.eps_minus * last.eps_minus).max(0.0).sqrt();
        let overlap_plus = inner(&first.v_plus, &last.v_plus);
        let overlap_minus = inner(&first.v_minus, &last.v_minus);
        let term_plus =
            weight_plus * overlap_plus * C64::from_polar(1.0, self.connection_integral(0, stride));
        let term_minus = weight_minus
            * overlap_minus
            * C64::from_polar(1.0, self.connection_integral(1, stride));
        let sum = term_plus + term_minus;
        if sum.norm() < 1e-14 {
            return Err(Error::UndefinedPhase);
        }
        Ok((wrap_phase(sum.arg()), sum, [term_plus, term_minus]))
    }

    /// Transport-product phase at the given stride.
    fn transport(&self, stride: usize) -> Result<f64> {
        transport_phase(&self.spec, stride)
    }
}

/// Gauge-invariant discretization of the defining functional on the sampled
/// eigenbranches: per branch, the product of link phases times the endpoint
/// overlap, weighted by the geometric mean of the boundary eigenvalues.
///
/// Invariant under an arbitrary phase on every sampled eigenvector.
pub fn transport_phase(spec: &SpectralTrajectory, stride: usize) -> Result<f64> {
    let n = spec.samples.len() - 1;
    debug_assert!(n.is_multiple_of(stride));
    let first = &spec.samples[0];
    let last = &spec.samples[n];
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..2 {
        let mut angle = 0.0;
        let mut j = 0;
        while j < n {
            let ov = inner(
                spec.samples[j].branch(k),
                spec.samples[j + stride].branch(k),
            );
            if ov.norm() < 0.5 {
                return Err(Error::BranchTracking);
            }
            angle += ov.arg();
            j += stride;
        }
        let weight = (first_eps(first, k) * first_eps(last, k)).max(0.0).sqrt();
        let endpoint = inner(first.branch(k), last.branch(k));
        sum += weight * endpoint * C64::from_polar(1.0, -angle);
    }
    if sum.norm() < 1e-14 {
        return Err(Error::UndefinedPhase);
    }
    Ok(wrap_phase(sum.arg()))
}

fn first_eps(s: &crate::spectral::SpectralSample, k: usize) -> f64 {
    if k == 0 {
        s.eps_plus
    } else {
        s.eps_minus
    }
}

/// Closed-form geometric phase over the grid's full window.
///
/// Degenerate evolutions (the factor or the whole reduced state vanishing
/// into the maximally mixed point) are routed to the degenerate-case rule.
pub fn gp_closed_form(model: &ValidatedModel, grid: &TimeGrid) -> Result<GpResult> {
    let pipeline = match Pipeline::new(model, grid) {
        Ok(p) => p,
        Err(Error::DegenerateTrace) => return gp_degenerate_mes(model, grid.total_time()),
        Err(e) => return Err(e),
    };
    let (phase, sum, terms) = pipeline.closed(1)?;
    let halving_delta = match pipeline.closed(2) {
        Ok((coarse, _, _)) => phase_distance(phase, coarse),
        Err(_) => f64::NAN,
    };
    Ok(GpResult {
        phase,
        branch_terms: Some(terms),
        sum: Some(sum),
        degenerate: !pipeline.spec.degenerate_at.is_empty(),
        halving_delta,
        oracle_phase: None,
        oracle_delta: None,
    })
}

/// Discretized defining-functional phase, Richardson extrapolated from the
/// full and half resolutions of the grid.
pub fn gp_discretized(model: &ValidatedModel, grid: &TimeGrid) -> Result<f64> {
    let pipeline = match Pipeline::new(model, grid) {
        Ok(p) => p,
        Err(Error::DegenerateTrace) => {
            return gp_degenerate_mes(model, grid.total_time()).map(|r| r.phase)
        }
        Err(e) => return Err(e),
    };
    let full = pipeline.transport(1)?;
    let half = pipeline.transport(2)?;
    Ok(wrap_phase(full - wrap_to_pi(half - full) / 3.0))
}

/// Degenerate-evolution value: a maximally mixed state acquires the phase
/// `pi / 2` over a quasi-cycle. This is an assignment for the degenerate
/// case, not a limit of the generic branch formula.
pub fn gp_degenerate_mes(model: &ValidatedModel, tau: f64) -> Result<GpResult> {
    let e = match model.init {
        InitialState::Entangled(e) => e,
        InitialState::Product(_) => {
            return Err(Error::InvalidParameter(
                "degenerate-evolution rule applies to the entangled family".into(),
            ))
        }
    };
    if (model.population0() - 0.5).abs() > DEGENERACY_EPS {
        return Err(Error::InvalidParameter(format!(
            "degenerate-evolution rule called with unbalanced populations (lambda0 = {}, theta0 = {})",
            e.lambda0, e.theta0
        )));
    }
    let coh = model.coherence_amplitude();
    let max_r = (0..=256)
        .map(|j| coh * gamma(model, tau * j as f64 / 256.0).norm())
        .fold(0.0f64, f64::max);
    if max_r > DEGENERACY_EPS {
        return Err(Error::InvalidParameter(
            "state is not maximally mixed over the whole interval".into(),
        ));
    }
    Ok(GpResult {
        phase: PI / 2.0,
        branch_terms: None,
        sum: None,
        degenerate: true,
        halving_delta: 0.0,
        oracle_phase: None,
        oracle_delta: None,
    })
}

/// Reference phase of an isolated pure spin over one cycle,
/// `pi (1 - cos theta0)`, reduced mod 2 pi.
pub fn gp_unitary_reference(theta0: f64) -> f64 {
    wrap_phase(PI * (1.0 - theta0.cos()))
}

/// Phase of an uncoupled product state over one cycle, `2 pi (1 - p)`,
/// reduced mod 2 pi.
pub fn gp_product_isolated(p: f64) -> f64 {
    wrap_phase(2.0 * PI * (1.0 - p))
}

/// Closed form plus oracle, with the audit deltas filled in.
pub fn evaluate(model: &ValidatedModel, grid: &TimeGrid) -> Result<GpResult> {
    let mut result = gp_closed_form(model, grid)?;
    if result.degenerate && result.branch_terms.is_none() {
        return Ok(result);
    }
    match gp_discretized(model, grid) {
        Ok(oracle) => {
            result.oracle_delta = Some(phase_distance(result.phase, oracle));
            result.oracle_phase = Some(oracle);
        }
        Err(_) => {
            result.oracle_phase = None;
            result.oracle_delta = None;
        }
    }
    Ok(result)
}

/// Phase as a function of time: one closed-form evaluation per sample point,
/// sharing a single trajectory, unwrapped for plotting.
///
/// Points are placed at every cycle boundary and `points_per_cycle - 1`
/// interior samples per cycle when the resolution allows it.
pub fn gp_vs_time(
    model: &ValidatedModel,
    cycles: u32,
    steps_per_cycle: usize,
    points_per_cycle: usize,
) -> Result<Vec<(f64, f64)>> {
    let grid = TimeGrid::quasi_cyclic(model.params.omega1, cycles, steps_per_cycle);
    grid.validate()?;

    // Largest point count <= requested that lands on even sample indices.
    let mut pts = points_per_cycle.clamp(1, steps_per_cycle);
    while pts > 1
        && (!steps_per_cycle.is_multiple_of(pts) || !(steps_per_cycle / pts).is_multiple_of(2))
    {
        pts -= 1;
    }
    let idx_step = steps_per_cycle / pts;

    let pipeline = match Pipeline::new(model, &grid) {
        Ok(p) => p,
        Err(Error::DegenerateTrace) => {
            // Degenerate rule: constant assignment at every sample point.
            let dt = grid.total_time() / (cycles as usize * pts) as f64;
            return Ok((0..=cycles as usize * pts)
                .map(|j| (j as f64 * dt, if j == 0 { 0.0 } else { PI / 2.0 }))
                .collect());
        }
        Err(e) => return Err(e),
    };

    let omega1 = model.params.omega1;
    let dt = grid.dt();
    let n = pipeline.spec.samples.len() - 1;

    // Prefix Simpson of both branch integrands at even indices.
    let integrand = |k: usize| -> Vec<f64> {
        pipeline
            .spec
            .samples
            .iter()
            .zip(&pipeline.trace.theta_dot_values)
            .map(|(s, &td)| (omega1 - td) * s.branch(k)[0].norm_sqr())
            .collect()
    };
    let f_plus = integrand(0);
    let f_minus = integrand(1);
    let mut prefix_plus = vec![0.0; n + 1];
    let mut prefix_minus = vec![0.0; n + 1];
    for j in (2..=n).step_by(2) {
        prefix_plus[j] =
            prefix_plus[j - 2] + dt / 3.0 * (f_plus[j - 2] + 4.0 * f_plus[j - 1] + f_plus[j]);
        prefix_minus[j] =
            prefix_minus[j - 2] + dt / 3.0 * (f_minus[j - 2] + 4.0 * f_minus[j - 1] + f_minus[j]);
    }
    let first = &pipeline.spec.samples[0];
    let mut series = Vec::with_capacity(cycles as usize * pts + 1);
    series.push((0.0, 0.0));
    let mut prev = 0.0;
    for j in (idx_step..=n).step_by(idx_step) {
        let s = &pipeline.spec.samples[j];
        let wp = (first.eps_plus * s.eps_plus).max(0.0).sqrt();
        let wm = (first.eps_minus * s.eps_minus).max(0.0).sqrt();
        let term_p = wp * inner(&first.v_plus, &s.v_plus) * C64::from_polar(1.0, prefix_plus[j]);
        let term_m = wm * inner(&first.v_minus, &s.v_minus) * C64::from_polar(1.0, prefix_minus[j]);
        let sum = term_p + term_m;
        if sum.norm() < 1e-14 {
            return Err(Error::UndefinedPhase);
        }
        let unwrapped = prev + wrap_to_pi(sum.arg() - prev);
        series.push((pipeline.trace.times[j], unwrapped));
        prev = unwrapped;
    }
    Ok(series)
}
