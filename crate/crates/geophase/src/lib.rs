//! Kinematic geometric phase of a spin-1/2 dephasing through a composite
//! environment: a second spin plus an ohmic bosonic bath.
//!
//! The crate models a pair of interacting two-level systems coupled to a
//! common bath. Tracing out the bath and the second spin leaves spin 1 with a
//! pure-dephasing reduced density matrix whose coherence is multiplied by a
//! closed-form complex factor. The geometric phase of that nonunitary
//! evolution is computed two independent ways: a closed-form eigenbranch
//! decomposition, and a gauge-invariant discretization of the defining
//! functional that serves as the built-in oracle.
//!
//! # Pipeline
//!
//! ```text
//! params      validated inputs: couplings, initial state, time grid
//! decoherence closed-form factor Gamma(t) = r(t) exp(i theta(t))
//! density     4x4 two-spin matrix, partial trace, 2x2 reduced states, Bloch
//! spectral    gauge-fixed eigenbranches along the trajectory
//! gp          the phase, by the closed form and by the transport oracle
//! sweep       two-axis parameter scans on a worker pool
//! presets     canned figures (fig1 .. fig11) written as CSV + sidecar
//! ```
//!
//! # Examples
//!
//! One runnable example per capability:
//!
//! - **`special_values`** - exact phases for the distinguished initial states
//! - **`decoherence_trace`** - the factor families in polar form
//! - **`partial_trace`** - two-spin matrix vs the closed single-spin forms
//! - **`bloch_trajectory`** - spiral trajectories written as CSV
//! - **`closed_vs_discretized`** - the two phase routes against each other
//! - **`phase_vs_time`** - multi-cycle phase series and robustness ordering
//! - **`parameter_sweep`** - a phase surface over concurrence and angle
//! - **`figure_presets`** - the named preset catalog
//!
//! ```bash
//! cargo run --release -p geophase --example special_values
//! cargo run --release -p geophase --example parameter_sweep
//! ```
//!
//! # Quick start
//!
//! ```
//! use geophase::{
//!     gp, validate, CouplingRegime, EntangledInit, InitialState, SystemParams, TimeGrid,
//! };
//!
//! let params = SystemParams { chi: 0.1, gamma0: 0.02, ..Default::default() };
//! let init = InitialState::Entangled(EntangledInit::new(0.2, std::f64::consts::PI / 5.0));
//! let model = validate(params, init, CouplingRegime::OhmicBothCoupled).unwrap();
//! let grid = TimeGrid::quasi_cyclic(params.omega1, 1, 512);
//! let result = gp::evaluate(&model, &grid).unwrap();
//! assert!(result.oracle_delta.unwrap() < 1e-3);
//! ```
//!
//! A thin CLI (`geophase`) exposes the same machinery as the subcommands
//! `gp`, `sweep`, `trajectory`, `series` and `preset`.

pub mod config;
pub mod decoherence;
pub mod density;
pub mod error;
pub mod gp;
pub mod output;
pub mod params;
pub mod presets;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{
    lambda0_from_concurrence, validate, CouplingRegime, EntangledInit, InitialState, ProductInit,
    SystemParams, TimeGrid, ValidatedModel,
};
