//! Exact geometric-phase values for the distinguished initial states.
//!
//! Run with: cargo run --release -p geophase --example special_values

use std::f64::consts::PI;

use geophase::gp::{evaluate, gp_closed_form, gp_product_isolated, gp_unitary_reference};
use geophase::{
    validate, CouplingRegime, EntangledInit, InitialState, ProductInit, SystemParams, TimeGrid,
};

fn main() {
    let grid = TimeGrid::quasi_cyclic(1.0, 1, 512);
    let iso = SystemParams::default();

    println!("=== maximally entangled state, isolated ===");
    for theta0 in [0.4, PI / 2.0, 2.6] {
        let m = validate(
            iso,
            InitialState::Entangled(EntangledInit::new(0.5, theta0)),
            CouplingRegime::Isolated,
        )
        .unwrap();
        let r = gp_closed_form(&m, &grid).unwrap();
        println!(
            "theta0 = {theta0:.3}: phase = {:.12} rad = {:.4} pi (degenerate assignment: {})",
            r.phase,
            r.phase / PI,
            r.degenerate
        );
    }

    println!("\n=== stationary entangled endpoints (theta0 = 0 and pi) ===");
    for (lam0, theta0) in [(0.3, 0.0), (0.3, PI)] {
        let m = validate(
            iso,
            InitialState::Entangled(EntangledInit::new(lam0, theta0)),
            CouplingRegime::Isolated,
        )
        .unwrap();
        let r = evaluate(&m, &grid).unwrap();
        println!(
            "lambda0 = {lam0}, theta0 = {theta0:.3}: closed = {:.12}, oracle = {:.12}",
            r.phase,
            r.oracle_phase.unwrap()
        );
    }

    println!("\n=== uncoupled product states: 2 pi (1 - p) ===");
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let m = validate(
            iso,
            InitialState::Product(ProductInit::new(p, 0.3)),
            CouplingRegime::Isolated,
        )
        .unwrap();
        let r = gp_closed_form(&m, &grid).unwrap();
        println!(
            "p = {p:.2}: phase = {:.12} rad, reference = {:.12} rad",
            r.phase,
            gp_product_isolated(p)
        );
    }

    println!("\n=== pure-state cycle: pi (1 - cos theta0) ===");
    for j in 0..6 {
        let theta0 = PI * j as f64 / 5.0;
        let m = validate(
            iso,
            InitialState::Entangled(EntangledInit::new(0.0, theta0)),
            CouplingRegime::Isolated,
        )
        .unwrap();
        let r = gp_closed_form(&m, &grid).unwrap();
        println!(
            "theta0 = {theta0:.4}: phase = {:.12} rad, reference = {:.12} rad",
            r.phase,
            gp_unitary_reference(theta0)
        );
    }
}
