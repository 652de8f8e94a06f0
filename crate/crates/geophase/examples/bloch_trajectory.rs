//! Bloch-ball trajectories of spin 1: circles when isolated, spirals under
//! the composite environment. Writes one CSV per initial state.
//!
//! Run with: cargo run --release -p geophase --example bloch_trajectory

use std::f64::consts::PI;

use geophase::density::trajectory;
use geophase::output::{write_csv, Cell};
use geophase::{
    lambda0_from_concurrence, validate, CouplingRegime, EntangledInit, InitialState, SystemParams,
    TimeGrid,
};

fn main() {
    let params = SystemParams {
        chi: 0.1,
        gamma0: 0.02,
        ..Default::default()
    };
    let grid = TimeGrid::quasi_cyclic(1.0, 4, 256);

    for (i, concurrence) in [0.91, 0.71, 0.43].into_iter().enumerate() {
        let lambda0 = lambda0_from_concurrence(concurrence);
        let model = validate(
            params,
            InitialState::Entangled(EntangledInit::new(lambda0, PI / 5.0)),
            CouplingRegime::OhmicBothCoupled,
        )
        .unwrap();
        let points = trajectory(&model, &grid).unwrap();

        let first = &points[0];
        let last = points.last().unwrap();
        println!(
            "C = {concurrence}: |bloch| {:.4} -> {:.4}, purity {:.4} -> {:.4}",
            first.point.norm(),
            last.point.norm(),
            first.purity,
            last.purity
        );

        let path = format!("bloch_spiral_{}.csv", i + 1);
        write_csv(
            &path,
            "t,x,y,z,purity",
            points.iter().map(|pt| {
                vec![
                    Cell::Value(pt.t),
                    Cell::Value(pt.point.x),
                    Cell::Value(pt.point.y),
                    Cell::Value(pt.point.z),
                    Cell::Value(pt.purity),
                ]
            }),
        )
        .unwrap();
        println!("wrote {path}");
    }

    // isolated reference: a circle that never shrinks
    let model = validate(
        SystemParams::default(),
        InitialState::Entangled(EntangledInit::new(0.2, PI / 2.0)),
        CouplingRegime::Isolated,
    )
    .unwrap();
    let circle = trajectory(&model, &TimeGrid::quasi_cyclic(1.0, 1, 256)).unwrap();
    let radii: Vec<f64> = circle.iter().map(|p| p.point.norm()).collect();
    println!(
        "isolated circle radius stays at {:.6} (spread {:.2e})",
        radii[0],
        radii.iter().cloned().fold(0.0f64, f64::max) - radii.iter().cloned().fold(1.0f64, f64::min)
    );
}
