//! Builds the two-spin density matrix, traces out spin 2 and compares the
//! result with the closed single-spin forms, entry by entry.
//!
//! Run with: cargo run --release -p geophase --example partial_trace

use std::f64::consts::PI;

use geophase::density::{
    bipartite_density, entangled_coefficients, reduced_density_spin1, trace_out_spin2, FFactorSet,
};
use geophase::{validate, CouplingRegime, EntangledInit, InitialState, SystemParams};

fn main() {
    let init = EntangledInit::new(0.3, 1.1);
    let coeffs = entangled_coefficients(&init);
    println!("initial amplitudes on |00>,|01>,|10>,|11>: {coeffs:.4?}");

    let cases = [
        (
            "no environment factors vs spin-spin-only form",
            SystemParams {
                chi: 0.37,
                omega2: 1.3,
                ..Default::default()
            },
            FFactorSet::AllOnes,
            CouplingRegime::ChiOnly,
        ),
        (
            "spin-2-uncoupled factor assignment vs its closed form",
            SystemParams {
                chi: 0.1,
                gamma0: 0.02,
                omega2: 1.3,
                ..Default::default()
            },
            FFactorSet::Spin2Uncoupled {
                gamma0: 0.02,
                cutoff: 20.0,
            },
            CouplingRegime::OhmicSpin2Uncoupled,
        ),
        (
            "ohmic-inferred factor assignment vs the both-coupled form",
            SystemParams {
                chi: 0.1,
                gamma0: 0.02,
                omega2: 1.3,
                ..Default::default()
            },
            FFactorSet::OhmicInferred {
                gamma0: 0.02,
                cutoff: 20.0,
            },
            CouplingRegime::OhmicBothCoupled,
        ),
    ];

    for (label, params, f, regime) in cases {
        let model = validate(params, InitialState::Entangled(init), regime).unwrap();
        let mut worst = 0.0f64;
        for j in 0..=1000 {
            let t = 2.0 * PI * j as f64 / 1000.0;
            let rho4 = bipartite_density(t, coeffs, &params, &f).unwrap();
            let traced = trace_out_spin2(&rho4);
            let closed = reduced_density_spin1(&model, t);
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((traced.0[r][c] - closed.0[r][c]).norm());
                }
            }
        }
        println!("{label}: worst entry difference over 1001 samples = {worst:.3e}");
    }

    // one matrix in full, to show the structure
    let params = SystemParams {
        chi: 0.1,
        gamma0: 0.02,
        omega2: 1.3,
        ..Default::default()
    };
    let f = FFactorSet::OhmicInferred {
        gamma0: 0.02,
        cutoff: 20.0,
    };
    let rho4 = bipartite_density(2.0, coeffs, &params, &f).unwrap();
    println!("\ntwo-spin matrix at t = 2 (diagonal is time-independent):");
    for row in rho4.0 {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        println!("  [{}]", cells.join(", "));
    }
    println!("trace = {:.12}", rho4.trace().re);
}
