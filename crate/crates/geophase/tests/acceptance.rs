//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured numbers. Run with `--nocapture` to see every line.

use std::f64::consts::PI;
use std::time::Instant;

use geophase::decoherence::polar_trace;
use geophase::density::{
    bipartite_density, entangled_coefficients, reduced_density_spin1, trace_out_spin2, trajectory,
    FFactorSet,
};
use geophase::gp::{
    evaluate, gp_closed_form, gp_vs_time, phase_distance, transport_phase, wrap_phase,
};
use geophase::params::{
    lambda0_from_concurrence, validate, CouplingRegime, EntangledInit, InitialState, ProductInit,
    SystemParams, TimeGrid, ValidatedModel,
};
use geophase::presets::{run_preset, PresetOptions};
use geophase::spectral::spectral_trajectory;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ent_model(
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

fn prod_model(p: f64, q: f64, regime: CouplingRegime, chi: f64, gamma0: f64) -> ValidatedModel {
    let sp = SystemParams {
        chi,
        gamma0,
        ..Default::default()
    };
    validate(sp, InitialState::Product(ProductInit::new(p, q)), regime).unwrap()
}

fn grid(steps: usize) -> TimeGrid {
    TimeGrid::quasi_cyclic(1.0, 1, steps)
}

struct Criterion {
    label: &'static str,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Self {
            label,
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("{}: PASS ({} checks)", self.label, self.checks);
        } else {
            println!(
                "{}: FAIL ({} of {} checks failed)",
                self.label,
                self.failures.len(),
                self.checks
            );
            for f in &self.failures {
                println!("  - {f}");
            }
        }
        assert!(
            self.failures.is_empty(),
            "{}: {} failed checks: {:#?}",
            self.label,
            self.failures.len(),
            self.failures
        );
    }
}

#[test]
fn criterion_1_exact_special_values() {
    let mut c = Criterion::new("criterion 1 (exact special values, 1e-9 rad)");
    let tol = 1e-9;

    for th0 in [0.3, PI / 2.0, 2.8] {
        let t0 = Instant::now();
        let m = ent_model(0.5, th0, CouplingRegime::Isolated, 0.0, 0.0);
        let r = gp_closed_form(&m, &grid(512)).unwrap();
        let ok = phase_distance(r.phase, PI / 2.0) < tol && t0.elapsed().as_secs_f64() < 1.0;
        c.check(ok, || {
            format!("isolated MES theta0={th0}: got {} want pi/2", r.phase)
        });
    }

    for lam0 in [0.1, 0.3, 0.49] {
        let t0 = Instant::now();
        let m = ent_model(lam0, 0.0, CouplingRegime::Isolated, 0.0, 0.0);
        let r = gp_closed_form(&m, &grid(512)).unwrap();
        let ok = phase_distance(r.phase, PI) < tol && t0.elapsed().as_secs_f64() < 1.0;
        c.check(ok, || {
            format!(
                "isolated entangled theta0=0 lambda0={lam0}: got {} want pi \
                 (the coherence-free state is stationary; both phase routes give 0)",
                r.phase
            )
        });
    }

    for lam0 in [0.1, 0.3, 0.49] {
        let t0 = Instant::now();
        let m = ent_model(lam0, PI, CouplingRegime::Isolated, 0.0, 0.0);
        let r = gp_closed_form(&m, &grid(512)).unwrap();
        let ok = phase_distance(r.phase, 0.0) < tol && t0.elapsed().as_secs_f64() < 1.0;
        c.check(ok, || {
            format!(
                "isolated entangled theta0=pi lambda0={lam0}: got {} want 0",
                r.phase
            )
        });
    }

    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let t0 = Instant::now();
        let m = prod_model(p, 0.3, CouplingRegime::Isolated, 0.0, 0.0);
        let r = gp_closed_form(&m, &grid(512)).unwrap();
        let want = wrap_phase(2.0 * PI * (1.0 - p));
        let ok = phase_distance(r.phase, want) < tol && t0.elapsed().as_secs_f64() < 1.0;
        c.check(ok, || {
            format!("product isolated p={p}: got {} want {want}", r.phase)
        });
    }

    for j in 0..10 {
        let th0 = PI * j as f64 / 9.0;
        let t0 = Instant::now();
        let m = ent_model(0.0, th0, CouplingRegime::Isolated, 0.0, 0.0);
        let r = evaluate(&m, &grid(512)).unwrap();
        let want = wrap_phase(PI * (1.0 - th0.cos()));
        let ok = phase_distance(r.phase, want) < tol
            && phase_distance(r.oracle_phase.unwrap(), want) < tol
            && t0.elapsed().as_secs_f64() < 1.0;
        c.check(ok, || {
            format!(
                "pure-state unitary theta0={th0}: closed {} oracle {:?} want {want}",
                r.phase, r.oracle_phase
            )
        });
    }

    c.finish();
}

#[test]
fn criterion_2_oracle_equivalence() {
    let mut c = Criterion::new("criterion 2 (closed form vs defining functional)");
    let started = Instant::now();
    let lam0s = [0.05, 0.2, 0.35, 0.65, 0.9];
    let th0s: Vec<f64> = (0..5).map(|j| 0.1 * PI + 0.2 * PI * j as f64).collect();
    let regimes = [
        (CouplingRegime::Isolated, 0.0, 0.0),
        (CouplingRegime::ChiOnly, 0.1, 0.0),
        (CouplingRegime::OhmicBothCoupled, 0.1, 0.02),
        (CouplingRegime::OhmicSpin2Uncoupled, 0.1, 0.02),
    ];
    let mut combos = 0;
    let mut worst_coarse = 0.0f64;
    let mut worst_fine = 0.0f64;
    for (regime, chi, g0) in regimes {
        for &lam0 in &lam0s {
            for &th0 in &th0s {
                combos += 1;
                let m = ent_model(lam0, th0, regime, chi, g0);
                let coarse = evaluate(&m, &grid(512)).unwrap();
                let d = coarse.oracle_delta.unwrap();
                worst_coarse = worst_coarse.max(d);
                c.check(d < 1e-3, || {
                    format!("512 steps {regime:?} lam0={lam0} th0={th0:.3}: delta {d:.2e}")
                });
                let fine = evaluate(&m, &grid(4096)).unwrap();
                let d = fine.oracle_delta.unwrap();
                worst_fine = worst_fine.max(d);
                c.check(d < 1e-5, || {
                    format!("4096 steps {regime:?} lam0={lam0} th0={th0:.3}: delta {d:.2e}")
                });
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    c.check(combos >= 75, || format!("only {combos} combos"));
    c.check(elapsed < 120.0, || format!("took {elapsed:.1}s"));
    println!(
        "criterion 2 detail: {combos} combos, worst 512-step delta {worst_coarse:.2e}, \
         worst 4096-step delta {worst_fine:.2e}, {elapsed:.1}s"
    );
    c.finish();
}

#[test]
fn criterion_3_partial_trace_consistency() {
    let mut c = Criterion::new("criterion 3 (partial trace vs closed forms, 1e-10)");
    let init = EntangledInit::new(0.3, 1.1);
    let coeffs = entangled_coefficients(&init);
    let samples = 1000;

    let cases: [(&str, SystemParams, FFactorSet, ValidatedModel); 3] = [
        (
            "all-ones vs spin-spin-only form",
            SystemParams {
                chi: 0.37,
                omega2: 1.3,
                ..Default::default()
            },
            FFactorSet::AllOnes,
            ent_model(0.3, 1.1, CouplingRegime::ChiOnly, 0.37, 0.0),
        ),
        (
            "spin-2-uncoupled assignment vs its closed form",
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
            ent_model(0.3, 1.1, CouplingRegime::OhmicSpin2Uncoupled, 0.1, 0.02),
        ),
        (
            "ohmic-inferred assignment vs the both-coupled form",
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
            ent_model(0.3, 1.1, CouplingRegime::OhmicBothCoupled, 0.1, 0.02),
        ),
    ];

    for (label, params, f, model) in cases {
        let mut worst = 0.0f64;
        for j in 0..samples {
            let t = 2.0 * PI * j as f64 / (samples - 1) as f64;
            let traced = trace_out_spin2(&bipartite_density(t, coeffs, &params, &f).unwrap());
            let closed = reduced_density_spin1(&model, t);
            for r in 0..2 {
                for col in 0..2 {
                    worst = worst.max((traced.0[r][col] - closed.0[r][col]).norm());
                }
            }
        }
        println!(
            "criterion 3 detail: {label}: worst entry diff {worst:.2e} over {samples} samples"
        );
        c.check(worst <= 1e-10, || format!("{label}: worst {worst:.2e}"));
    }
    c.finish();
}

#[test]
fn criterion_4_structural_invariants() {
    let mut c = Criterion::new("criterion 4 (structural invariants, randomized)");
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cases = 1000;

    for case in 0..cases {
        let regime = match rng.gen_range(0..4) {
            0 => CouplingRegime::Isolated,
            1 => CouplingRegime::ChiOnly,
            2 => CouplingRegime::OhmicBothCoupled,
            _ => CouplingRegime::OhmicSpin2Uncoupled,
        };
        let chi = match regime {
            CouplingRegime::Isolated => 0.0,
            _ => rng.gen_range(0.0..0.3),
        };
        let g0 = match regime {
            CouplingRegime::Isolated | CouplingRegime::ChiOnly => 0.0,
            _ => rng.gen_range(0.0..0.1),
        };
        let cutoff = rng.gen_range(5.0..30.0);
        let params = SystemParams {
            chi,
            gamma0: g0,
            cutoff,
            omega2: rng.gen_range(0.5..1.5),
            ..Default::default()
        };
        let init = if rng.gen_bool(0.5) {
            // keep clear of the fully degenerate family
            let mut lam0: f64 = rng.gen_range(0.0..1.0);
            if (2.0 * lam0 - 1.0).abs() < 1e-3 {
                lam0 = 0.25;
            }
            InitialState::Entangled(EntangledInit::new(lam0, rng.gen_range(0.0..PI)))
        } else {
            InitialState::Product(ProductInit::new(
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..1.0),
            ))
        };
        let model = validate(params, init, regime).unwrap();
        let g = grid(64);
        let trace = polar_trace(&model, &g).unwrap();

        for (&r, gval) in trace.r_values.iter().zip(&trace.gamma_values) {
            c.check(r <= 1.0 + 1e-12, || {
                format!("case {case}: |Gamma| = {r} > 1")
            });
            c.check((gval.norm() - r).abs() < 1e-12, || {
                format!("case {case}: polar modulus mismatch")
            });
        }

        let spec = spectral_trajectory(&model, &trace).unwrap();
        for (j, s) in spec.samples.iter().enumerate() {
            let rho = reduced_density_spin1(&model, trace.times[j]);
            c.check(rho.hermiticity_defect() < 1e-12, || {
                format!("case {case}: non-hermitian sample")
            });
            c.check((rho.trace().re - 1.0).abs() < 1e-12, || {
                format!("case {case}: trace != 1")
            });
            c.check(s.eps_minus >= -1e-10 && s.eps_plus <= 1.0 + 1e-10, || {
                format!("case {case}: eigenvalue outside [0,1]")
            });
            c.check((s.eps_plus + s.eps_minus - 1.0).abs() < 1e-10, || {
                format!("case {case}: eigenvalues do not sum to 1")
            });
        }

        // two-spin matrix structure, using the factor set matching the regime
        let coeffs = match init {
            InitialState::Entangled(e) => entangled_coefficients(&e),
            InitialState::Product(p) => geophase::density::product_coefficients(&p),
        };
        let f = match regime {
            CouplingRegime::Isolated | CouplingRegime::ChiOnly => FFactorSet::AllOnes,
            CouplingRegime::OhmicBothCoupled => FFactorSet::OhmicInferred { gamma0: g0, cutoff },
            CouplingRegime::OhmicSpin2Uncoupled => {
                FFactorSet::Spin2Uncoupled { gamma0: g0, cutoff }
            }
        };
        let t = rng.gen_range(0.0..2.0 * PI);
        let rho4 = bipartite_density(t, coeffs, &params, &f).unwrap();
        c.check(rho4.hermiticity_defect() < 1e-12, || {
            format!("case {case}: 4x4 not hermitian")
        });
        c.check((rho4.trace().re - 1.0).abs() < 1e-12, || {
            format!("case {case}: 4x4 trace != 1")
        });

        // gauge invariance of the transport phase on a subsample
        if case % 20 == 0 {
            if let Ok(before) = transport_phase(&spec, 1) {
                let mut scrambled = spec.clone();
                for s in scrambled.samples.iter_mut() {
                    let up = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
                    let um = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
                    s.v_plus[0] *= up;
                    s.v_plus[1] *= up;
                    s.v_minus[0] *= um;
                    s.v_minus[1] *= um;
                }
                let after = transport_phase(&scrambled, 1).unwrap();
                c.check(phase_distance(before, after) <= 1e-12, || {
                    format!(
                        "case {case}: gauge scramble moved the phase by {:.2e}",
                        phase_distance(before, after)
                    )
                });
            }
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    c.check(elapsed < 60.0, || format!("took {elapsed:.1}s"));
    println!("criterion 4 detail: {cases} random cases in {elapsed:.1}s");
    c.finish();
}

fn read_csv_column(path: &std::path::Path, col: usize) -> Vec<f64> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect()
}

/// Unwraps a sequence of phases given in units of pi.
fn unwrap_over_pi(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut prev = values[0];
    out.push(prev);
    for &v in &values[1..] {
        let mut d = (v - prev) % 2.0;
        if d > 1.0 {
            d -= 2.0;
        } else if d <= -1.0 {
            d += 2.0;
        }
        prev += d;
        out.push(prev);
    }
    out
}

#[test]
fn criterion_5_figure_properties() {
    let mut c = Criterion::new("criterion 5 (figure reproductions, property-based)");
    let dir = tempfile::tempdir().unwrap();
    let opts = PresetOptions::default();

    // fig1: constant 0.5 pi along C = 1; monotone in theta0 along C = 0.06
    {
        let files = run_preset("fig1", dir.path(), &opts).unwrap();
        let a1 = read_csv_column(&files[0], 0);
        let ph = read_csv_column(&files[0], 2);
        let n = opts.surface_points;
        assert_eq!(a1.len(), 2 * n);
        let low_slice: Vec<f64> = ph[..n].to_vec(); // C = 0.06 rows come first
        let mes_slice: Vec<f64> = ph[n..].to_vec();
        let mes_ok = mes_slice.iter().all(|&v| (v - 0.5).abs() < 1e-9);
        c.check(mes_ok, || "fig1: C=1 slice deviates from 0.5 pi".into());
        let unwrapped = unwrap_over_pi(&low_slice);
        let mono = unwrapped.windows(2).all(|w| w[1] >= w[0] - 1e-9);
        c.check(mono, || {
            "fig1: C=0.06 slice is not monotone in theta0".into()
        });
        println!(
            "criterion 5 detail: fig1 C=0.06 slice spans [{:.4}, {:.4}] pi",
            unwrapped.first().unwrap(),
            unwrapped.last().unwrap()
        );
    }

    // fig3: some theta0 slice of the displayed surface has an interior local
    // maximum and minimum
    {
        let files = run_preset("fig3", dir.path(), &opts).unwrap();
        let ph = read_csv_column(&files[0], 2);
        let n = opts.surface_points;
        let mut found_max = false;
        let mut found_min = false;
        for row in 0..n {
            let slice = &ph[row * n..(row + 1) * n];
            for j in 1..n - 1 {
                if slice[j] > slice[j - 1] + 1e-12 && slice[j] > slice[j + 1] + 1e-12 {
                    found_max = true;
                }
                if slice[j] < slice[j - 1] - 1e-12 && slice[j] < slice[j + 1] - 1e-12 {
                    found_min = true;
                }
            }
            if found_max && found_min {
                break;
            }
        }
        c.check(found_max && found_min, || {
            format!("fig3: interior extrema missing (max={found_max}, min={found_min})")
        });

        // diagnosis: the wrap-free non-monotonicity is a valley along the
        // concurrence direction at fixed theta0
        let mut valley_rows = 0;
        for col in 0..n {
            let slice: Vec<f64> = (0..n).map(|row| ph[row * n + col]).collect();
            let u = unwrap_over_pi(&slice);
            if (1..n - 1).any(|j| u[j] < u[j - 1] - 1e-12 && u[j] < u[j + 1] - 1e-12) {
                valley_rows += 1;
            }
        }
        println!(
            "criterion 5 detail: fig3 has a genuine interior minimum along the concurrence \
             direction for {valley_rows} of {n} theta0 values"
        );
    }

    // fig5 + fig6: deviation from the isolated reference ordered by
    // concurrence, and spiral radius ordered the same way
    {
        let cycles = 10;
        let mut devs: Vec<Vec<f64>> = Vec::new();
        for &lam0 in &[0.2, 0.1, 0.01] {
            let bath = ent_model(lam0, PI / 5.0, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
            let iso = ent_model(lam0, PI / 5.0, CouplingRegime::Isolated, 0.0, 0.0);
            let sb = gp_vs_time(&bath, cycles, 512, 1).unwrap();
            let si = gp_vs_time(&iso, cycles, 512, 1).unwrap();
            devs.push(
                sb.iter()
                    .zip(&si)
                    .skip(1)
                    .map(|(&(_, a), &(_, b))| phase_distance(wrap_phase(a), wrap_phase(b)))
                    .collect(),
            );
        }
        let mut ordered = true;
        for ((a, b), c) in devs[0].iter().zip(&devs[1]).zip(&devs[2]) {
            if !(a < b && b < c) {
                ordered = false;
            }
        }
        c.check(ordered, || {
            format!("fig5: per-cycle deviations not ordered by concurrence: {devs:?}")
        });

        let mut radii = Vec::new();
        for &cval in &[0.91, 0.71, 0.43] {
            let lam0 = lambda0_from_concurrence(cval);
            let m = ent_model(lam0, PI / 5.0, CouplingRegime::OhmicBothCoupled, 0.1, 0.02);
            let tr = trajectory(&m, &TimeGrid::quasi_cyclic(1.0, 1, 512)).unwrap();
            radii.push(tr.last().unwrap().point.norm());
        }
        c.check(radii[0] < radii[1] && radii[1] < radii[2], || {
            format!("fig6: end-of-cycle radii not ordered by concurrence: {radii:?}")
        });
    }

    // fig9: the two q-curves at theta0 = pi/5 coincide within 1e-2 pi
    {
        let files = run_preset("fig9", dir.path(), &opts).unwrap();
        let a = read_csv_column(&files[0], 1);
        let b = read_csv_column(&files[1], 1);
        let worst = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        println!(
            "criterion 5 detail: fig9 q-curve separation max {worst:.4} rad ({:.4} pi)",
            worst / PI
        );
        c.check(worst < 1e-2 * PI, || {
            format!(
                "fig9: q = 0.05 and q = 0.4 curves separate by up to {worst:.4} rad \
                 ({:.4} pi), above the 1e-2 pi bound",
                worst / PI
            )
        });
    }

    // fig11: the chi = 0.1 curve lies below its chi = 0 counterpart
    {
        let files = run_preset("fig11", dir.path(), &opts).unwrap();
        // curve order: (q=.4, chi=0), (q=.4, chi=.1), (q=.01, chi=0), (q=.01, chi=.1)
        for (i0, i1, q) in [(0usize, 1usize, 0.4), (2, 3, 0.01)] {
            let base = unwrap_over_pi(&read_csv_column(&files[i0], 2));
            let coupled = unwrap_over_pi(&read_csv_column(&files[i1], 2));
            let violations: Vec<usize> = base
                .iter()
                .zip(&coupled)
                .enumerate()
                .filter(|(_, (b, c))| c >= b)
                .map(|(j, _)| j)
                .collect();
            println!(
                "criterion 5 detail: fig11 q={q}: {} of {} points have the chi=0.1 curve \
                 at or above the chi=0 curve",
                violations.len(),
                base.len()
            );
            c.check(violations.is_empty(), || {
                format!(
                    "fig11 q={q}: chi=0.1 curve not below chi=0 at {} of {} gamma0 points \
                     (first violations at indices {:?})",
                    violations.len(),
                    base.len(),
                    &violations[..violations.len().min(5)]
                )
            });
        }
    }

    c.finish();
}

#[test]
fn criterion_6_mes_ratio_soft_check() {
    // Report-only: ratio of the spin-spin-coupled MES phase to the isolated
    // MES assignment, quoted against the figure discussion's "40% bigger".
    let m = ent_model(0.5, PI / 2.0, CouplingRegime::ChiOnly, 0.1, 0.0);
    let coupled = gp_closed_form(&m, &grid(2048)).unwrap().phase;
    let isolated = PI / 2.0;
    let ratio = coupled / isolated;
    println!(
        "criterion 6 (soft): GP(MES, chi=0.1)/GP(MES, isolated) = {ratio:.4} \
         (coupled {coupled:.6} rad vs isolated {isolated:.6} rad; \
         the figure discussion reports ~1.4)"
    );
    let mut spread = (f64::INFINITY, f64::NEG_INFINITY);
    for th0 in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0] {
        let m = ent_model(0.5, th0, CouplingRegime::ChiOnly, 0.1, 0.0);
        let v = gp_closed_form(&m, &grid(1024)).unwrap().phase;
        spread.0 = spread.0.min(v);
        spread.1 = spread.1.max(v);
    }
    println!(
        "criterion 6 (soft): coupled-MES phase across theta0 lies in [{:.6}, {:.6}] rad",
        spread.0, spread.1
    );
    println!("criterion 6: PASS (report-only)");
}

#[test]
fn criterion_7_preset_convergence() {
    let mut c = Criterion::new("criterion 7 (512 -> 1024 step halving < 1e-6 rad)");
    let base = tempfile::tempdir().unwrap();
    let gp_presets: [(&str, &[usize], bool); 8] = [
        // (name, phase column per file kind, phase stored in pi units?)
        ("fig1", &[2], true),
        ("fig3", &[2], true),
        ("fig4", &[2], true),
        ("fig5", &[1], false),
        ("fig7", &[2], true),
        ("fig8", &[2], true),
        ("fig9", &[1], false),
        ("fig11", &[1], false),
    ];
    for (name, cols, in_pi) in gp_presets {
        let d512 = base.path().join(format!("{name}_512"));
        let d1024 = base.path().join(format!("{name}_1024"));
        let mk = |steps: usize| PresetOptions {
            steps_per_cycle: steps,
            ..Default::default()
        };
        let f512 = run_preset(name, &d512, &mk(512)).unwrap();
        let f1024 = run_preset(name, &d1024, &mk(1024)).unwrap();
        let mut worst = 0.0f64;
        for (a, b) in f512.iter().zip(&f1024) {
            if a.extension().map(|e| e != "csv").unwrap_or(true) {
                continue;
            }
            for &col in cols {
                let va = read_csv_column(a, col);
                let vb = read_csv_column(b, col);
                assert_eq!(va.len(), vb.len(), "{name}: row mismatch");
                for (&x, &y) in va.iter().zip(&vb) {
                    let d = if in_pi {
                        phase_distance(x * PI, y * PI)
                    } else {
                        (x - y).abs()
                    };
                    worst = worst.max(d);
                }
            }
        }
        println!("criterion 7 detail: {name}: max step-halving change {worst:.2e} rad");
        c.check(worst < 1e-6, || {
            format!("{name}: step halving moved a phase by {worst:.2e} rad")
        });
    }
    c.finish();
}
