//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Every tolerance is pinned here, in code. The suite exercises the library
//! the way the command-line tools do: pulse schedules composed on the
//! default six-level truncation at η = 2, the integrator on a dedicated
//! spin-axial configuration.

use std::f64::consts::{PI, SQRT_2};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use etrap::gates::{
    self, catalog, eigenstate_transfer_000_to_111, swap_phase_constants, verify_recipe,
};
use etrap::hamiltonian::{
    integrate, rwa_sweep, CyclotronDrive, Drive, SpinDrive, StepPolicy,
};
use etrap::hilbert::{leakage, SpaceConfig, StateVector, COMP_DIM};
use etrap::oracle::{
    realized_oracle_diagonal, run_dj, synthesize_phase_poly, target_signature, BoolFn3, FnClass,
    PhasePoly,
};
use etrap::pulses::{
    compose, propagator_s, propagator_sc, run_schedule, theta_l, LambDicke, Schedule,
};
use etrap::trapcalc::{frequencies_from, TrapParameters};

const UNITARITY_TOL: f64 = 1e-12;
const BOUNDARY_TOL: f64 = 1e-10;

fn cfg() -> SpaceConfig {
    SpaceConfig::default()
}

fn eta2() -> LambDicke {
    LambDicke::new(2.0).unwrap()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// Worst boundary population over runs from every computational basis state.
fn worst_boundary(schedule: &Schedule, eta: LambDicke, space: &SpaceConfig) -> f64 {
    (0..COMP_DIM)
        .map(|c| {
            run_schedule(&StateVector::computational(space, c), schedule, eta, space).boundary_max
        })
        .fold(0.0, f64::max)
}

#[test]
fn criterion_01_swapping_phase_constant() {
    let space = cfg();
    let rec = gates::swapping_sc();
    let u = compose(&rec.schedule, eta2(), &space).unwrap();

    let from = space.flat_index(0, 1, 0).unwrap();
    let to = space.flat_index(1, 0, 0).unwrap();
    let alpha = u.matrix()[[to, from]].arg();
    let alpha_err = (alpha - (-0.8652)).abs();

    // |11⟩ is driven on the √2-fast block; the composite must return it
    let mut fast_leak = 0.0f64;
    for l in 0..2 {
        let init = StateVector::basis(&space, 1, 1, l).unwrap();
        fast_leak = fast_leak.max(leakage(&u.apply(&init), &space));
    }

    let pass = alpha_err <= 5e-5 && fast_leak <= 1e-9 && u.unitarity_defect() <= UNITARITY_TOL;
    report(
        "01 swapping-phase-constant",
        pass,
        &format!("alpha = {alpha:.6}, |alpha + 0.8652| = {alpha_err:.2e}, fast-block leakage = {fast_leak:.2e}"),
    );
}

#[test]
fn criterion_02_gate_catalog_fidelities() {
    let space = cfg();
    let mut worst_fid = 1.0f64;
    let mut worst_leak = 0.0f64;
    let mut failed = Vec::new();
    let recipes = catalog(&space, eta2());
    for rec in &recipes {
        let r = verify_recipe(rec, eta2(), &space);
        worst_fid = worst_fid.min(r.fidelity);
        worst_leak = worst_leak.max(r.leakage);
        if !(r.fidelity >= 1.0 - 1e-9 && r.leakage <= 1e-9) {
            failed.push(r.name.clone());
        }
    }
    let names: Vec<&str> = recipes.iter().map(|r| r.name.as_str()).collect();
    let required = [
        "h_s", "t_s", "phase_s", "swap_sc", "cphase_sc", "cz_sc", "cnot_sc", "swap_sa",
        "cnot_ca", "h_c", "t_c", "h_a", "t_a",
    ];
    let missing: Vec<&str> = required
        .iter()
        .filter(|n| !names.contains(*n))
        .copied()
        .collect();
    let pass = failed.is_empty() && missing.is_empty();
    report(
        "02 gate-catalog-fidelities",
        pass,
        &format!(
            "{} recipes, min fidelity = {worst_fid:.12}, max leakage = {worst_leak:.2e}, failed = {failed:?}, missing = {missing:?}",
            recipes.len()
        ),
    );
}

#[test]
fn criterion_03_eigenstate_transfer() {
    let space = cfg();
    let target = space.flat_index(1, 1, 1).unwrap();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut min_pop = 1.0f64;
    for _ in 0..20 {
        let phases = [(); 5].map(|_| rng.gen_range(-PI..PI));
        let sched = eigenstate_transfer_000_to_111(phases);
        let run = run_schedule(&StateVector::computational(&space, 0), &sched, eta2(), &space);
        min_pop = min_pop.min(run.final_state.probability(target));
    }
    let pass = min_pop >= 1.0 - 1e-10;
    report(
        "03 eigenstate-transfer",
        pass,
        &format!("min P(111) over 20 random phase tuples = {min_pop:.12}"),
    );
}

#[test]
fn criterion_04_deutsch_jozsa_exhaustive() {
    let start = std::time::Instant::now();
    let space = cfg();
    let mut counts = (0usize, 0usize, 0usize); // constant, balanced, errors
    let mut worst_margin = 0.0f64;
    let mut worst_leak = 0.0f64;
    let mut worst_boundary_pop = 0.0f64;
    for f in BoolFn3::all_constant_and_balanced() {
        let r = run_dj(&f, eta2(), &space).unwrap();
        let ideal = match f.classify() {
            FnClass::Constant => 1.0,
            FnClass::Balanced => 0.0,
            FnClass::Other => unreachable!(),
        };
        worst_margin = worst_margin.max((r.p000() - ideal).abs());
        worst_leak = worst_leak.max(r.leakage);
        worst_boundary_pop = worst_boundary_pop.max(r.boundary_max);
        match f.classify() {
            FnClass::Constant => counts.0 += 1,
            FnClass::Balanced => counts.1 += 1,
            FnClass::Other => unreachable!(),
        }
        if r.classification != f.classify() {
            counts.2 += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = counts == (2, 70, 0)
        && worst_margin <= 1e-9
        && worst_leak <= 1e-8
        && worst_boundary_pop <= BOUNDARY_TOL
        && elapsed.as_secs() <= 120;
    report(
        "04 deutsch-jozsa-exhaustive",
        pass,
        &format!(
            "{} constant / {} balanced / {} errors, max |P(000) - ideal| = {worst_margin:.2e}, max leakage = {worst_leak:.2e}, runtime = {elapsed:.2?}",
            counts.0, counts.1, counts.2
        ),
    );
}

#[test]
fn criterion_05_oracle_synthesis_completeness() {
    use std::collections::HashSet;
    // 4096-tuple brute force over all (c, d) phase coefficients
    let mut reachable: HashSet<[u8; COMP_DIM]> = HashSet::new();
    for code in 0..4096usize {
        let poly = PhasePoly {
            c: [
                (code % 4) as u8,
                ((code / 4) % 4) as u8,
                ((code / 16) % 4) as u8,
            ],
            d: [
                ((code / 64) % 4) as u8,
                ((code / 256) % 4) as u8,
                ((code / 1024) % 4) as u8,
            ],
        };
        reachable.insert(poly.signature());
    }
    let space = cfg();
    let mut unreachable = 0usize;
    let mut synth_mismatch = 0usize;
    let mut pulse_mismatch = 0usize;
    for f in BoolFn3::all_constant_and_balanced() {
        if !reachable.contains(&target_signature(&f)) {
            unreachable += 1;
        }
        let poly = synthesize_phase_poly(&f).unwrap();
        if poly.signature() != target_signature(&f) {
            synth_mismatch += 1;
        }
        // composed pulse schedule realizes diag((−1)^f) up to global phase
        if realized_oracle_diagonal(&f, eta2(), &space).is_err() {
            pulse_mismatch += 1;
        }
    }
    let pass = unreachable == 0 && synth_mismatch == 0 && pulse_mismatch == 0;
    report(
        "05 oracle-synthesis-completeness",
        pass,
        &format!(
            "72 targets: {unreachable} unreachable, {synth_mismatch} synthesizer mismatches, {pulse_mismatch} pulse-level mismatches"
        ),
    );
}

#[test]
fn criterion_06_complement_identity() {
    // the realized oracles (signed diagonals, global pulse phase divided
    // out) must satisfy U_{f_x} = −U_{f_{FF−x}} exactly
    let space = cfg();
    let samples = [0x0Fu8, 0x33, 0x55, 0x66, 0x3C, 0x5A, 0x69, 0x96, 0x17, 0x00];
    let mut bad = 0usize;
    for &x in &samples {
        let f = BoolFn3::from_index(x);
        assert_ne!(f.classify(), FnClass::Other, "sample {x:02X} must be valid");
        let g = f.complement();
        let df = realized_oracle_diagonal(&f, eta2(), &space).unwrap();
        let dg = realized_oracle_diagonal(&g, eta2(), &space).unwrap();
        if (0..COMP_DIM).any(|i| df[i] != -dg[i]) {
            bad += 1;
        }
    }
    report(
        "06 complement-identity",
        bad == 0,
        &format!("{} of {} sampled pairs satisfy U_f = -U_f'", samples.len() - bad, samples.len()),
    );
}

#[test]
fn criterion_07_integrator_vs_closed_form_and_rwa() {
    let start = std::time::Instant::now();
    let fine = StepPolicy::with_steps_per_cycle(800.0);

    // time-independent drives against the analytic pulses
    let small = SpaceConfig::new(3, 3).unwrap();
    let s_drive = SpinDrive { rabi: 1.0, phi: 0.0 };
    let u_s = integrate(&Drive::Spin(s_drive), PI, &fine, &small).unwrap();
    let s_err = u_s.max_distance(&propagator_s(PI, 0.0, &small));

    let c_drive = CyclotronDrive { theta_rate: 1.0, phi: 0.7 };
    let u_c = integrate(&Drive::Cyclotron(c_drive), PI, &fine, &small).unwrap();
    let c_err = u_c.max_distance(&propagator_sc(PI, 0.7, &small));

    // rotating-wave validation on the sideband drive
    let sweep_cfg = SpaceConfig::new(2, 8).unwrap();
    let points = rwa_sweep(
        &[1e-1, 1e-2, 1e-3],
        LambDicke::new(0.5).unwrap(),
        PI / 2.0,
        &StepPolicy::default(),
        &sweep_cfg,
    )
    .unwrap();
    let monotone = points[0].angle_error > points[1].angle_error
        && points[1].angle_error > points[2].angle_error;
    let final_err = points[2].angle_error;

    let elapsed = start.elapsed();
    let pass = s_err <= 1e-8
        && c_err <= 1e-8
        && monotone
        && final_err <= 1e-3
        && u_s.unitarity_defect() <= UNITARITY_TOL
        && u_c.unitarity_defect() <= UNITARITY_TOL
        && elapsed.as_secs() <= 300;
    report(
        "07 integrator-vs-closed-form",
        pass,
        &format!(
            "spin |dU| = {s_err:.2e}, cyclotron |dU| = {c_err:.2e}, rwa errors = [{:.3e}, {:.3e}, {:.3e}], runtime = {elapsed:.2?}",
            points[0].angle_error, points[1].angle_error, points[2].angle_error
        ),
    );
}

#[test]
fn criterion_08_laguerre_ratio_identities() {
    let mut rng = StdRng::seed_from_u64(88);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let e = rng.gen_range(0.0..3.0);
        let ratio = theta_l(1.0, 1, LambDicke::new(e).unwrap());
        worst = worst.max((ratio - (2.0 - e * e) / SQRT_2).abs());
    }
    let at_zero = (theta_l(1.0, 1, LambDicke::new(0.0).unwrap()) - SQRT_2).abs();
    let at_two = (theta_l(1.0, 1, LambDicke::new(2.0).unwrap()) + SQRT_2).abs();
    let pass = worst <= 1e-12 && at_zero <= 1e-12 && at_two <= 1e-12;
    report(
        "08 laguerre-ratio-identities",
        pass,
        &format!("max |ratio - (2-eta^2)/sqrt2| = {worst:.2e}, |ratio(0) - sqrt2| = {at_zero:.2e}, |ratio(2) + sqrt2| = {at_two:.2e}"),
    );
}

#[test]
fn criterion_09_trap_identities() {
    let mut rng = StdRng::seed_from_u64(99);
    let mut worst_sum = 0.0f64;
    let mut worst_prod = 0.0f64;
    let mut produced = 0usize;
    while produced < 100 {
        let p = TrapParameters::new(
            rng.gen_range(1.0..10.0),
            rng.gen_range(1.0..200.0),
            rng.gen_range(1e-3..2e-2),
        )
        .unwrap();
        let Ok(f) = frequencies_from(&p) else { continue };
        produced += 1;
        worst_sum = worst_sum
            .max(((f.omega_c_prime + f.omega_m - f.omega_c) / f.omega_c).abs());
        worst_prod = worst_prod.max(
            ((f.omega_c_prime * f.omega_m - f.omega_z * f.omega_z / 2.0)
                / (f.omega_z * f.omega_z / 2.0))
                .abs(),
        );
    }

    let example = frequencies_from(&TrapParameters::example()).unwrap();
    let tau = std::f64::consts::TAU;
    let hierarchy = example.omega_s / tau >= 1e9
        && example.omega_c_prime / tau >= 1e9
        && example.omega_z / tau >= 1e6
        && example.omega_z / tau < 1e9;

    let pass = worst_sum <= 1e-9 && worst_prod <= 1e-9 && hierarchy;
    report(
        "09 trap-identities",
        pass,
        &format!(
            "max rel err: sum = {worst_sum:.2e}, product = {worst_prod:.2e}; example spin/cyclotron/axial = {:.1} GHz / {:.1} GHz / {:.1} MHz",
            example.omega_s / tau / 1e9,
            example.omega_c_prime / tau / 1e9,
            example.omega_z / tau / 1e6
        ),
    );
}

#[test]
fn criterion_10_unitarity_and_truncation_hygiene() {
    let space = cfg();
    let eta = eta2();
    let mut worst_defect = 0.0f64;
    let mut worst_bound = 0.0f64;
    let mut operators = 0usize;

    // criterion 1-2 objects: the swapping composite and the whole catalog
    for rec in catalog(&space, eta) {
        let u = compose(&rec.schedule, eta, &space).unwrap();
        worst_defect = worst_defect.max(u.unitarity_defect());
        worst_bound = worst_bound.max(worst_boundary(&rec.schedule, eta, &space));
        operators += 1;
    }

    // criterion 3 objects: transfer sequences at random phases
    let mut rng = StdRng::seed_from_u64(1010);
    for _ in 0..20 {
        let sched = eigenstate_transfer_000_to_111([(); 5].map(|_| rng.gen_range(-PI..PI)));
        let u = compose(&sched, eta, &space).unwrap();
        worst_defect = worst_defect.max(u.unitarity_defect());
        worst_bound = worst_bound.max(worst_boundary(&sched, eta, &space));
        operators += 1;
    }

    // criterion 4 objects: every Deutsch-Jozsa circuit
    for f in BoolFn3::all_constant_and_balanced() {
        let sched = etrap::oracle::dj_schedule(&f).unwrap();
        if sched.is_empty() {
            continue;
        }
        let u = compose(&sched, eta, &space).unwrap();
        worst_defect = worst_defect.max(u.unitarity_defect());
        worst_bound = worst_bound.max(worst_boundary(&sched, eta, &space));
        operators += 1;
    }

    // pulse propagators across parameter space
    let mut rng = StdRng::seed_from_u64(2020);
    for _ in 0..100 {
        let theta = rng.gen_range(-8.0..8.0);
        let phi = rng.gen_range(-8.0..8.0);
        let e = LambDicke::new(rng.gen_range(0.0..3.0)).unwrap();
        for u in [
            propagator_s(theta, phi, &space),
            etrap::pulses::propagator_sa(theta, phi, e, &space),
            propagator_sc(theta, phi, &space),
        ] {
            worst_defect = worst_defect.max(u.unitarity_defect());
            operators += 3;
        }
    }

    let pass = worst_defect <= UNITARITY_TOL && worst_bound <= BOUNDARY_TOL;
    report(
        "10 unitarity-and-truncation-hygiene",
        pass,
        &format!(
            "{operators} operators checked, max |U+U - I| = {worst_defect:.2e}, max boundary population = {worst_bound:.2e}"
        ),
    );
}

#[test]
fn swap_constants_printed_for_reference() {
    // not a numbered criterion: records the constants the suite relies on
    let p = swap_phase_constants();
    println!(
        "acceptance constants: phi_s = {:.16}, alpha = {:.16}",
        p.phi_s, p.alpha
    );
    assert!((p.phi_s - 0.9527300414488132).abs() < 1e-12);

    // cphase matrix sanity pinned once more at the suite level
    let space = cfg();
    let u = compose(&gates::cphase_sc().schedule, eta2(), &space).unwrap();
    let block = u.computational_block(&space);
    let expect = [1.0, 1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0];
    let g = block[[0, 0]];
    for (x, &sign) in expect.iter().enumerate() {
        let dev = (block[[x, x]] - g * sign).norm();
        assert!(dev < 1e-12, "cphase diagonal at {x}: {dev:.3e}");
    }
}
