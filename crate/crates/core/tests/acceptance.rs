//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Criteria 1–8 are evaluated in oscillator units and again with
//! (m, ω, ħ) = (2, 3, 0.5); criterion 11 compares the two pass patterns.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use coherent_core::analytic::{
    analytic_evolved_wavefunction, coherent_wavefunction, default_fock_truncation, expectation_xp,
    fock_coefficients, fock_synthesize, orbit_radius, oscillating_packet,
    unnormalized_eigenfunction,
};
use coherent_core::primitives::{hermite_functions, inner_product, make_grid, norm, Grid};
use coherent_core::propagator::{
    fock_evolve, moments, split_step_evolve, PropagationPlan, Spectral, SplitStepper,
};
use coherent_core::verify::{
    annihilation_apply, classical_trajectory_check, default_probe_step, fidelity,
    schrodinger_residual, uncertainty_product, Family,
};
use coherent_core::{CoherentLabel, Complex64, PhysicalParams, WaveFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID_N: usize = 1024;
const SIGMA_MULT: f64 = 10.0;
const STEPS_PER_PERIOD: usize = 4096;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

fn label(re: f64, im: f64) -> CoherentLabel {
    CoherentLabel::from_parts(re, im).unwrap()
}

fn grid_for(l: &CoherentLabel, p: &PhysicalParams) -> Grid {
    make_grid(p, orbit_radius(l, p), SIGMA_MULT, GRID_N).unwrap()
}

fn random_labels(seed: u64, count: usize, max_modulus: f64) -> Vec<CoherentLabel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = max_modulus * rng.gen::<f64>().sqrt();
            let theta = TAU * rng.gen::<f64>();
            CoherentLabel::new(Complex64::from_polar(r, theta)).unwrap()
        })
        .collect()
}

fn diff_norm(a: &WaveFunction, b: &WaveFunction) -> f64 {
    let d = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x - y)
        .collect();
    norm(&a.with_values(d).unwrap())
}

// 1. Correct family solves the Schrödinger equation; phaseless family does not.
fn phase_counterexample(p: &PhysicalParams) -> Outcome {
    let start = Instant::now();
    let labels = [label(1.0, 1.0), label(2.0, -0.5), label(1.3, 0.7)];
    let probe = default_probe_step(p);
    let mut pass = true;
    let mut parts = Vec::new();
    for l in &labels {
        let g = grid_for(l, p);
        let (modulus, theta) = l.alpha().to_polar();
        let mut correct_max = 0.0f64;
        let mut phaseless_min = f64::INFINITY;
        for k in 0..16 {
            let t = k as f64 * p.period() / 16.0;
            let correct = schrodinger_residual(&Family::Coherent(*l), t, probe, p, &g).unwrap();
            correct_max = correct_max.max(correct.residual_norm);
            // ⟨x⟩⟨p⟩ = ħ|α|² sin 2(θ − ωt)
            let rate = 2.0
                * p.energy_quantum()
                * modulus
                * modulus
                * (2.0 * (theta - p.omega() * t)).cos();
            if rate.abs() > 1e-9 * p.energy_quantum() {
                let bad = schrodinger_residual(&Family::Phaseless(*l), t, probe, p, &g).unwrap();
                phaseless_min = phaseless_min.min(bad.residual_norm);
            }
        }
        let ratio = phaseless_min / correct_max;
        pass &= correct_max < 1e-6 && phaseless_min > 0.05 && ratio >= 10.0;
        parts.push(format!(
            "α={}: correct max {correct_max:.2e}, phaseless min {phaseless_min:.3}, ratio {ratio:.1e}",
            l.alpha()
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 5.0;
    Outcome::new(pass, format!("{}; {elapsed:.2}s", parts.join("; ")))
}

// 2. Analytic, split-step and Fock-phase evolutions agree.
fn oracle_triangle(p: &PhysicalParams) -> Outcome {
    let start = Instant::now();
    let labels = [
        label(3.0, 0.0),
        label(0.0, -3.0),
        label(-2.1, 2.1),
        label(1.5, -0.8),
        label(0.4, 0.2),
        label(0.0, 0.0),
    ];
    let mut worst = 1.0f64;
    for l in &labels {
        let g = grid_for(l, p);
        let coeffs = fock_coefficients(l, default_fock_truncation(l));
        let psi0 = coherent_wavefunction(l, p, &g).unwrap();
        let per = STEPS_PER_PERIOD / 16;
        let mut stepper = SplitStepper::new(psi0, p.period() / STEPS_PER_PERIOD as f64).unwrap();
        for k in 1..=16 {
            stepper.advance(per).unwrap();
            let t = k as f64 * p.period() / 16.0;
            let analytic = analytic_evolved_wavefunction(l, t, p, &g).unwrap();
            let fock = fock_synthesize(&fock_evolve(&coeffs, t, p), p, &g);
            let split = stepper.state();
            worst = worst
                .min(fidelity(&analytic, split).unwrap())
                .min(fidelity(&analytic, &fock).unwrap())
                .min(fidelity(split, &fock).unwrap());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Outcome::new(
        1.0 - worst <= 1e-6 && elapsed < 10.0,
        format!(
            "min pairwise fidelity 1 − {:.2e} over {} labels; {elapsed:.2}s",
            1.0 - worst,
            labels.len()
        ),
    )
}

// 3. Three algebraic groupings of the closed form agree pointwise.
fn three_forms(p: &PhysicalParams) -> Outcome {
    let amp = p.ground_amplitude();
    let kappa = p.inverse_width();
    let mut worst = 0.0f64;
    for l in random_labels(3, 200, 3.0) {
        let g = grid_for(&l, p);
        let a = l.alpha();
        let (a1, a2) = (a.re, a.im);
        // (mω/πħ)^{1/4} exp(α²/2 − |α|²/2) exp(−(κx − α)²)
        let first = WaveFunction::from_fn(g, *p, |x| {
            let u = Complex64::new(kappa * x, 0.0) - a;
            amp * (a * a * 0.5 - 0.5 * a.norm_sqr() - u * u).exp()
        });
        // (mω/πħ)^{1/4} exp(−iα₁α₂) exp(−(κx − α₁)²) exp(2iα₂κx)
        let second = WaveFunction::from_fn(g, *p, |x| {
            amp * Complex64::new(0.0, -a1 * a2).exp()
                * (-(kappa * x - a1).powi(2)).exp()
                * Complex64::new(0.0, 2.0 * a2 * kappa * x).exp()
        });
        let third = coherent_wavefunction(&l, p, &g).unwrap();
        for (u, v) in [(&first, &second), (&first, &third), (&second, &third)] {
            for (x, y) in u.values().iter().zip(v.values()) {
                let scale = x.norm().max(y.norm());
                if scale > 1e-250 {
                    worst = worst.max((x - y).norm() / scale);
                }
            }
        }
    }
    Outcome::new(
        worst < 1e-12,
        format!("max relative difference {worst:.2e} over 200 labels"),
    )
}

// 4. Fock synthesis reproduces the closed form including its global phase.
fn phase_convention(p: &PhysicalParams) -> Outcome {
    let mut worst = 0.0f64;
    for l in random_labels(4, 20, 2.5) {
        let g = grid_for(&l, p);
        let closed = coherent_wavefunction(&l, p, &g).unwrap();
        let synth = fock_synthesize(&fock_coefficients(&l, default_fock_truncation(&l)), p, &g);
        worst = worst.max(synth.max_abs_diff(&closed).unwrap() / p.ground_amplitude());
    }
    Outcome::new(
        worst < 1e-8,
        format!("max pointwise error {worst:.2e} (units of (mω/πħ)^1/4) over 20 labels"),
    )
}

// 5. âψ_α = αψ_α.
fn eigenrelation(p: &PhysicalParams) -> Outcome {
    let mut worst = 0.0f64;
    for l in random_labels(5, 20, 3.0) {
        let g = grid_for(&l, p);
        let psi = coherent_wavefunction(&l, p, &g).unwrap();
        let lowered = annihilation_apply(&psi).unwrap();
        let target = psi.clone().scaled(l.alpha());
        worst = worst.max(diff_norm(&lowered, &target) / norm(&psi));
    }
    Outcome::new(
        worst < 1e-8,
        format!("max relative residual {worst:.2e} over 20 labels"),
    )
}

// 6. Quadrature moments and the split-step classical orbit.
fn expectation_values(p: &PhysicalParams) -> Outcome {
    let (l_x, l_p) = (p.length_scale(), p.momentum_scale());
    let mut moment_err = 0.0f64;
    for l in random_labels(6, 20, 3.0) {
        let g = grid_for(&l, p);
        let psi = coherent_wavefunction(&l, p, &g).unwrap();
        let m = moments(&psi, &Spectral::new(&g).unwrap()).unwrap();
        let e = expectation_xp(&l, p);
        moment_err = moment_err
            .max((m.x_mean - e.x_mean).abs() / l_x)
            .max((m.p_mean - e.p_mean).abs() / l_p);
    }
    let mut orbit_pass = true;
    let mut orbit_err = 0.0f64;
    for l in [
        label(1.0, 1.0),
        label(0.0, 2.0),
        label(2.0, 0.0),
        label(-1.5, -2.0),
    ] {
        let g = grid_for(&l, p);
        let report = classical_trajectory_check(&l, 16, STEPS_PER_PERIOD, p, &g).unwrap();
        orbit_pass &= report.all_pass();
        for c in &report.checks {
            orbit_err = orbit_err.max(c.value.unwrap() / c.threshold * 1e-5);
        }
    }
    Outcome::new(
        moment_err < 1e-8 && orbit_pass,
        format!("moment error {moment_err:.2e}, orbit error {orbit_err:.2e} (natural units)"),
    )
}

fn eigenstate(n: usize, g: Grid, p: PhysicalParams) -> WaveFunction {
    WaveFunction::from_fn(g, p, |x| {
        Complex64::new(hermite_functions(x, n, &p)[n], 0.0)
    })
}

// 7. Δx·Δp = ħ/2 for coherent states, 3ħ/2 for |1⟩.
fn minimal_uncertainty(p: &PhysicalParams) -> Outcome {
    let hbar = p.hbar();
    let mut worst = 0.0f64;
    for l in random_labels(7, 20, 3.0) {
        let g = grid_for(&l, p);
        let psi = coherent_wavefunction(&l, p, &g).unwrap();
        worst = worst.max((uncertainty_product(&psi).unwrap() - 0.5 * hbar).abs() / hbar);
    }
    let g = make_grid(p, 0.0, 16.0, GRID_N).unwrap();
    let excited = (uncertainty_product(&eigenstate(1, g, *p)).unwrap() - 1.5 * hbar).abs() / hbar;
    Outcome::new(
        worst < 1e-8 && excited < 1e-7,
        format!("coherent max |ΔxΔp − ħ/2|/ħ {worst:.2e}; |1⟩ deviation {excited:.2e}"),
    )
}

// 8. The shape-preserving packet is the evolved coherent state.
fn oscillating_packet_exactness(p: &PhysicalParams) -> Outcome {
    let x0 = 2.0 * p.length_scale();
    let amp = p.ground_amplitude();
    let l = label(x0 * p.inverse_width(), 0.0);
    let g = make_grid(p, 2.0 * x0, SIGMA_MULT, GRID_N).unwrap();
    let mut match_err = 0.0f64;
    let mut shape_err = 0.0f64;
    for k in 0..24 {
        let t = k as f64 * p.period() / 24.0 + 0.013 / p.omega();
        let packet = oscillating_packet(x0, t, p, &g).unwrap();
        let analytic = analytic_evolved_wavefunction(&l, t, p, &g).unwrap();
        match_err = match_err.max(packet.max_abs_diff(&analytic).unwrap() / amp);
        // ρ(x, t) = ρ(x + x₀ − x₀cos ωt, 0)
        let shift = x0 - x0 * (p.omega() * t).cos();
        let initial = oscillating_packet(x0, 0.0, p, &g.shifted(shift).unwrap()).unwrap();
        for (a, b) in packet.values().iter().zip(initial.values()) {
            shape_err = shape_err.max((a.norm_sqr() - b.norm_sqr()).abs() / (amp * amp));
        }
    }
    let start = oscillating_packet(x0, 0.0, p, &g).unwrap();
    let later = oscillating_packet(x0, p.period(), p, &g).unwrap();
    let anti = later
        .max_abs_diff(&start.clone().scaled(Complex64::new(-1.0, 0.0)))
        .unwrap()
        / amp;
    Outcome::new(
        match_err < 1e-12 && anti < 1e-12 && shape_err < 1e-12,
        format!("vs evolved state {match_err:.2e}; ψ(T) + ψ(0) {anti:.2e}; density shape {shape_err:.2e}"),
    )
}

// 9. Without the normalizing exponential the eigenfunction is not normalized.
fn unnormalized_form() -> Outcome {
    let p = PhysicalParams::oscillator_units();
    let l = label(1.0, 1.0);
    let g = grid_for(&l, &p);
    let n = norm(&unnormalized_eigenfunction(&l, &p, &g).unwrap());
    let proper = norm(&coherent_wavefunction(&l, &p, &g).unwrap());
    Outcome::new(
        (n - 1.0).abs() > 0.1 && (proper - 1.0).abs() < 1e-8,
        format!(
            "norm {n:.12} (e^(α₂²) = {:.12}), normalized form {proper:.12}",
            1.0f64.exp()
        ),
    )
}

// 10. Halving dt reduces split-step infidelity by a factor in [3.5, 4.5].
fn convergence_order() -> Outcome {
    let p = PhysicalParams::oscillator_units();
    let l = label(1.0, 1.0);
    let g = grid_for(&l, &p);
    let psi0 = coherent_wavefunction(&l, &p, &g).unwrap();
    let exact = analytic_evolved_wavefunction(&l, p.period(), &p, &g).unwrap();
    let run = |steps: usize| {
        let plan = PropagationPlan::over_periods(1.0, steps, g, p).unwrap();
        let out = split_step_evolve(&psi0, &plan).unwrap();
        let infidelity = 1.0 - inner_product(&out, &exact).unwrap().norm_sqr();
        (infidelity, diff_norm(&out, &exact))
    };
    let (coarse, coarse_l2) = run(256);
    let (fine, fine_l2) = run(512);
    let ratio = coarse / fine;
    Outcome::new(
        (3.5..=4.5).contains(&ratio),
        format!(
            "infidelity {coarse:.3e} → {fine:.3e}, ratio {ratio:.2} \
             (L² state error ratio {:.2})",
            coarse_l2 / fine_l2
        ),
    )
}

type Criterion = (u32, &'static str, fn(&PhysicalParams) -> Outcome);

const UNIT_DEPENDENT: [Criterion; 8] = [
    (1, "phase counterexample", phase_counterexample),
    (2, "oracle triangle", oracle_triangle),
    (3, "three-form equivalence", three_forms),
    (4, "phase-convention consistency", phase_convention),
    (5, "eigenrelation", eigenrelation),
    (6, "expectation values", expectation_values),
    (7, "minimal uncertainty", minimal_uncertainty),
    (
        8,
        "oscillating packet exactness",
        oscillating_packet_exactness,
    ),
];

fn report(id: u32, name: &str, outcome: &Outcome) {
    let tag = if outcome.pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{tag}] {name}: {}", outcome.detail);
}

fn main() -> ExitCode {
    let units = PhysicalParams::oscillator_units();
    let scaled = PhysicalParams::new(2.0, 3.0, 0.5).unwrap();
    let mut all_pass = true;

    let mut base_pattern = Vec::new();
    for (id, name, run) in UNIT_DEPENDENT {
        let outcome = run(&units);
        report(id, name, &outcome);
        all_pass &= outcome.pass;
        base_pattern.push(outcome.pass);
    }

    let outcome = unnormalized_form();
    report(9, "unnormalized eigenfunction norm", &outcome);
    all_pass &= outcome.pass;

    let outcome = convergence_order();
    report(10, "split-step convergence order", &outcome);
    all_pass &= outcome.pass;

    let mut scaled_pattern = Vec::new();
    let mut lines = Vec::new();
    for (id, _, run) in UNIT_DEPENDENT {
        let outcome = run(&scaled);
        lines.push(format!(
            "{id}:{}",
            if outcome.pass { "pass" } else { "FAIL" }
        ));
        scaled_pattern.push(outcome.pass);
    }
    let outcome = Outcome::new(
        scaled_pattern == base_pattern,
        format!("(m, ω, ħ) = (2, 3, 0.5) → {}", lines.join(" ")),
    );
    report(11, "unit invariance", &outcome);
    all_pass &= outcome.pass;

    if all_pass {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
