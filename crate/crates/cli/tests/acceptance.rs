//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p latblow-cli --test acceptance`.

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latblow::{
    apply_m, bound_alpha_le_1, certify, compute_trace, find_threshold, simulate,
    step_linear_direct, step_nonlinear, verify_comparison, BoxDomain, Field64, ModeTable64,
    Outcome, Params64, SeededRng, SpectralCoeffs, Stepped, ThresholdOutcome,
};
use latblow_cli::commands::{cmd_sweep, run_sweep};
use latblow_cli::ExperimentConfig;

const SUITE_SEED: u64 = 0x5eed_2024;
const SUITE_SIZE: usize = 100;
const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

struct SuiteInstance {
    a: Field64,
    alpha: f64,
}

fn random_domain(rng: &mut SeededRng, max_dims: usize, max_extent: usize) -> BoxDomain {
    let d = rng.int_in(1, max_dims);
    BoxDomain::new(
        (0..d)
            .map(|_| rng.int_in(2, max_extent))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// d in {1,2,3}, N_k in [2,6], alpha in {0.5,1,2}, interior values uniform in [0, 0.05).
fn suite() -> Vec<SuiteInstance> {
    let mut rng = SeededRng::new(SUITE_SEED);
    (0..SUITE_SIZE)
        .map(|_| {
            let domain = random_domain(&mut rng, 3, 6);
            let alpha = *rng.choose(&ALPHAS);
            let a = Field64::from_interior_fn(&domain, |_| rng.uniform_in(0.0, 0.05));
            SuiteInstance { a, alpha }
        })
        .collect()
}

fn line(values: &[f64]) -> Field64 {
    let d = BoxDomain::new([values.len() - 1]).unwrap();
    Field64::from_values(&d, values.to_vec()).unwrap()
}

fn golden_blowup() -> Verdict {
    let a = line(&[0.0, 0.9, 0.9, 0.9, 0.0]);
    let p = Params64::new(1.0, 1.0).unwrap();
    let start = Instant::now();
    let report = simulate(&a, &p, 10).unwrap();
    let elapsed = start.elapsed();
    match report.outcome {
        Outcome::BlewUpAt { step, site, g } => {
            // 0.9 is not a binary fraction; the stored input gives g = 4.5 + 1 ulp.
            let pass = step == 1
                && site == vec![1]
                && (g - 4.5).abs() <= 1e-14
                && elapsed < Duration::from_millis(1);
            verdict(
                pass,
                format!(
                    "s0={step} n0={site:?} g={g:?} |g-4.5|={:.1e} runtime={elapsed:?}",
                    (g - 4.5).abs()
                ),
            )
        }
        other => verdict(false, format!("unexpected outcome {other:?}")),
    }
}

fn golden_step() -> Verdict {
    let f = line(&[0.0, 0.4, 0.4, 0.4, 0.0]);
    let Stepped::Advanced { next, .. } =
        step_nonlinear(&f, &Params64::new(1.0, 1.0).unwrap()).unwrap()
    else {
        return verdict(false, "unexpected blow-up");
    };
    let expected = [0.0, 0.25, 2.0 / 3.0, 0.25, 0.0];
    let err = next
        .values()
        .iter()
        .zip(expected)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    verdict(
        err <= 1e-15,
        format!("f^1={:?} max err={err:.1e}", next.values()),
    )
}

fn comparison_suite(instances: &[SuiteInstance]) -> Verdict {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    let mut checked_steps = 0;
    for inst in instances {
        let v = verify_comparison(&inst.a, inst.alpha, 50, 1e-12).unwrap();
        checked_steps += v.margins.len();
        if let Some(m) = v.min_margin() {
            worst = worst.min(m);
        }
        if !v.holds() || v.margins.iter().any(|&m| m < -1e-12) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures == 0 && elapsed < Duration::from_secs(10),
        format!(
            "{} instances, {checked_steps} steps checked, min margin {worst:.3e}, failures {failures}, runtime {elapsed:?}",
            instances.len()
        ),
    )
}

fn certificate_soundness(instances: &[SuiteInstance]) -> Verdict {
    let mut certified = 0;
    let mut violations = 0;
    for inst in instances {
        let table = ModeTable64::new(inst.a.domain());
        let params = Params64::normalized(inst.alpha).unwrap();
        if certify(&table, &inst.a, &params)
            .unwrap()
            .certifies_global_existence()
        {
            certified += 1;
            if simulate(&inst.a, &params, 10_000).unwrap().outcome
                != (Outcome::Survived { steps: 10_000 })
            {
                violations += 1;
            }
        }
    }
    verdict(
        violations == 0 && certified > 0,
        format!(
            "{certified}/{} instances certified, {violations} violations over 10^4 steps",
            instances.len()
        ),
    )
}

fn spectral_equivalence() -> Verdict {
    let mut rng = SeededRng::new(SUITE_SEED ^ 5);
    let mut worst_direct = 0.0f64;
    let mut worst_eigen = 0.0f64;
    for _ in 0..50 {
        let d = random_domain(&mut rng, 3, 8);
        let table = ModeTable64::new(&d);
        let a = Field64::from_interior_fn(&d, |_| rng.uniform_in(0.0, 1.0));
        let b = table.analyze(&a).unwrap();
        let mut direct = a.clone();
        for s in 0..=50 {
            if s > 0 {
                direct = apply_m(&direct).unwrap();
            }
            let spectral = table.synthesize(&b, s).unwrap();
            worst_direct = worst_direct.max(spectral.max_abs_diff(&direct).unwrap());
        }
        debug_assert_eq!(direct, step_linear_direct(&a, 50).unwrap());
        for (mode, &c) in table.modes().iter().zip(table.eigenvalues()) {
            let v = table.mode_field(mode).unwrap();
            worst_eigen = worst_eigen.max(apply_m(&v).unwrap().max_abs_diff(&v.scaled(c)).unwrap());
        }
    }
    verdict(
        worst_direct <= 1e-9 && worst_eigen <= 1e-12,
        format!("max |spectral - direct| = {worst_direct:.2e} (s <= 50), max eigen residual = {worst_eigen:.2e}"),
    )
}

fn round_trips() -> Verdict {
    let mut rng = SeededRng::new(SUITE_SEED ^ 6);
    let mut worst_coeffs = 0.0f64;
    let mut worst_field = 0.0f64;
    for _ in 0..40 {
        let d = random_domain(&mut rng, 3, 8);
        let table = ModeTable64::new(&d);

        let b: Vec<f64> = (0..d.interior_count())
            .map(|_| rng.uniform_in(-1.0, 1.0))
            .collect();
        let coeffs = SpectralCoeffs::new(&d, b.clone()).unwrap();
        let back = table
            .analyze(&table.synthesize(&coeffs, 0).unwrap())
            .unwrap();
        let err = back
            .as_slice()
            .iter()
            .zip(&b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        worst_coeffs = worst_coeffs.max(err / b.iter().fold(1.0f64, |m, x| m.max(x.abs())));

        let a = Field64::from_interior_fn(&d, |_| rng.uniform_in(-1.0, 1.0));
        let rebuilt = table.synthesize(&table.analyze(&a).unwrap(), 0).unwrap();
        worst_field = worst_field.max(rebuilt.max_abs_diff(&a).unwrap() / a.max_abs().max(1.0));
    }
    verdict(
        worst_coeffs <= 1e-10 && worst_field <= 1e-10,
        format!("analyze(synthesize(B)) err {worst_coeffs:.2e}, synthesize(analyze(a)) err {worst_field:.2e}"),
    )
}

fn bound_arithmetic(instances: &[SuiteInstance]) -> Verdict {
    let table = ModeTable64::new(&BoxDomain::new([4]).unwrap());
    let value = bound_alpha_le_1(1.0, &table, 1.0).unwrap().bound_value;
    let exact = 2.0 / (1.0 - std::f64::consts::FRAC_1_SQRT_2) + 1.0;
    let golden_ok = (value - exact).abs() <= 1e-6 && (value - 7.8284271).abs() <= 1e-6;

    let mut violations = 0;
    let mut tightest = f64::INFINITY;
    for inst in instances {
        let table = ModeTable64::new(inst.a.domain());
        let params = Params64::normalized(inst.alpha).unwrap();
        let bound = certify(&table, &inst.a, &params).unwrap().bound_value;
        let p_s = *compute_trace(&inst.a, inst.alpha, 1000)
            .unwrap()
            .partial_sums
            .last()
            .unwrap();
        if p_s > bound {
            violations += 1;
        }
        tightest = tightest.min(bound - p_s);
    }
    verdict(
        golden_ok && violations == 0,
        format!(
            "bound(N=4, alpha=1, B=1) = {value:.10}, dominance violations {violations}/{}, min(bound - P_1000) = {tightest:.2e}",
            instances.len()
        ),
    )
}

fn monotonicity() -> Verdict {
    let mut rng = SeededRng::new(SUITE_SEED ^ 8);
    let tol = 1e-3;
    let steps = 200;
    let mut sweep_breaks = 0;
    let mut bracket_breaks = 0;
    let mut ceilings = 0;
    for _ in 0..20 {
        let d = random_domain(&mut rng, 2, 6);
        let alpha = *rng.choose(&ALPHAS);
        let delta = rng.uniform_in(0.5, 2.0);
        let seed = rng.next_u64();
        let params = Params64::new(alpha, delta).unwrap();
        let profile = latblow::random_field(&d, &mut SeededRng::new(seed), 1.0);
        let ceiling = params.threshold() / profile.max_value();

        let amplitudes: Vec<String> = (0..=24)
            .map(|i| format!("{:?}", ceiling * 1.5 * i as f64 / 24.0))
            .collect();
        let config = ExperimentConfig::from_json(&format!(
            r#"{{"extents": {:?}, "alpha": {alpha:?}, "delta": {delta:?}, "steps": {steps},
                "init": {{"kind": "random", "seed": {seed}, "max_amplitude": 1.0}},
                "sweep": {{"amplitudes": [{}]}}}}"#,
            d.extents(),
            amplitudes.join(",")
        ))
        .unwrap();
        let rows = run_sweep(&config).unwrap();
        let first_blowup = rows
            .iter()
            .position(|r| r.outcome.blew_up())
            .unwrap_or(rows.len());
        if rows[first_blowup..].iter().any(|r| !r.outcome.blew_up()) {
            sweep_breaks += 1;
        }

        let search = find_threshold(&profile, &params, steps, tol).unwrap();
        let blows = |l: f64| {
            simulate(&profile.scaled(l), &params, steps)
                .unwrap()
                .outcome
                .blew_up()
        };
        let consistent = match search.outcome {
            ThresholdOutcome::Bracketed => {
                blows(search.lambda_star * (1.0 + tol)) && !blows(search.lambda_star * (1.0 - tol))
            }
            ThresholdOutcome::CeilingSurvives => {
                ceilings += 1;
                !blows(search.ceiling)
            }
        };
        if !consistent {
            bracket_breaks += 1;
        }
    }
    verdict(
        sweep_breaks == 0 && bracket_breaks == 0,
        format!("20 combos: non-monotone sweeps {sweep_breaks}, inconsistent brackets {bracket_breaks} ({ceilings} hit the ceiling)"),
    )
}

fn determinism() -> Verdict {
    let configs = [
        r#"{"extents": [5, 4], "alpha": 1.0, "delta": 1.0, "steps": 300,
            "init": {"kind": "random", "seed": 42, "max_amplitude": 1.0},
            "sweep": {"alphas": [0.5, 1.0, 2.0], "amplitudes": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]}}"#,
        r#"{"extents": [3, 3, 4], "alpha": 2.0, "delta": 0.7, "steps": 500,
            "init": {"kind": "random", "seed": 7, "max_amplitude": 0.5},
            "sweep": {"amplitudes": [0.1, 0.5, 1.0, 1.5, 2.0]}}"#,
        r#"{"extents": [8], "alpha": 0.5, "delta": 3.0, "steps": 1000,
            "init": {"kind": "sine_mode", "mode": [1]},
            "sweep": {"alphas": [0.25, 0.5], "amplitudes": [0.001, 0.01, 0.1]}}"#,
    ];
    let mut identical = 0;
    for text in configs {
        let config = ExperimentConfig::from_json(text).unwrap();
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        cmd_sweep(&config, a.path()).unwrap();
        cmd_sweep(&config, b.path()).unwrap();
        if fs::read(a.path().join("sweep.csv")).unwrap()
            == fs::read(b.path().join("sweep.csv")).unwrap()
        {
            identical += 1;
        }
    }
    verdict(
        identical == configs.len(),
        format!(
            "{identical}/{} sweep configs byte-identical across two runs",
            configs.len()
        ),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Verdict + 'a>;

fn main() -> ExitCode {
    let instances = suite();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 golden blow-up", Box::new(golden_blowup)),
        ("2 golden step values", Box::new(golden_step)),
        (
            "3 comparison suite",
            Box::new(|| comparison_suite(&instances)),
        ),
        (
            "4 certificate soundness",
            Box::new(|| certificate_soundness(&instances)),
        ),
        ("5 spectral equivalence", Box::new(spectral_equivalence)),
        ("6 transform round trips", Box::new(round_trips)),
        (
            "7 bound arithmetic",
            Box::new(|| bound_arithmetic(&instances)),
        ),
        ("8 monotonicity", Box::new(monotonicity)),
        ("9 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let v = check();
        println!(
            "[{}] {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
