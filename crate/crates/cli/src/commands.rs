//! The five workflows. Each reads a validated config, writes its artifacts
//! into the output directory and returns the process status.

use std::path::Path;

use latblow::{
    certify, find_threshold, normalize_scaling, simulate, verify_comparison, BoundReport,
    Falsification, ModeTable64, Outcome, Params64, ThresholdOutcome,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::fieldfile::{initial_field, profile, write_field};
use crate::output::{real, write_json, CsvDoc};

/// Process exit status of a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// `simulate` observed blow-up.
    BlewUp,
    /// `verify` found a point where the majorant does not dominate.
    Falsified,
}

impl Status {
    pub const CONFIG_ERROR: u8 = 2;
    pub const RUNTIME_ERROR: u8 = 1;

    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::BlewUp => 3,
            Status::Falsified => 4,
        }
    }
}

#[derive(Debug, Serialize)]
struct ParamsEcho {
    alpha: f64,
    delta: f64,
    threshold: f64,
    blowup_guard: f64,
}

impl From<&Params64> for ParamsEcho {
    fn from(p: &Params64) -> Self {
        Self {
            alpha: p.alpha(),
            delta: p.delta(),
            threshold: p.threshold(),
            blowup_guard: p.blowup_guard(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OutcomeJson {
    BlewUp { s0: usize, n0: Vec<usize>, g: f64 },
    Survived { steps: usize },
}

impl From<&Outcome<f64>> for OutcomeJson {
    fn from(o: &Outcome<f64>) -> Self {
        match o {
            Outcome::BlewUpAt { step, site, g } => OutcomeJson::BlewUp {
                s0: *step,
                n0: site.clone(),
                g: *g,
            },
            Outcome::Survived { steps } => OutcomeJson::Survived { steps: *steps },
        }
    }
}

#[derive(Debug, Serialize)]
struct SimulateReport<'a> {
    command: &'static str,
    extents: &'a [usize],
    params: ParamsEcho,
    steps: usize,
    amplitude: f64,
    outcome: OutcomeJson,
}

/// `simulate`: `trajectory.csv`, `report.json`, `initial_field.json`.
pub fn cmd_simulate(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Status> {
    let params = config.params()?;
    let a = initial_field(config)?;
    let report = simulate(&a, &params, config.steps)?;

    let mut csv = CsvDoc::new(&["step", "max_f", "max_g", "blowup_flag"])?;
    let last = report.trace.len() - 1;
    for (i, r) in report.trace.iter().enumerate() {
        let flag = report.outcome.blew_up() && i == last;
        csv.row([
            r.step.to_string(),
            real(r.max_f),
            real(r.max_g),
            u8::from(flag).to_string(),
        ])?;
    }
    csv.save(&out.join("trajectory.csv"))?;

    write_field(&out.join("initial_field.json"), &a)?;
    write_json(
        &out.join("report.json"),
        &SimulateReport {
            command: "simulate",
            extents: &config.extents,
            params: (&params).into(),
            steps: config.steps,
            amplitude: config.amplitude,
            outcome: (&report.outcome).into(),
        },
    )?;
    Ok(if report.outcome.blew_up() {
        Status::BlewUp
    } else {
        Status::Success
    })
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FalsificationJson {
    Inequality {
        step: usize,
        site: Vec<usize>,
        majorant: f64,
        solution: f64,
    },
    BlewUp {
        step: usize,
        site: Vec<usize>,
        g: f64,
    },
}

impl From<&Falsification<f64>> for FalsificationJson {
    fn from(f: &Falsification<f64>) -> Self {
        match f {
            Falsification::Inequality {
                step,
                site,
                majorant,
                solution,
            } => FalsificationJson::Inequality {
                step: *step,
                site: site.clone(),
                majorant: *majorant,
                solution: *solution,
            },
            Falsification::BlewUp { step, site, g } => FalsificationJson::BlewUp {
                step: *step,
                site: site.clone(),
                g: *g,
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    command: &'static str,
    extents: &'a [usize],
    alpha: f64,
    delta: f64,
    scaling_factor: f64,
    steps: usize,
    comparison_slack: f64,
    holds: bool,
    truncated: bool,
    defined_up_to: Option<usize>,
    note: Option<String>,
    min_margin: Option<f64>,
    margins: Vec<f64>,
    m: Vec<f64>,
    partial_sums: Vec<f64>,
    falsification: Option<FalsificationJson>,
}

/// `verify`: `verify.json`. Works on the normalized system.
pub fn cmd_verify(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Status> {
    let params = config.params()?;
    let (a, normalized) = normalize_scaling(&initial_field(config)?, &params)?;
    let verdict = verify_comparison(
        &a,
        normalized.alpha(),
        config.steps,
        config.tolerances.comparison_slack,
    )?;
    let note = verdict
        .truncated()
        .then(|| match verdict.trace.defined_up_to {
            Some(s) => format!(
                "partial sum reaches 1 at step {}; comparison checked only up to step {s}",
                s + 1
            ),
            None => {
                "partial sum is already >= 1 at step 0; the majorant is nowhere defined".to_string()
            }
        });
    write_json(
        &out.join("verify.json"),
        &VerifyReport {
            command: "verify",
            extents: &config.extents,
            alpha: params.alpha(),
            delta: params.delta(),
            scaling_factor: params.scaling_factor(),
            steps: config.steps,
            comparison_slack: config.tolerances.comparison_slack,
            holds: verdict.holds(),
            truncated: verdict.truncated(),
            defined_up_to: verdict.trace.defined_up_to,
            note,
            min_margin: verdict.min_margin(),
            margins: verdict.margins.clone(),
            m: verdict.trace.m.clone(),
            partial_sums: verdict.trace.partial_sums.clone(),
            falsification: verdict.falsification.as_ref().map(Into::into),
        },
    )?;
    Ok(if verdict.holds() {
        Status::Success
    } else {
        Status::Falsified
    })
}

#[derive(Debug, Serialize)]
struct BoundJson<'a> {
    command: &'static str,
    extents: &'a [usize],
    alpha: f64,
    delta: f64,
    regime: &'static str,
    bound_value: f64,
    s0_tail: Option<usize>,
    b_max: f64,
    certifies_global_existence: bool,
}

/// `bound`: `bound.json`.
pub fn cmd_bound(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Status> {
    let params = config.params()?;
    let a = initial_field(config)?;
    let table = ModeTable64::new(&config.domain());
    let report: BoundReport<f64> = certify(&table, &a, &params)?;
    write_json(
        &out.join("bound.json"),
        &BoundJson {
            command: "bound",
            extents: &config.extents,
            alpha: params.alpha(),
            delta: params.delta(),
            regime: report.regime.name(),
            bound_value: report.bound_value,
            s0_tail: report.s0_tail,
            b_max: report.b_max,
            certifies_global_existence: report.certifies_global_existence(),
        },
    )?;
    Ok(Status::Success)
}

#[derive(Debug, Serialize)]
struct ThresholdJson<'a> {
    command: &'static str,
    extents: &'a [usize],
    alpha: f64,
    delta: f64,
    steps: usize,
    tol: f64,
    outcome: &'static str,
    lambda_star: f64,
    lambda_lo: f64,
    lambda_hi: f64,
    ceiling: f64,
    probes: usize,
}

/// `threshold`: `threshold.json` and `bisection.csv`. The searched profile is
/// the configured initial data.
pub fn cmd_threshold(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Status> {
    let params = config.params()?;
    let shape = initial_field(config)?;
    let tol = config.tolerances.threshold;
    let search = find_threshold(&shape, &params, config.steps, tol)?;

    let mut csv = CsvDoc::new(&["iteration", "lo", "hi", "amplitude", "blew_up"])?;
    for p in &search.trace {
        csv.row([
            p.iteration.to_string(),
            real(p.lo),
            real(p.hi),
            real(p.amplitude),
            u8::from(p.blew_up).to_string(),
        ])?;
    }
    csv.save(&out.join("bisection.csv"))?;

    write_json(
        &out.join("threshold.json"),
        &ThresholdJson {
            command: "threshold",
            extents: &config.extents,
            alpha: params.alpha(),
            delta: params.delta(),
            steps: config.steps,
            tol,
            outcome: match search.outcome {
                ThresholdOutcome::Bracketed => "bracketed",
                ThresholdOutcome::CeilingSurvives => "ceiling_survives",
            },
            lambda_star: search.lambda_star,
            lambda_lo: search.lambda_lo,
            lambda_hi: search.lambda_hi,
            ceiling: search.ceiling,
            probes: search.trace.len(),
        },
    )?;
    Ok(Status::Success)
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub amplitude: f64,
    pub outcome: Outcome<f64>,
    pub bound: f64,
}

/// Runs every `(alpha, amplitude)` grid point; rows come back in grid order
/// (alphas outer, amplitudes inner).
pub fn run_sweep(config: &ExperimentConfig) -> anyhow::Result<Vec<SweepRow>> {
    let grid = config
        .sweep
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("config.sweep: required by the sweep command"))?;
    let alphas = if grid.alphas.is_empty() {
        vec![config.alpha]
    } else {
        grid.alphas.clone()
    };
    let shape = profile(config)?;
    let table = ModeTable64::new(&config.domain());
    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&al| grid.amplitudes.iter().map(move |&am| (al, am)))
        .collect();
    points
        .par_iter()
        .map(|&(alpha, amplitude)| {
            let params = config.params_with_alpha(alpha)?;
            let a = shape.scaled(amplitude);
            let outcome = simulate(&a, &params, config.steps)?.outcome;
            let bound = certify(&table, &a, &params)?.bound_value;
            Ok(SweepRow {
                alpha,
                amplitude,
                outcome,
                bound,
            })
        })
        .collect()
}

/// `sweep`: `sweep.csv`, one row per grid point.
pub fn cmd_sweep(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Status> {
    let rows = run_sweep(config)?;
    let mut csv = CsvDoc::new(&["alpha", "amplitude", "outcome", "steps", "bound"])?;
    for r in &rows {
        csv.row([
            real(r.alpha),
            real(r.amplitude),
            if r.outcome.blew_up() {
                "blew_up"
            } else {
                "survived"
            }
            .to_string(),
            r.outcome.step().to_string(),
            real(r.bound),
        ])?;
    }
    csv.save(&out.join("sweep.csv"))?;
    Ok(Status::Success)
}
