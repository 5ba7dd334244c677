//! Majorant super-solution of the normalized dynamics and the small-data bounds.
//!
//! Everything here works on the normalized system `alpha * delta = 1`
//! (blow-up level 1); use [`crate::evolution::normalize_scaling`] first.
//!
//! With `h^s` the linear solution from the same data and `m_s = max h^s` over
//! the interior, the majorant is
//!
//! ```text
//! fbar^s = h^s / {1 - P_s}^{1/alpha},    P_s = sum_{k<=s} |m_k|^alpha,
//! ```
//!
//! defined while `P_s < 1`. Wherever it is defined it dominates the nonlinear
//! solution, which therefore has not blown up. `P_infinity < 1` is certified
//! by two series bounds, one per regime of `alpha`.

use crate::domain::Site;
use crate::error::{Error, Result};
use crate::evolution::{self, normalize_scaling, simulate, Params, Stepped};
use crate::field::Field;
use crate::scalar::Scalar;
use crate::spectral::{apply_m_unchecked, ModeTable};

/// Default relative slack for the comparison `fbar >= f`.
pub const COMPARISON_SLACK: f64 = 1e-12;

/// Maxima `m_s` of the linear solution and their powered partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorantTrace<T> {
    pub alpha: T,
    /// `m_0..=m_S`.
    pub m: Vec<T>,
    /// `P_s = sum_{k<=s} |m_k|^alpha`, nondecreasing.
    pub partial_sums: Vec<T>,
    /// Largest `s` with `P_s < 1`; `None` when already `P_0 >= 1`.
    pub defined_up_to: Option<usize>,
}

impl<T: Scalar> MajorantTrace<T> {
    /// Number of simulated steps `S`.
    pub fn horizon(&self) -> usize {
        self.m.len() - 1
    }

    /// True when the majorant exists at every step of the horizon.
    pub fn covers_horizon(&self) -> bool {
        self.defined_up_to == Some(self.horizon())
    }

    pub fn is_defined_at(&self, s: usize) -> bool {
        self.defined_up_to.is_some_and(|d| s <= d)
    }
}

/// Runs the linear problem `S` steps by direct stepping and records `m_s`, `P_s`.
pub fn compute_trace<T: Scalar>(a: &Field<T>, alpha: T, steps: usize) -> Result<MajorantTrace<T>> {
    a.require_admissible()?;
    Params::normalized(alpha)?;
    let mut m = Vec::with_capacity(steps + 1);
    let mut partial_sums = Vec::with_capacity(steps + 1);
    let mut defined_up_to = None;
    let mut sum = T::zero();
    let mut h = a.clone();
    for s in 0..=steps {
        let ms = h.max_interior();
        sum = sum + ms.abs().pow_pos(alpha);
        if sum < T::one() {
            defined_up_to = Some(s);
        }
        m.push(ms);
        partial_sums.push(sum);
        if s < steps {
            h = apply_m_unchecked(&h);
        }
    }
    Ok(MajorantTrace {
        alpha,
        m,
        partial_sums,
        defined_up_to,
    })
}

/// `fbar^s = h^s / (1 - P_s)^{1/alpha}`; refused once `P_s >= 1`.
pub fn majorant_field<T: Scalar>(
    trace: &MajorantTrace<T>,
    h_s: &Field<T>,
    s: usize,
) -> Result<Field<T>> {
    if !trace.is_defined_at(s) {
        return Err(Error::MajorantUndefined {
            step: s,
            defined_up_to: trace.defined_up_to,
        });
    }
    let denom = (T::one() - trace.partial_sums[s]).powf(trace.alpha.recip());
    let values = h_s.values().iter().map(|&h| h / denom).collect();
    Field::from_values(h_s.domain(), values)
}

/// A point where the comparison with the majorant fails.
#[derive(Debug, Clone, PartialEq)]
pub enum Falsification<T> {
    /// `fbar^step_site < f^step_site` beyond the slack.
    Inequality {
        step: usize,
        site: Site,
        majorant: T,
        solution: T,
    },
    /// The nonlinear solution blew up at `step` although the majorant exists at `step + 1`.
    BlewUp { step: usize, site: Site, g: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonVerdict<T> {
    pub trace: MajorantTrace<T>,
    /// `min_n (fbar^s_n - f^s_n)` for each checked step.
    pub margins: Vec<T>,
    pub falsification: Option<Falsification<T>>,
}

impl<T: Scalar> ComparisonVerdict<T> {
    pub fn holds(&self) -> bool {
        self.falsification.is_none()
    }

    /// The check stopped before the horizon because `P_s` reached 1.
    pub fn truncated(&self) -> bool {
        !self.trace.covers_horizon()
    }

    pub fn min_margin(&self) -> Option<T> {
        self.margins.iter().copied().reduce(T::min)
    }
}

/// Checks `fbar^s >= f^s - slack * max(1, fbar^s)` site by site, and that the
/// nonlinear solution exists, for every `s <= min(steps, defined_up_to)`.
///
/// `a` is initial data of the normalized system.
pub fn verify_comparison<T: Scalar>(
    a: &Field<T>,
    alpha: T,
    steps: usize,
    slack: T,
) -> Result<ComparisonVerdict<T>> {
    let params = Params::normalized(alpha)?;
    let trace = compute_trace(a, alpha, steps)?;
    let mut margins = Vec::new();
    let mut falsification = None;

    if let Some(limit) = trace.defined_up_to {
        let mut f = a.clone();
        let mut h = a.clone();
        'steps: for s in 0..=limit {
            let bar = majorant_field(&trace, &h, s)?;
            let mut margin = T::infinity();
            for (flat, (&fb, &fv)) in bar.values().iter().zip(f.values()).enumerate() {
                margin = margin.min(fb - fv);
                if fb < fv - slack * fb.max(T::one()) {
                    falsification = Some(Falsification::Inequality {
                        step: s,
                        site: a.domain().site_of(flat),
                        majorant: fb,
                        solution: fv,
                    });
                    margins.push(margin);
                    break 'steps;
                }
            }
            margins.push(margin);
            if s == limit {
                break;
            }
            match evolution::step_unchecked(&f, &params) {
                Stepped::Advanced { next, .. } => f = next,
                Stepped::BlowUp { signal, .. } => {
                    falsification = Some(Falsification::BlewUp {
                        step: s,
                        site: signal.site,
                        g: signal.g,
                    });
                    break;
                }
            }
            h = apply_m_unchecked(&h);
        }
    }

    Ok(ComparisonVerdict {
        trace,
        margins,
        falsification,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `0 < alpha <= 1`, subadditivity of `x^alpha`.
    AlphaLeOne,
    /// `alpha > 1`, explicit prefix plus geometric tail.
    AlphaGtOne,
}

impl Regime {
    pub fn for_alpha<T: Scalar>(alpha: T) -> Self {
        if alpha <= T::one() {
            Regime::AlphaLeOne
        } else {
            Regime::AlphaGtOne
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::AlphaLeOne => "alpha_le_1",
            Regime::AlphaGtOne => "alpha_gt_1",
        }
    }
}

/// Upper bound on `sum_k |m_k|^alpha`. A value below 1 certifies that the
/// normalized solution never blows up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport<T> {
    pub regime: Regime,
    pub bound_value: T,
    /// Start of the geometric tail (`alpha > 1` only).
    pub s0_tail: Option<usize>,
    /// `max_m |B_m|`.
    pub b_max: T,
}

impl<T: Scalar> BoundReport<T> {
    pub fn certifies_global_existence(&self) -> bool {
        self.bound_value < T::one()
    }
}

fn check_b_max<T: Scalar>(b_max: T) -> Result<()> {
    if b_max.is_finite() && b_max >= T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "b_max",
            reason: format!("must be finite and nonnegative, got {b_max}"),
        })
    }
}

/// `B^alpha * sum_m 1 / (1 - |c_m|^alpha)` for `0 < alpha <= 1`.
pub fn bound_alpha_le_1<T: Scalar>(
    b_max: T,
    modes: &ModeTable<T>,
    alpha: T,
) -> Result<BoundReport<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("this bound needs 0 < alpha <= 1, got {alpha}"),
        });
    }
    check_b_max(b_max)?;
    let series = modes.eigenvalues().iter().fold(T::zero(), |acc, c| {
        acc + (T::one() - c.abs().pow_pos(alpha)).recip()
    });
    Ok(BoundReport {
        regime: Regime::AlphaLeOne,
        bound_value: b_max.pow_pos(alpha) * series,
        s0_tail: None,
        b_max,
    })
}

/// Smallest `s` with `sum_m |c_m|^s < 1`; the sum decreases in `s`, so it stays below 1 afterwards.
pub fn tail_start<T: Scalar>(modes: &ModeTable<T>) -> usize {
    let abs: Vec<T> = modes.eigenvalues().iter().map(|c| c.abs()).collect();
    let mut powers = vec![T::one(); abs.len()];
    let mut s = 0;
    while powers.iter().fold(T::zero(), |acc, &p| acc + p) >= T::one() {
        for (p, &c) in powers.iter_mut().zip(&abs) {
            *p = *p * c;
        }
        s += 1;
    }
    s
}

/// `sum_{k<s0} |m_k|^alpha + B^alpha sum_m |c_m|^{s0} / (1 - |c_m|)` for `alpha > 1`.
///
/// `m_prefix` must hold at least `m_0..m_{s0-1}`, with `s0` from [`tail_start`].
pub fn bound_alpha_gt_1<T: Scalar>(
    b_max: T,
    modes: &ModeTable<T>,
    alpha: T,
    m_prefix: &[T],
) -> Result<BoundReport<T>> {
    if !(alpha > T::one() && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("this bound needs alpha > 1, got {alpha}"),
        });
    }
    check_b_max(b_max)?;
    let s0 = tail_start(modes);
    if m_prefix.len() < s0 {
        return Err(Error::ShortPrefix {
            needed: s0,
            got: m_prefix.len(),
        });
    }
    let head = m_prefix[..s0]
        .iter()
        .fold(T::zero(), |acc, m| acc + m.abs().pow_pos(alpha));
    let tail = modes.eigenvalues().iter().fold(T::zero(), |acc, c| {
        let c = c.abs();
        acc + c.pow_step(s0) / (T::one() - c)
    });
    Ok(BoundReport {
        regime: Regime::AlphaGtOne,
        bound_value: head + b_max.pow_pos(alpha) * tail,
        s0_tail: Some(s0),
        b_max,
    })
}

/// Normalizes `(a, params)`, expands the data in sine modes and evaluates the
/// bound for the regime of `alpha`.
pub fn certify<T: Scalar>(
    modes: &ModeTable<T>,
    a: &Field<T>,
    params: &Params<T>,
) -> Result<BoundReport<T>> {
    let (scaled, normalized) = normalize_scaling(a, params)?;
    let alpha = normalized.alpha();
    let b_max = modes.analyze(&scaled)?.b_max();
    match Regime::for_alpha(alpha) {
        Regime::AlphaLeOne => bound_alpha_le_1(b_max, modes, alpha),
        Regime::AlphaGtOne => {
            let s0 = tail_start(modes);
            let trace = compute_trace(&scaled, alpha, s0)?;
            bound_alpha_gt_1(b_max, modes, alpha, &trace.m)
        }
    }
}

/// One bisection probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionStep<T> {
    pub iteration: usize,
    pub lo: T,
    pub hi: T,
    pub amplitude: T,
    pub blew_up: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdOutcome {
    /// Blow-up above `lambda_star * (1 + tol)`, survival below `lambda_star * (1 - tol)`.
    Bracketed,
    /// Even the ceiling amplitude survived the horizon; `lambda_star` is the ceiling.
    CeilingSurvives,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSearch<T> {
    pub outcome: ThresholdOutcome,
    pub lambda_star: T,
    /// Largest amplitude known to survive.
    pub lambda_lo: T,
    /// Smallest amplitude known to blow up (the ceiling when nothing blew up).
    pub lambda_hi: T,
    /// Amplitude at which `max(lambda * profile)` equals the blow-up level.
    pub ceiling: T,
    pub trace: Vec<BisectionStep<T>>,
}

const MAX_BISECTIONS: usize = 200;

/// Bisects the amplitude `lambda` of `lambda * profile` between survival and
/// blow-up within `steps` steps. Relies on monotonicity of the dynamics in the
/// initial data.
pub fn find_threshold<T: Scalar>(
    profile: &Field<T>,
    params: &Params<T>,
    steps: usize,
    tol: T,
) -> Result<ThresholdSearch<T>> {
    profile.require_admissible()?;
    if !(tol > T::zero() && tol < T::one()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("must lie in (0, 1), got {tol}"),
        });
    }
    let peak = profile.max_value();
    if peak <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "profile",
            reason: "must not vanish identically".into(),
        });
    }

    let blows_up = |lambda: T| -> Result<bool> {
        Ok(simulate(&profile.scaled(lambda), params, steps)?
            .outcome
            .blew_up())
    };

    let ceiling = params.threshold() / peak;
    let mut trace = vec![BisectionStep {
        iteration: 0,
        lo: T::zero(),
        hi: ceiling,
        amplitude: ceiling,
        blew_up: blows_up(ceiling)?,
    }];
    if !trace[0].blew_up {
        return Ok(ThresholdSearch {
            outcome: ThresholdOutcome::CeilingSurvives,
            lambda_star: ceiling,
            lambda_lo: ceiling,
            lambda_hi: ceiling,
            ceiling,
            trace,
        });
    }

    // Stopping at hi - lo <= tol * (hi + lo) / 2 leaves twice the room needed
    // for the bracket property at the midpoint.
    let half = T::of(0.5);
    let (mut lo, mut hi) = (T::zero(), ceiling);
    for iteration in 1..=MAX_BISECTIONS {
        if hi - lo <= tol * (hi + lo) * half {
            break;
        }
        let mid = (lo + hi) * half;
        let blew_up = blows_up(mid)?;
        trace.push(BisectionStep {
            iteration,
            lo,
            hi,
            amplitude: mid,
            blew_up,
        });
        if blew_up {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdSearch {
        outcome: ThresholdOutcome::Bracketed,
        lambda_star: (lo + hi) * half,
        lambda_lo: lo,
        lambda_hi: hi,
        ceiling,
        trace,
    })
}
