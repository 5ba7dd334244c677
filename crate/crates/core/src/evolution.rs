//! Nonlinear lattice dynamics
//!
//! ```text
//! f^{s+1}_n = g^s_n / {1 - alpha*delta*(g^s_n)^alpha}^{1/alpha}   (n interior)
//! f^s_n     = 0                                                   (n on the boundary)
//! ```
//!
//! where `g^s_n` is the mean of the `2d` axis neighbours of `n`. The update
//! is singular once `g` reaches `(alpha*delta)^{-1/alpha}`; the first step at
//! which that happens is the blow-up time.

use crate::domain::Site;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::Scalar;

/// Nonlinearity strength `alpha`, coupling `delta` and the derived blow-up level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params<T> {
    alpha: T,
    delta: T,
    alpha_delta: T,
    threshold: T,
    blowup_guard: T,
}

impl<T: Scalar> Params<T> {
    pub fn new(alpha: T, delta: T) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("delta", delta)?;
        let alpha_delta = alpha * delta;
        positive("alpha*delta", alpha_delta)?;
        let threshold = alpha_delta.powf(-alpha.recip());
        if !(threshold.is_finite() && threshold > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "alpha*delta",
                reason: format!("blow-up level {threshold} is not a positive finite number"),
            });
        }
        Ok(Self {
            alpha,
            delta,
            alpha_delta,
            threshold,
            blowup_guard: T::zero(),
        })
    }

    /// Parameters of the rescaled system: `delta = 1/alpha`, so the blow-up level is 1.
    pub fn normalized(alpha: T) -> Result<Self> {
        positive("alpha", alpha)?;
        Ok(Self {
            alpha,
            delta: alpha.recip(),
            alpha_delta: T::one(),
            threshold: T::one(),
            blowup_guard: T::zero(),
        })
    }

    /// Treat `1 - alpha*delta*g^alpha <= guard` as blow-up. The default guard is 0.
    pub fn with_blowup_guard(mut self, guard: T) -> Result<Self> {
        if !(guard >= T::zero() && guard < T::one()) {
            return Err(Error::InvalidParameter {
                name: "blowup_guard",
                reason: format!("must lie in [0, 1), got {guard}"),
            });
        }
        self.blowup_guard = guard;
        Ok(self)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    /// The product `alpha * delta` (exactly 1 for normalized parameters).
    pub fn alpha_delta(&self) -> T {
        self.alpha_delta
    }

    /// Blow-up level `(alpha*delta)^{-1/alpha}`.
    pub fn threshold(&self) -> T {
        self.threshold
    }

    pub fn blowup_guard(&self) -> T {
        self.blowup_guard
    }

    /// Factor `(alpha*delta)^{1/alpha}` mapping a solution onto the normalized system.
    pub fn scaling_factor(&self) -> T {
        self.alpha_delta.powf(self.alpha.recip())
    }

    /// Nonlinear map `x -> x / {1 - alpha*delta*x^alpha}^{1/alpha}`, or `None`
    /// when the denominator base falls to the guard or below.
    #[inline]
    pub fn amplify(&self, g: T) -> Option<T> {
        let base = T::one() - self.alpha_delta * g.pow_pos(self.alpha);
        if base <= self.blowup_guard {
            None
        } else {
            Some(g / base.powf(self.alpha.recip()))
        }
    }
}

fn positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be a positive finite number, got {v}"),
        })
    }
}

/// First interior site, in lexicographic order, whose neighbour mean reached the blow-up level.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupSignal<T> {
    pub site: Site,
    pub g: T,
}

/// Result of one nonlinear step.
#[derive(Debug, Clone, PartialEq)]
pub enum Stepped<T> {
    Advanced { next: Field<T>, max_g: T },
    BlowUp { signal: BlowupSignal<T>, max_g: T },
}

/// Applies one step of the nonlinear update.
///
/// Rejects fields that are not admissible (nonzero boundary, negative or
/// non-finite values); blow-up is reported as [`Stepped::BlowUp`].
pub fn step_nonlinear<T: Scalar>(f: &Field<T>, params: &Params<T>) -> Result<Stepped<T>> {
    f.require_admissible()?;
    Ok(step_unchecked(f, params))
}

pub(crate) fn step_unchecked<T: Scalar>(f: &Field<T>, params: &Params<T>) -> Stepped<T> {
    let domain = f.domain();
    let mut next = Field::zeros(domain);
    let mut max_g = T::zero();
    let mut first: Option<BlowupSignal<T>> = None;
    for &flat in domain.interior_flat() {
        let g = f.neighbor_average_flat(flat);
        max_g = max_g.max(g);
        if first.is_some() {
            continue;
        }
        match params.amplify(g) {
            Some(v) => *next.at_mut(flat) = v,
            None => {
                first = Some(BlowupSignal {
                    site: domain.site_of(flat),
                    g,
                })
            }
        }
    }
    match first {
        Some(signal) => Stepped::BlowUp { signal, max_g },
        None => Stepped::Advanced { next, max_g },
    }
}

/// Per-step summary: `max f^s` over the box and `max g^s` over the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord<T> {
    pub step: usize,
    pub max_f: T,
    pub max_g: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    /// `g^{step}` reached the blow-up level at `site`; every earlier step stayed below it.
    BlewUpAt { step: usize, site: Site, g: T },
    /// `g^s` stayed below the blow-up level for every `s <= steps`.
    Survived { steps: usize },
}

impl<T> Outcome<T> {
    pub fn blew_up(&self) -> bool {
        matches!(self, Outcome::BlewUpAt { .. })
    }

    /// Blow-up step, or the survived horizon.
    pub fn step(&self) -> usize {
        match self {
            Outcome::BlewUpAt { step, .. } => *step,
            Outcome::Survived { steps } => *steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport<T> {
    pub outcome: Outcome<T>,
    /// One record per step `0..=s0` (blown up) or `0..=steps` (survived).
    pub trace: Vec<TraceRecord<T>>,
}

/// Runs the nonlinear dynamics from `initial` until blow-up or `max_steps`.
pub fn simulate<T: Scalar>(
    initial: &Field<T>,
    params: &Params<T>,
    max_steps: usize,
) -> Result<BlowupReport<T>> {
    initial.require_admissible()?;
    let mut trace = Vec::new();
    let mut f = initial.clone();
    for step in 0..=max_steps {
        let max_f = f.max_value();
        match step_unchecked(&f, params) {
            Stepped::BlowUp { signal, max_g } => {
                trace.push(TraceRecord { step, max_f, max_g });
                return Ok(BlowupReport {
                    outcome: Outcome::BlewUpAt {
                        step,
                        site: signal.site,
                        g: signal.g,
                    },
                    trace,
                });
            }
            Stepped::Advanced { next, max_g } => {
                trace.push(TraceRecord { step, max_f, max_g });
                f = next;
            }
        }
    }
    Ok(BlowupReport {
        outcome: Outcome::Survived { steps: max_steps },
        trace,
    })
}

/// Maps `(a, params)` onto the normalized system: `a' = (alpha*delta)^{1/alpha} a`
/// and `alpha' * delta' = 1`. Solutions of the two systems are conjugate under
/// the same factor.
pub fn normalize_scaling<T: Scalar>(
    a: &Field<T>,
    params: &Params<T>,
) -> Result<(Field<T>, Params<T>)> {
    let normalized =
        Params::normalized(params.alpha())?.with_blowup_guard(params.blowup_guard())?;
    Ok((a.scaled(params.scaling_factor()), normalized))
}
