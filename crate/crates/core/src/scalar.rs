//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the lattice dynamics are evaluated in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a literal or count into `Self`.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy view as `f64`, used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `x^p` for `x >= 0` and `p > 0`, with `0^p = 0`.
    #[inline]
    fn pow_pos(self, p: Self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            self.powf(p)
        }
    }

    /// `x^s` for a step count `s`, with `0^0 = 1`.
    #[inline]
    fn pow_step(self, s: usize) -> Self {
        match i32::try_from(s) {
            Ok(e) => self.powi(e),
            Err(_) => {
                if self.abs() < Self::one() {
                    Self::zero()
                } else {
                    self.powf(Self::of_usize(s))
                }
            }
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
