//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the formulas are evaluated in: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts a literal constant. Every `f64` is representable (possibly rounded) in `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to scalar")
    }

    /// Converts a count.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count converts to scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Magnitude above which trigonometric arguments are reduced modulo 2π first.
const REDUCTION_THRESHOLD: f64 = 1e8;

#[inline]
pub(crate) fn reduce_angle<T: Scalar>(x: T) -> T {
    if x.abs() > T::lit(REDUCTION_THRESHOLD) {
        x % T::TAU()
    } else {
        x
    }
}

#[inline]
pub(crate) fn cos_r<T: Scalar>(x: T) -> T {
    reduce_angle(x).cos()
}

#[inline]
pub(crate) fn sin_r<T: Scalar>(x: T) -> T {
    reduce_angle(x).sin()
}

/// Sum lengths above this use compensated (Neumaier) accumulation.
pub(crate) const COMPENSATION_THRESHOLD: usize = 10_000;

/// Sums the slices front to back as one sequence; switches to Neumaier
/// compensation when the combined length exceeds the threshold.
pub(crate) fn ordered_sum<T: Scalar>(parts: &[&[T]]) -> T {
    let len: usize = parts.iter().map(|p| p.len()).sum();
    let values = parts.iter().flat_map(|p| p.iter().copied());
    if len > COMPENSATION_THRESHOLD {
        let mut acc = NeumaierSum::default();
        for v in values {
            acc.add(v);
        }
        acc.value()
    } else {
        values.fold(T::zero(), |s, v| s + v)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> NeumaierSum<T> {
    pub(crate) fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation = self.compensation + ((self.sum - t) + v);
        } else {
            self.compensation = self.compensation + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.compensation
    }
}
