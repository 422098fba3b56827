//! Scalar abstraction shared by the closed-form predictors.
//!
//! Exponents that decide a growth regime sit exactly on rational thresholds,
//! so the theory code is written once over [`Scalar`] and instantiated with
//! both exact rationals and floats.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A signed field element usable by the theory module.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed {
    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_i64(v: i64) -> Self {
                v as $f
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

macro_rules! impl_ratio_scalar {
    ($i:ty) => {
        impl Scalar for Ratio<$i> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(v as $i)
            }

            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $i, denom as $i)
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

/// Parses `"-5"`, `"-5/2"` or a decimal such as `"-2.5"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Ratio<i64>> {
    let s = s.trim();
    if let Ok(r) = s.parse::<Ratio<i64>>() {
        return Some(r);
    }
    let v: f64 = s.parse().ok()?;
    if !v.is_finite() {
        return None;
    }
    // Decimal literals: scale by the power of ten implied by the fraction digits.
    let frac_digits = s.split_once('.').map_or(0, |(_, f)| {
        f.chars().take_while(|c| c.is_ascii_digit()).count()
    });
    if frac_digits <= 12 {
        let scale = 10i64.pow(frac_digits as u32);
        let scaled = (v * scale as f64).round();
        if (scaled / scale as f64 - v).abs() <= 1e-12 * v.abs().max(1.0) {
            return Some(Ratio::new(scaled as i64, scale));
        }
    }
    Ratio::approximate_float(v)
}
