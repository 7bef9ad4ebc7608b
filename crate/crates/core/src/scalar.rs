//! Exact scalar types.
//!
//! Every geometric quantity in this crate (side lengths, coordinates,
//! periods, breakpoints) is carried by a type implementing [`Scalar`]. The
//! trait requires a total order and exact ring arithmetic, so floating-point
//! types are deliberately excluded: copy membership is an equality test on
//! distances and must be decided exactly.
//!
//! Implementations are provided for arbitrary-precision rationals
//! ([`BigRational`]), fixed-width rationals (`Ratio<i64>`, `Ratio<i128>`) and
//! the machine integers `i64`/`i128`. Fixed-width types panic on overflow in
//! debug builds like any other integer arithmetic.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact, totally ordered scalar.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Largest integer not exceeding `self`.
    fn floor(&self) -> Self;

    /// Lossless conversion into an arbitrary-precision rational.
    fn to_ratio(&self) -> BigRational;

    /// Conversion back from a rational; `None` when the value is not
    /// representable (a fraction for an integer type, or out of range).
    fn from_ratio(r: &BigRational) -> Option<Self>;

    fn is_integral(&self) -> bool {
        self.floor() == *self
    }

    /// Value as `i64` if integral and in range.
    fn to_i64_exact(&self) -> Option<i64> {
        let r = self.to_ratio();
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Decimal approximation. Only used for rendering.
    fn to_f64_lossy(&self) -> f64 {
        let r = self.to_ratio();
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn from_ratio_parts(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Self::from_ratio(&BigRational::new(numer.into(), denom.into()))
    }

    /// `self mod m` in `[0, m)` for `m > 0`.
    fn rem_euclid_exact(&self, m: &Self) -> Self {
        let q = (self.clone() / m.clone()).floor();
        self.clone() - q * m.clone()
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn to_ratio(&self) -> BigRational {
        self.clone()
    }

    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

macro_rules! impl_fixed_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(<$int>::from(v))
            }

            fn floor(&self) -> Self {
                Ratio::floor(self)
            }

            fn to_ratio(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_ratio(r: &BigRational) -> Option<Self> {
                let n: $int = r.numer().try_into().ok()?;
                let d: $int = r.denom().try_into().ok()?;
                Some(Ratio::new(n, d))
            }
        }
    };
}

impl_fixed_ratio!(i64);
impl_fixed_ratio!(i128);

macro_rules! impl_integer {
    ($int:ty) => {
        impl Scalar for $int {
            fn from_int(v: i64) -> Self {
                <$int>::from(v)
            }

            fn floor(&self) -> Self {
                *self
            }

            fn to_ratio(&self) -> BigRational {
                BigRational::from_integer(BigInt::from(*self))
            }

            fn from_ratio(r: &BigRational) -> Option<Self> {
                if r.is_integer() {
                    r.to_integer().try_into().ok()
                } else {
                    None
                }
            }
        }
    };
}

impl_integer!(i64);
impl_integer!(i128);

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace
/// ignored) into an exact scalar.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, ParseScalarError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| ParseScalarError::Malformed(text.to_string()))?;
    let denom: BigInt = den
        .parse()
        .map_err(|_| ParseScalarError::Malformed(text.to_string()))?;
    if denom.is_zero() {
        return Err(ParseScalarError::ZeroDenominator(text.to_string()));
    }
    let r = BigRational::new(numer, denom);
    S::from_ratio(&r).ok_or_else(|| ParseScalarError::NotRepresentable(text.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0:?} is not representable in the target scalar type")]
    NotRepresentable(String),
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn denominator_lcm<S: Scalar>(values: &[S]) -> BigInt {
    values
        .iter()
        .map(|v| v.to_ratio().denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}
