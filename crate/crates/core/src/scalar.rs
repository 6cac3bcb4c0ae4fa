//! Scalar types the lattice kernel can run over.
//!
//! Every formula in this crate is a polynomial (or, for `iota`, a division by
//! the rank) in integer data, so the same code runs over big integers for the
//! integral lattice maps and over big rationals once denominators appear.
//! Machine integers and `f64` are supported for callers that want them; the
//! exact types are the ones the rest of the crate uses.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A commutative ring element usable as a lattice coordinate.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    /// Embeds an integer. Panics if the value does not fit (fixed-width types).
    fn from_integer(n: &BigInt) -> Self;

    /// Exact rational value. Panics for non-finite floats.
    fn to_rational(&self) -> BigRational;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    /// Integral value, if this element is one.
    fn to_integer(&self) -> Option<BigInt> {
        let q = self.to_rational();
        q.is_integer().then(|| q.to_integer())
    }
}

/// Scalars in which division by a nonzero element is exact.
pub trait Field: Scalar {}

impl Scalar for BigInt {
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Scalar for BigRational {
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

impl Field for BigRational {}

impl Scalar for i64 {
    fn from_integer(n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Scalar for Rational64 {
    fn from_integer(n: &BigInt) -> Self {
        Rational64::from_integer(n.to_i64().expect("integer does not fit in i64"))
    }
    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Field for Rational64 {}

impl Scalar for f64 {
    fn from_integer(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("non-finite float")
    }
}

impl Field for f64 {}

/// Shorthand for `T::from_i64`.
pub(crate) fn sc<T: Scalar>(n: i64) -> T {
    T::from_i64(n)
}

/// Converts a big integer into any scalar.
pub fn lift<T: Scalar>(n: &BigInt) -> T {
    T::from_integer(n)
}

/// Converts a slice of big integers into any scalar.
pub fn lift_vec<T: Scalar>(v: &[BigInt]) -> Vec<T> {
    v.iter().map(T::from_integer).collect()
}

/// Integral coordinates of a vector, or `None` if any entry is fractional.
pub fn to_integer_vec<T: Scalar>(v: &[T]) -> Option<Vec<BigInt>> {
    v.iter().map(Scalar::to_integer).collect()
}

/// Canonical `p/q` rendering with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(q: &BigRational) -> String {
    // BigRational is kept reduced with a positive denominator.
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
