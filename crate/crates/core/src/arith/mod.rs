//! Exact scalar substrate: the [`Scalar`] trait, rational helpers, primes and
//! p-adic valuations.
//!
//! Every decision procedure in the crate works over a type implementing
//! [`Scalar`]. The trait is implemented for [`BigRational`] (the default,
//! re-exported as [`crate::Rational`]) and for `Ratio<i64>`, whose checked
//! arithmetic reports overflow instead of wrapping.

mod padic;
mod primes;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use padic::{padic_valuation, MultiplicityCongruence, Residue};
pub use primes::{first_primes, is_prime, nth_prime, prime_count_up_to, primes_up_to};

/// An exact ordered field element usable by the search engines.
///
/// Implementors must be exact: comparisons and arithmetic never round. The
/// checked operations return `None` on overflow, which callers surface as
/// [`Error::Overflow`].
pub trait Scalar:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + Num
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + 'static
{
    /// Short type name used in overflow diagnostics.
    const NAME: &'static str;

    fn from_rational(r: &BigRational) -> Option<Self>;
    fn to_rational(&self) -> BigRational;
    fn from_u64(n: u64) -> Option<Self>;
    /// `floor(self)` as a `u64`; `None` when negative or out of range.
    fn floor_u64(&self) -> Option<u64>;
    fn is_integral(&self) -> bool;
    /// Whether the reduced denominator of `self` divides `m`.
    fn denom_divides(&self, m: &BigInt) -> bool;
}

impl Scalar for BigRational {
    const NAME: &'static str = "BigRational";

    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(BigRational::from_integer(BigInt::from(n)))
    }

    fn floor_u64(&self) -> Option<u64> {
        self.floor().to_integer().to_u64()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn denom_divides(&self, m: &BigInt) -> bool {
        (m % self.denom()).is_zero()
    }
}

impl Scalar for Ratio<i64> {
    const NAME: &'static str = "Ratio<i64>";

    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(Ratio::new_raw(r.numer().to_i64()?, r.denom().to_i64()?))
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_u64(n: u64) -> Option<Self> {
        <Ratio<i64> as FromPrimitive>::from_u64(n)
    }

    fn floor_u64(&self) -> Option<u64> {
        self.floor().to_integer().to_u64()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn denom_divides(&self, m: &BigInt) -> bool {
        (m % BigInt::from(*self.denom())).is_zero()
    }
}

pub(crate) fn add<S: Scalar>(a: &S, b: &S) -> Result<S> {
    a.checked_add(b).ok_or(Error::Overflow(S::NAME))
}

pub(crate) fn sub<S: Scalar>(a: &S, b: &S) -> Result<S> {
    a.checked_sub(b).ok_or(Error::Overflow(S::NAME))
}

pub(crate) fn mul<S: Scalar>(a: &S, b: &S) -> Result<S> {
    a.checked_mul(b).ok_or(Error::Overflow(S::NAME))
}

pub(crate) fn div<S: Scalar>(a: &S, b: &S) -> Result<S> {
    a.checked_div(b).ok_or(Error::Overflow(S::NAME))
}

/// `n * a`, checked.
pub(crate) fn scale<S: Scalar>(a: &S, n: u64) -> Result<S> {
    let n = S::from_u64(n).ok_or(Error::Overflow(S::NAME))?;
    mul(a, &n)
}

pub(crate) fn convert<S: Scalar>(r: &BigRational) -> Result<S> {
    S::from_rational(r).ok_or(Error::Overflow(S::NAME))
}

/// Parses `"num/den"` or `"num"` into a normalized rational.
pub fn parse_rational<S: Scalar>(s: &str) -> Result<S> {
    let t = s.trim();
    let r: BigRational = t
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational of the form num/den")))?;
    convert(&r)
}

/// Formats as `"num/den"`, omitting the denominator when it is 1.
pub fn format_rational<S: Scalar>(x: &S) -> String {
    x.to_string()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Smallest integer `>= x`.
pub fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Least common multiple of the denominators of `xs`; 1 for an empty input.
pub fn denominator_lcm<'a, I>(xs: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `base^exp` for a rational base.
pub fn pow(base: &BigRational, exp: u32) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}
