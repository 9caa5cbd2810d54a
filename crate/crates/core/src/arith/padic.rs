use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{is_prime, Scalar};
use crate::error::{Error, Result};

/// The exponent `v` with `x = p^v * (a/b)`, `p` dividing neither `a` nor `b`.
pub fn padic_valuation<S: Scalar>(x: &S, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let x = x.to_rational();
    let p = BigInt::from(p);
    Ok(multiplicity(x.numer(), &p) as i64 - multiplicity(x.denom(), &p) as i64)
}

fn multiplicity(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// A congruence `multiplicity ≡ remainder (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    pub modulus: BigInt,
    pub remainder: BigInt,
}

impl Residue {
    pub fn trivial() -> Self {
        Residue {
            modulus: BigInt::one(),
            remainder: BigInt::zero(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus.is_one()
    }

    pub fn admits(&self, c: u64) -> bool {
        (BigInt::from(c) - &self.remainder).is_multiple_of(&self.modulus)
    }

    /// Largest `c <= upper` in the residue class.
    pub fn largest_at_most(&self, upper: u64) -> Option<u64> {
        let u = BigInt::from(upper);
        let back = (&u - &self.remainder).mod_floor(&self.modulus);
        let c = u - back;
        if c < BigInt::zero() {
            None
        } else {
            Some(u64::try_from(c).expect("bounded by upper"))
        }
    }

    /// Class step as a `u64`, saturating for moduli beyond the range.
    pub fn step(&self) -> u64 {
        u64::try_from(&self.modulus).unwrap_or(u64::MAX)
    }
}

/// Denominator congruence for one atom against the rest of a generating set.
///
/// In `target = c * atom + rest`, where `rest` is an integer combination of
/// rationals whose denominators divide `rest_lcm`, the product `c * atom`
/// must agree with `target` modulo `(1/rest_lcm)Z`. That pins `c` modulo
/// `den(atom) / gcd(den(atom), rest_lcm)`. For an atom `1/(c p)` whose prime
/// `p` appears in no other denominator this is the p-adic argument: the
/// multiplicity is fixed modulo `p` (to `0` when `p` does not divide the
/// target's denominator).
#[derive(Debug, Clone)]
pub struct MultiplicityCongruence {
    rest_lcm: BigInt,
    modulus: BigInt,
    inverse: BigInt,
}

impl MultiplicityCongruence {
    pub fn new(atom: &BigRational, rest_lcm: &BigInt) -> Self {
        let g = atom.denom().gcd(rest_lcm);
        let modulus = atom.denom() / &g;
        let w = (atom.numer() * (rest_lcm / &g)).mod_floor(&modulus);
        let inverse = if modulus.is_one() {
            BigInt::zero()
        } else {
            mod_inverse(&w, &modulus).expect("coprime by construction")
        };
        MultiplicityCongruence {
            rest_lcm: rest_lcm.clone(),
            modulus,
            inverse,
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The class of admissible multiplicities for `target`, or `None` when
    /// no multiplicity works (the target's denominator is out of reach).
    pub fn residue(&self, target: &BigRational) -> Option<Residue> {
        let t = target * &self.rest_lcm;
        if !self.modulus.is_multiple_of(t.denom()) {
            return None;
        }
        if self.modulus.is_one() {
            return Some(Residue::trivial());
        }
        let scaled = t.numer() * (&self.modulus / t.denom());
        Some(Residue {
            remainder: (scaled * &self.inverse).mod_floor(&self.modulus),
            modulus: self.modulus.clone(),
        })
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.extended_gcd(m);
    if eg.gcd.is_one() {
        Some(eg.x.mod_floor(m))
    } else {
        None
    }
}
