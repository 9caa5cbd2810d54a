//! Factorization theory of positive monoids of rationals.
//!
//! A monoid is a [`MonoidSpec`]: a generator family plus a truncation policy.
//! On top of it the crate offers bounded factorization enumeration with
//! completeness reporting, atom certification, finite monotone-subsequence
//! analysis, generalized-polynomial arithmetic over a monoid of exponents,
//! and witness builders for the standard failure modes (ACCP, BF, LFF).
//!
//! The engines are generic over the exact scalar type through [`Scalar`];
//! the aliases below fix the default, arbitrary-precision choice.

pub mod arith;
pub mod checkers;
pub mod error;
pub mod factorization;
pub mod monoid;
pub mod search;
pub mod semiring;
pub mod sequence;
pub mod serde_exact;

pub use arith::Scalar;
pub use checkers::{Certificate, Claim, Witness};
pub use error::{Error, Result};
pub use factorization::{Completeness, Factorization, LengthSet, QueryResult};
pub use monoid::{
    AtomMethod, AtomVerdict, CertifiedAtoms, GeneratorFamily, Membership, MembershipMethod, MonoidSpec, Monotonicity,
    PAdicCertificate, PrimeSequence, Truncation,
};
pub use semiring::GenPoly;
pub use sequence::{FiniteSeq, MonotoneWitness, Subsequence};

/// Arbitrary-precision exact rational, the default scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width exact rational; arithmetic reports [`Error::Overflow`].
pub type SmallRational = num_rational::Ratio<i64>;
