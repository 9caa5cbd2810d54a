//! Positive monoids given by generator families plus a truncation policy.
//!
//! Sequence families (`Grams`, `PowerOf`, `UnitFractionPrimes`,
//! `Alternating`) are searched through their first `k` generators. Dense
//! families (`ConductorQ`, `SRing`) are never enumerated; membership and
//! atomicity come from closed forms, and factorization queries walk the
//! rational grid of denominators up to `D`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, convert, first_primes, padic_valuation, primes_up_to, Scalar};
use crate::error::{Error, Result};
use crate::search::{AtomTable, SearchLimits};
use crate::Rational;

/// Prime sequence feeding the alternating generators `1 + (-1)^n / p_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSequence {
    /// `p_1 = 2, p_2 = 3, ...`
    All,
    /// A user supplied strictly increasing list of primes.
    Custom(Vec<u64>),
}

impl PrimeSequence {
    fn first(&self, k: usize) -> Result<Vec<u64>> {
        match self {
            PrimeSequence::All => Ok(first_primes(k, false)),
            PrimeSequence::Custom(ps) if ps.len() >= k => Ok(ps[..k].to_vec()),
            PrimeSequence::Custom(ps) => Err(Error::InvalidArgument(format!(
                "custom prime sequence has {} terms, {k} requested",
                ps.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorFamily {
    Explicit {
        #[serde(with = "crate::serde_exact::vec")]
        gens: Vec<Rational>,
    },
    /// `1 / (2^n p_n)`, `p_n` the n-th odd prime, `n >= 0`.
    Grams,
    /// `q^n`, `n >= 0`, `0 < q < 1`.
    #[serde(rename = "power")]
    PowerOf {
        #[serde(with = "crate::serde_exact")]
        q: Rational,
    },
    /// `1 / p` over all primes.
    #[serde(rename = "unit-fractions")]
    UnitFractionPrimes,
    /// `1 + (-1)^n / p_n`, `n >= 1`.
    Alternating { primes: PrimeSequence },
    /// `{0} ∪ Q_{>=1}`.
    #[serde(rename = "conductor")]
    ConductorQ,
    /// Rational points of `N_0 ∪ R_{>=r}`, `r > 1`.
    #[serde(rename = "sring")]
    SRing {
        #[serde(with = "crate::serde_exact")]
        r: Rational,
    },
}

/// Order-theoretic metadata for the defining generator sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    /// Finitely generated: both well- and co-well-ordered.
    FinitelyGenerated,
    /// Generated by a decreasing sequence, hence co-well-ordered.
    Decreasing,
    /// Neither well- nor co-well-ordered.
    Neither,
    /// Not generated by a sequence the artifact enumerates.
    Dense,
}

impl GeneratorFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorFamily::Explicit { .. } => "explicit",
            GeneratorFamily::Grams => "grams",
            GeneratorFamily::PowerOf { .. } => "power",
            GeneratorFamily::UnitFractionPrimes => "unit-fractions",
            GeneratorFamily::Alternating { .. } => "alternating",
            GeneratorFamily::ConductorQ => "conductor",
            GeneratorFamily::SRing { .. } => "sring",
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, GeneratorFamily::ConductorQ | GeneratorFamily::SRing { .. })
    }

    pub fn monotonicity(&self) -> Monotonicity {
        match self {
            GeneratorFamily::Explicit { .. } => Monotonicity::FinitelyGenerated,
            GeneratorFamily::Grams | GeneratorFamily::PowerOf { .. } | GeneratorFamily::UnitFractionPrimes => {
                Monotonicity::Decreasing
            }
            GeneratorFamily::Alternating { .. } => Monotonicity::Neither,
            GeneratorFamily::ConductorQ | GeneratorFamily::SRing { .. } => Monotonicity::Dense,
        }
    }

    /// The first `k` generators in definition order.
    pub fn first_generators(&self, k: usize) -> Result<Vec<Rational>> {
        match self {
            GeneratorFamily::Explicit { gens } => Ok(gens.iter().take(k).cloned().collect()),
            GeneratorFamily::Grams => Ok(first_primes(k, true)
                .into_iter()
                .enumerate()
                .map(|(n, p)| BigRational::new(BigInt::one(), (BigInt::one() << n) * BigInt::from(p)))
                .collect()),
            GeneratorFamily::PowerOf { q } => {
                let mut out = Vec::with_capacity(k);
                let mut term = Rational::one();
                for _ in 0..k {
                    out.push(term.clone());
                    term = &term * q;
                }
                Ok(out)
            }
            GeneratorFamily::UnitFractionPrimes => Ok(first_primes(k, false)
                .into_iter()
                .map(|p| BigRational::new(BigInt::one(), BigInt::from(p)))
                .collect()),
            GeneratorFamily::Alternating { primes } => Ok(primes
                .first(k)?
                .into_iter()
                .enumerate()
                .map(|(i, p)| alternating_term(i as u64 + 1, p))
                .collect()),
            GeneratorFamily::ConductorQ | GeneratorFamily::SRing { .. } => {
                Err(Error::NotSequenceGenerated(self.name().into()))
            }
        }
    }

    /// Largest atom of the full (untruncated) monoid for decreasing
    /// families, where every atom missing from a truncation is smaller than
    /// every atom inside it.
    pub fn decreasing_max_atom(&self) -> Option<Rational> {
        match self {
            GeneratorFamily::Grams => Some(arith::rat(1, 3)),
            GeneratorFamily::PowerOf { .. } => Some(Rational::one()),
            GeneratorFamily::UnitFractionPrimes => Some(arith::rat(1, 2)),
            _ => None,
        }
    }

    /// For `PowerOf`: `q^{-1}` must not be a natural number for the powers to
    /// be atoms.
    pub fn check_power_hypothesis(&self) -> Result<()> {
        if let GeneratorFamily::PowerOf { q } = self {
            if q.recip().is_integer() {
                return Err(Error::HypothesisViolated(format!(
                    "1/q = {} is a natural number",
                    q.recip()
                )));
            }
        }
        Ok(())
    }

    fn validate(&mut self) -> Result<()> {
        match self {
            GeneratorFamily::Explicit { gens } => {
                if gens.is_empty() {
                    return Err(Error::InvalidArgument(
                        "explicit family needs at least one generator".into(),
                    ));
                }
                if let Some(g) = gens.iter().find(|g| !g.is_positive()) {
                    return Err(Error::InvalidArgument(format!(
                        "generator {g} is not strictly positive"
                    )));
                }
                gens.sort();
                gens.dedup();
            }
            GeneratorFamily::PowerOf { q } => {
                if !q.is_positive() || *q >= Rational::one() {
                    return Err(Error::InvalidArgument(format!("power family needs 0 < q < 1, got {q}")));
                }
            }
            GeneratorFamily::Alternating {
                primes: PrimeSequence::Custom(ps),
            } => {
                if ps.is_empty() || ps.iter().any(|&p| !arith::is_prime(p)) {
                    return Err(Error::InvalidArgument(
                        "alternating family needs a nonempty list of primes".into(),
                    ));
                }
                if ps.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidArgument(
                        "alternating primes must be strictly increasing".into(),
                    ));
                }
            }
            GeneratorFamily::SRing { r } if *r <= Rational::one() => {
                return Err(Error::InvalidArgument(format!("sring needs r > 1, got {r}")));
            }
            _ => {}
        }
        Ok(())
    }
}

fn alternating_term(n: u64, p: u64) -> Rational {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Rational::one() + BigRational::new(BigInt::from(sign), BigInt::from(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Truncation {
    /// No truncation: finitely generated, or an unbounded request.
    None,
    /// First `k` generators of a sequence family.
    Index { k: u64 },
    /// Rational grid of denominators up to `max_den` for dense families.
    Denominator { max_den: u64 },
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::None => f.write_str("none"),
            Truncation::Index { k } => write!(f, "k={k}"),
            Truncation::Denominator { max_den } => write!(f, "max-den={max_den}"),
        }
    }
}

/// A generator family plus the truncation every query runs under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub family: GeneratorFamily,
    pub truncation: Truncation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipMethod {
    ClosedForm,
    Knapsack,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Membership<S: Scalar> {
    pub member: bool,
    pub method: MembershipMethod,
    /// Generators with multiplicities summing to the queried element.
    #[serde(with = "crate::serde_exact::pairs")]
    pub combination: Vec<(S, u64)>,
    pub truncation: Truncation,
    /// A negative verdict that only holds for the truncated generator set.
    pub relative_to_truncation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomMethod {
    ClosedForm,
    PAdicCertificate,
    BoundedSearch,
}

/// `generator` is the only one among the checked generators with a negative
/// `prime`-adic valuation, so it cannot be a sum of the others.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicCertificate {
    #[serde(with = "crate::serde_exact")]
    pub generator: Rational,
    /// 0-based position in the generator list.
    pub position: usize,
    pub prime: u64,
    pub valuation: i64,
    /// How many generators the uniqueness was checked against.
    pub checked_against: usize,
}

impl PAdicCertificate {
    /// Recomputes every valuation from scratch.
    pub fn verify(&self, generators: &[Rational]) -> bool {
        if self.checked_against > generators.len() || generators.get(self.position) != Some(&self.generator) {
            return false;
        }
        let Ok(v) = padic_valuation(&self.generator, self.prime) else {
            return false;
        };
        v == self.valuation
            && v < 0
            && generators[..self.checked_against]
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != self.position)
                .all(|(_, g)| padic_valuation(g, self.prime).is_ok_and(|w| w >= 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AtomVerdict<S: Scalar> {
    pub atom: bool,
    pub method: AtomMethod,
    pub relative_to_truncation: bool,
    /// For a non-atom: two nonzero members summing to it.
    #[serde(default, with = "crate::serde_exact::pairs")]
    pub split: Vec<(S, u64)>,
    #[serde(default)]
    pub certificate: Option<PAdicCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedAtoms {
    #[serde(with = "crate::serde_exact::vec")]
    pub atoms: Vec<Rational>,
    pub method: AtomMethod,
    pub certificates: Vec<PAdicCertificate>,
}

impl MonoidSpec {
    pub fn new(mut family: GeneratorFamily, truncation: Truncation) -> Result<Self> {
        family.validate()?;
        let truncation = match (&family, truncation) {
            (GeneratorFamily::Explicit { .. }, _) => Truncation::None,
            (f, Truncation::Index { k }) if !f.is_dense() => {
                if k == 0 {
                    return Err(Error::InvalidArgument("index bound k must be >= 1".into()));
                }
                Truncation::Index { k }
            }
            (f, Truncation::Denominator { max_den }) if f.is_dense() => {
                if max_den == 0 {
                    return Err(Error::InvalidArgument("denominator bound must be >= 1".into()));
                }
                Truncation::Denominator { max_den }
            }
            (_, Truncation::None) => Truncation::None,
            (f, t) => {
                return Err(Error::InvalidArgument(format!(
                    "truncation {t} does not apply to family {}",
                    f.name()
                )))
            }
        };
        Ok(MonoidSpec { family, truncation })
    }

    pub fn explicit(gens: &[Rational]) -> Result<Self> {
        Self::new(GeneratorFamily::Explicit { gens: gens.to_vec() }, Truncation::None)
    }

    /// Explicit family from integer generators.
    pub fn numerical(gens: &[i64]) -> Result<Self> {
        Self::explicit(&gens.iter().map(|&g| arith::int(g)).collect::<Vec<_>>())
    }

    pub fn grams(k: u64) -> Result<Self> {
        Self::new(GeneratorFamily::Grams, Truncation::Index { k })
    }

    pub fn power_of(q: Rational, k: u64) -> Result<Self> {
        Self::new(GeneratorFamily::PowerOf { q }, Truncation::Index { k })
    }

    pub fn unit_fractions(k: u64) -> Result<Self> {
        Self::new(GeneratorFamily::UnitFractionPrimes, Truncation::Index { k })
    }

    /// Unit fractions `1/p` for all primes `p <= bound`.
    pub fn unit_fractions_up_to(bound: u64) -> Result<Self> {
        let k = primes_up_to(bound).len() as u64;
        if k == 0 {
            return Err(Error::InvalidArgument(format!("no primes <= {bound}")));
        }
        Self::unit_fractions(k)
    }

    pub fn alternating(k: u64) -> Result<Self> {
        Self::new(
            GeneratorFamily::Alternating {
                primes: PrimeSequence::All,
            },
            Truncation::Index { k },
        )
    }

    pub fn conductor(max_den: Option<u64>) -> Result<Self> {
        Self::new(
            GeneratorFamily::ConductorQ,
            max_den.map_or(Truncation::None, |d| Truncation::Denominator { max_den: d }),
        )
    }

    pub fn sring(r: Rational, max_den: Option<u64>) -> Result<Self> {
        Self::new(
            GeneratorFamily::SRing { r },
            max_den.map_or(Truncation::None, |d| Truncation::Denominator { max_den: d }),
        )
    }

    /// Same family under a different truncation.
    pub fn with_truncation(&self, truncation: Truncation) -> Result<Self> {
        Self::new(self.family.clone(), truncation)
    }

    pub fn index_bound(&self) -> Option<u64> {
        match self.truncation {
            Truncation::Index { k } => Some(k),
            _ => None,
        }
    }

    pub fn denominator_bound(&self) -> Option<u64> {
        match self.truncation {
            Truncation::Denominator { max_den } => Some(max_den),
            _ => None,
        }
    }

    /// The generators the truncation keeps, in definition order.
    pub fn generators(&self) -> Result<Vec<Rational>> {
        match (&self.family, self.truncation) {
            (GeneratorFamily::Explicit { gens }, _) => Ok(gens.clone()),
            (f, _) if f.is_dense() => Err(Error::NotSequenceGenerated(f.name().into())),
            (f, Truncation::Index { k }) => f.first_generators(to_usize(k)?),
            (f, _) => Err(Error::UnboundedQuery(format!(
                "family {} requires an index bound k",
                f.name()
            ))),
        }
    }

    /// Atoms available to factorization queries, ascending.
    ///
    /// For explicit families these are the generators not expressible by
    /// smaller ones. For the named sequence families every generator is an
    /// atom. Dense families contribute their grid atoms up to `upper`.
    pub fn atoms(&self, upper: Option<&Rational>) -> Result<Vec<Rational>> {
        let mut atoms = match &self.family {
            GeneratorFamily::Explicit { gens } => minimal_generators(gens)?,
            f if f.is_dense() => self.grid_atoms(upper)?,
            f => {
                f.check_power_hypothesis()?;
                self.generators()?
            }
        };
        if let Some(u) = upper {
            atoms.retain(|a| a <= u);
        }
        atoms.sort();
        Ok(atoms)
    }

    /// Grid atoms of a dense family with denominators `<= max_den`.
    pub fn grid_atoms(&self, upper: Option<&Rational>) -> Result<Vec<Rational>> {
        let Some(d) = self.denominator_bound() else {
            return Err(Error::UnboundedQuery(format!(
                "dense family {} requires a denominator bound",
                self.family.name()
            )));
        };
        let mut out = match &self.family {
            GeneratorFamily::ConductorQ => grid(&arith::int(1), &arith::int(2), d),
            GeneratorFamily::SRing { r } => {
                let top = r + Rational::one();
                let ceil_r = BigRational::from_integer(arith::ceil(r));
                let mut v: Vec<Rational> = grid(r, &top, d).into_iter().filter(|x| *x != ceil_r).collect();
                v.push(Rational::one());
                v
            }
            f => return Err(Error::InvalidArgument(format!("{} is not dense", f.name()))),
        };
        if let Some(u) = upper {
            out.retain(|a| a <= u);
        }
        out.sort();
        Ok(out)
    }

    /// Membership of `x >= 0`, with an explicit combination when found.
    pub fn contains<S: Scalar>(&self, x: &S) -> Result<Membership<S>> {
        if x.is_negative() {
            return Err(Error::InvalidArgument(format!("{x} is negative")));
        }
        let closed = |member: bool| Membership {
            member,
            method: MembershipMethod::ClosedForm,
            combination: Vec::new(),
            truncation: self.truncation,
            relative_to_truncation: false,
        };
        let xr = x.to_rational();
        match &self.family {
            GeneratorFamily::ConductorQ => return Ok(closed(conductor_contains(&xr))),
            GeneratorFamily::SRing { r } => return Ok(closed(sring_contains(r, &xr))),
            _ => {}
        }
        let gens: Vec<S> = self
            .generators()?
            .iter()
            .filter(|g| **g <= xr)
            .map(convert)
            .collect::<Result<_>>()?;
        let found = if x.is_zero() {
            Some(Vec::new())
        } else if gens.is_empty() {
            None
        } else {
            let table = AtomTable::new(&gens);
            let lim = SearchLimits {
                first_only: true,
                ..Default::default()
            };
            table.combinations(x, lim)?.into_iter().next().map(|m| {
                let mut pairs: Vec<(S, u64)> = table.atoms().iter().cloned().zip(m).filter(|(_, c)| *c > 0).collect();
                pairs.reverse();
                pairs
            })
        };
        let explicit = matches!(self.family, GeneratorFamily::Explicit { .. });
        Ok(Membership {
            member: found.is_some(),
            method: MembershipMethod::Knapsack,
            relative_to_truncation: found.is_none() && !explicit,
            combination: found.unwrap_or_default(),
            truncation: self.truncation,
        })
    }

    /// Atomicity of a nonzero member.
    pub fn is_atom<S: Scalar>(&self, x: &S) -> Result<AtomVerdict<S>> {
        if x.is_zero() {
            return Err(Error::InvalidArgument("0 is not an atom candidate".into()));
        }
        let membership = self.contains(x)?;
        if !membership.member {
            return Err(Error::NotAMember(x.to_string()));
        }
        let xr = x.to_rational();
        let closed = |atom: bool, split: Vec<(S, u64)>| AtomVerdict {
            atom,
            method: AtomMethod::ClosedForm,
            relative_to_truncation: false,
            split,
            certificate: None,
        };
        let one_plus_rest = || -> Result<Vec<(S, u64)>> {
            let one = S::one();
            Ok(vec![(one.clone(), 1), (arith::sub(x, &one)?, 1)])
        };
        match &self.family {
            GeneratorFamily::ConductorQ => {
                let atom = conductor_atom(&xr);
                let split = if atom { Vec::new() } else { one_plus_rest()? };
                return Ok(closed(atom, split));
            }
            GeneratorFamily::SRing { r } => {
                let atom = sring_additive_atom(r, &xr);
                let split = if atom { Vec::new() } else { one_plus_rest()? };
                return Ok(closed(atom, split));
            }
            _ => {}
        }
        let gens = self.generators()?;
        let position = gens.iter().position(|g| *g == xr);
        let Some(position) = position else {
            // a member that is no generator is a sum of at least two generators
            let (g, _) = membership
                .combination
                .first()
                .cloned()
                .expect("nonzero member has a combination");
            let rest = arith::sub(x, &g)?;
            return Ok(AtomVerdict {
                atom: false,
                method: AtomMethod::BoundedSearch,
                relative_to_truncation: false,
                split: vec![(g, 1), (rest, 1)],
                certificate: None,
            });
        };
        match &self.family {
            GeneratorFamily::PowerOf { q } => {
                if self.family.check_power_hypothesis().is_ok() {
                    Ok(closed(true, Vec::new()))
                } else {
                    // 1/q = n: q^i = n * q^{i+1}, so q^{i+1} and (n - 1) q^{i+1} split it
                    let next = &xr * q;
                    let rest = &xr - &next;
                    Ok(closed(false, vec![(convert(&next)?, 1), (convert(&rest)?, 1)]))
                }
            }
            GeneratorFamily::Explicit { .. } => {
                let smaller: Vec<S> = gens[..position].iter().map(convert).collect::<Result<_>>()?;
                let split = representation(&smaller, x)?;
                Ok(AtomVerdict {
                    atom: split.is_none(),
                    method: AtomMethod::BoundedSearch,
                    relative_to_truncation: false,
                    split: split
                        .map(|pairs| {
                            let g = pairs[0].0.clone();
                            let rest = arith::sub(x, &g)?;
                            Ok::<_, Error>(vec![(g, 1), (rest, 1)])
                        })
                        .transpose()?
                        .unwrap_or_default(),
                    certificate: None,
                })
            }
            _ => {
                let cert = padic_certificate(&self.family, &gens, position)?;
                Ok(AtomVerdict {
                    atom: true,
                    method: AtomMethod::PAdicCertificate,
                    relative_to_truncation: false,
                    split: Vec::new(),
                    certificate: Some(cert),
                })
            }
        }
    }

    /// The first `k` atoms of a named sequence family, each certified.
    pub fn certified_atoms(&self, k: u64) -> Result<CertifiedAtoms> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        let k = to_usize(k)?;
        match &self.family {
            GeneratorFamily::Explicit { .. } => Err(Error::Unsupported(
                "explicit families have no closed-form atom set; use is_atom per generator".into(),
            )),
            f if f.is_dense() => Err(Error::NotSequenceGenerated(f.name().into())),
            GeneratorFamily::PowerOf { .. } => {
                self.family.check_power_hypothesis()?;
                Ok(CertifiedAtoms {
                    atoms: self.family.first_generators(k)?,
                    method: AtomMethod::ClosedForm,
                    certificates: Vec::new(),
                })
            }
            f => {
                let gens = f.first_generators(k)?;
                let certificates = (0..k)
                    .map(|i| padic_certificate(f, &gens, i))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CertifiedAtoms {
                    atoms: gens,
                    method: AtomMethod::PAdicCertificate,
                    certificates,
                })
            }
        }
    }
}

fn to_usize(k: u64) -> Result<usize> {
    usize::try_from(k).map_err(|_| Error::InvalidArgument(format!("bound {k} too large")))
}

/// The prime that only the generator at `position` carries in its denominator.
fn family_prime(family: &GeneratorFamily, gens: &[Rational], position: usize) -> Result<u64> {
    let den = gens[position].denom();
    let p = match family {
        GeneratorFamily::Grams => {
            // den = 2^n p_n
            den >> position
        }
        GeneratorFamily::UnitFractionPrimes | GeneratorFamily::Alternating { .. } => den.clone(),
        f => {
            return Err(Error::Unsupported(format!(
                "family {} has no p-adic atom certificate",
                f.name()
            )))
        }
    };
    p.to_u64()
        .ok_or_else(|| Error::InvalidArgument("prime out of range".into()))
}

fn padic_certificate(family: &GeneratorFamily, gens: &[Rational], position: usize) -> Result<PAdicCertificate> {
    let prime = family_prime(family, gens, position)?;
    let cert = PAdicCertificate {
        generator: gens[position].clone(),
        position,
        prime,
        valuation: padic_valuation(&gens[position], prime)?,
        checked_against: gens.len(),
    };
    if cert.verify(gens) {
        Ok(cert)
    } else {
        Err(Error::VerificationFailed(format!(
            "p-adic certificate for {} at prime {prime}",
            cert.generator
        )))
    }
}

/// One combination of `gens` summing to `x`, if any.
fn representation<S: Scalar>(gens: &[S], x: &S) -> Result<Option<Vec<(S, u64)>>> {
    if gens.is_empty() {
        return Ok(None);
    }
    let table = AtomTable::new(gens);
    let lim = SearchLimits {
        first_only: true,
        ..Default::default()
    };
    Ok(table
        .combinations(x, lim)?
        .into_iter()
        .next()
        .map(|m| table.atoms().iter().cloned().zip(m).filter(|(_, c)| *c > 0).collect()))
}

/// Generators not expressible through the strictly smaller ones.
fn minimal_generators(gens: &[Rational]) -> Result<Vec<Rational>> {
    let mut sorted = gens.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    for (i, g) in sorted.iter().enumerate() {
        if representation(&sorted[..i], g)?.is_none() {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Reduced rationals `n/d` with `lo <= n/d < hi` and `d <= max_den`.
fn grid(lo: &Rational, hi: &Rational, max_den: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=max_den {
        let dd = BigInt::from(d);
        let start = (lo * &dd).ceil().to_integer();
        let mut n = start;
        loop {
            let x = BigRational::new(n.clone(), dd.clone());
            if x >= *hi {
                break;
            }
            if n.gcd(&dd).is_one() {
                out.push(x);
            }
            n += 1;
        }
    }
    out.sort();
    out
}

pub fn conductor_contains(x: &Rational) -> bool {
    x.is_zero() || *x >= Rational::one()
}

/// Atoms of `{0} ∪ Q_{>=1}`: exactly `Q ∩ [1, 2)`.
pub fn conductor_atom(x: &Rational) -> bool {
    *x >= Rational::one() && *x < arith::int(2)
}

pub fn sring_contains(r: &Rational, x: &Rational) -> bool {
    (x.is_integer() && !x.is_negative()) || x >= r
}

/// Additive atoms of `S_r`: `({1} ∪ [r, r+1)) \ {ceil(r)}`.
pub fn sring_additive_atom(r: &Rational, x: &Rational) -> bool {
    if x.is_one() {
        return true;
    }
    let ceil_r = BigRational::from_integer(arith::ceil(r));
    x >= r && *x < r + Rational::one() && *x != ceil_r
}

/// Multiplicative atoms of `S_r`:
/// `(P_{<r^2} ∪ [r, r^2)) \ P·(S_r)_{>1}`, decided by trying every prime
/// `p < x`.
pub fn sring_multiplicative_atom(r: &Rational, x: &Rational) -> bool {
    let r2 = r * r;
    if *x >= r2 || !sring_contains(r, x) || *x <= Rational::one() {
        return false;
    }
    let prime_candidate = x
        .to_integer()
        .to_u64()
        .is_some_and(|n| x.is_integer() && arith::is_prime(n));
    if !(prime_candidate || x >= r) {
        return false;
    }
    let bound = x.floor().to_integer().to_u64().unwrap_or(0);
    primes_up_to(bound)
        .into_iter()
        .map(|p| arith::int(p as i64))
        .filter(|p| p < x)
        .all(|p| {
            let quotient = x / &p;
            !(sring_contains(r, &quotient) && quotient > Rational::one())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn strs(xs: &[Rational]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            strs(&MonoidSpec::grams(3).unwrap().generators().unwrap()),
            ["1/3", "1/10", "1/28"]
        );
        assert_eq!(
            strs(&MonoidSpec::alternating(6).unwrap().generators().unwrap()),
            ["1/2", "4/3", "4/5", "8/7", "10/11", "14/13"]
        );
        assert_eq!(
            strs(&MonoidSpec::power_of(rat(2, 3), 3).unwrap().generators().unwrap()),
            ["1", "2/3", "4/9"]
        );
        assert!(matches!(
            MonoidSpec::conductor(Some(5)).unwrap().generators(),
            Err(Error::NotSequenceGenerated(_))
        ));
        assert!(matches!(
            MonoidSpec::new(GeneratorFamily::Grams, Truncation::None)
                .unwrap()
                .generators(),
            Err(Error::UnboundedQuery(_))
        ));
    }

    #[test]
    fn construction_validates() {
        assert!(MonoidSpec::power_of(rat(3, 2), 3).is_err());
        assert!(MonoidSpec::power_of(rat(0, 1), 3).is_err());
        assert!(MonoidSpec::sring(int(1), None).is_err());
        assert!(MonoidSpec::numerical(&[2, 0]).is_err());
        assert!(MonoidSpec::new(GeneratorFamily::Grams, Truncation::Denominator { max_den: 3 }).is_err());
        let spec = MonoidSpec::numerical(&[3, 2, 3]).unwrap();
        assert_eq!(strs(&spec.generators().unwrap()), ["2", "3"]);
        let custom = GeneratorFamily::Alternating {
            primes: PrimeSequence::Custom(vec![3, 2]),
        };
        assert!(MonoidSpec::new(custom, Truncation::Index { k: 2 }).is_err());
    }

    #[test]
    fn membership_examples() {
        let c = MonoidSpec::conductor(None).unwrap();
        assert!(!c.contains(&rat(1, 2)).unwrap().member);
        assert!(c.contains(&rat(7, 5)).unwrap().member);
        let n = MonoidSpec::numerical(&[2, 3]).unwrap();
        let m = n.contains(&int(1)).unwrap();
        assert!(!m.member && !m.relative_to_truncation);
        let g = MonoidSpec::grams(3).unwrap();
        let m = g.contains(&rat(13, 30)).unwrap();
        assert!(m.member);
        assert_eq!(m.combination, vec![(rat(1, 10), 1), (rat(1, 3), 1)]);
        let m = g.contains(&rat(1, 88)).unwrap();
        assert!(!m.member && m.relative_to_truncation);
        let s = MonoidSpec::sring(rat(5, 2), None).unwrap();
        assert!(s.contains(&int(2)).unwrap().member);
        assert!(!s.contains(&rat(3, 2)).unwrap().member);
        assert!(s.contains(&rat(11, 4)).unwrap().member);
        assert!(n.contains(&int(-1)).is_err());
    }

    #[test]
    fn atom_examples() {
        let c = MonoidSpec::conductor(None).unwrap();
        let v = c.is_atom(&rat(3, 2)).unwrap();
        assert!(v.atom);
        assert_eq!(v.method, AtomMethod::ClosedForm);
        let s = MonoidSpec::sring(int(2), None).unwrap();
        let v = s.is_atom(&int(2)).unwrap();
        assert!(!v.atom);
        assert_eq!(v.split, vec![(int(1), 1), (int(1), 1)]);
        for (x, atom) in [(int(1), true), (rat(5, 2), true), (int(3), false)] {
            assert_eq!(s.is_atom(&x).unwrap().atom, atom, "{x}");
        }
        let n = MonoidSpec::numerical(&[2, 3]).unwrap();
        let v = n.is_atom(&int(6)).unwrap();
        assert!(!v.atom);
        assert!(n.is_atom(&int(3)).unwrap().atom);
        assert!(matches!(n.is_atom(&int(1)), Err(Error::NotAMember(_))));
        let g = MonoidSpec::grams(4).unwrap();
        let v = g.is_atom(&rat(1, 28)).unwrap();
        assert!(v.atom);
        assert_eq!(v.method, AtomMethod::PAdicCertificate);
        assert_eq!(v.certificate.unwrap().prime, 7);
        assert!(!g.is_atom(&rat(13, 30)).unwrap().atom);
    }

    #[test]
    fn certified_atom_examples() {
        let g = MonoidSpec::grams(1).unwrap().certified_atoms(4).unwrap();
        assert_eq!(strs(&g.atoms), ["1/3", "1/10", "1/28", "1/88"]);
        assert_eq!(
            g.certificates.iter().map(|c| c.prime).collect::<Vec<_>>(),
            [3, 5, 7, 11]
        );
        let p = MonoidSpec::power_of(rat(2, 3), 3).unwrap().certified_atoms(3).unwrap();
        assert_eq!(strs(&p.atoms), ["1", "2/3", "4/9"]);
        let u = MonoidSpec::unit_fractions(3).unwrap().certified_atoms(3).unwrap();
        assert_eq!(strs(&u.atoms), ["1/2", "1/3", "1/5"]);
        assert!(matches!(
            MonoidSpec::power_of(rat(1, 2), 3).unwrap().certified_atoms(3),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(MonoidSpec::numerical(&[2, 3]).unwrap().certified_atoms(2).is_err());
        let a = MonoidSpec::alternating(1).unwrap().certified_atoms(6).unwrap();
        assert!(a.certificates.iter().all(|c| c.verify(&a.atoms)));
    }

    #[test]
    fn explicit_atoms_drop_reducible_generators() {
        let spec = MonoidSpec::numerical(&[2, 3, 4, 7]).unwrap();
        assert_eq!(strs(&spec.atoms(None).unwrap()), ["2", "3"]);
        let spec = MonoidSpec::explicit(&[rat(1, 2), rat(3, 4), int(1)]).unwrap();
        assert_eq!(strs(&spec.atoms(None).unwrap()), ["1/2", "3/4"]);
    }

    #[test]
    fn grid_atoms() {
        let c = MonoidSpec::conductor(Some(3)).unwrap();
        assert_eq!(strs(&c.atoms(None).unwrap()), ["1", "4/3", "3/2", "5/3"]);
        let s = MonoidSpec::sring(int(2), Some(2)).unwrap();
        assert_eq!(strs(&s.atoms(None).unwrap()), ["1", "5/2"]);
        assert!(matches!(
            MonoidSpec::conductor(None).unwrap().atoms(None),
            Err(Error::UnboundedQuery(_))
        ));
    }

    #[test]
    fn multiplicative_sring_atoms() {
        let r = int(2);
        assert!(sring_multiplicative_atom(&r, &int(3)));
        assert!(sring_multiplicative_atom(&r, &int(2)));
        assert!(!sring_multiplicative_atom(&r, &int(4)));
        assert!(sring_multiplicative_atom(&r, &rat(5, 2)));
        assert!(sring_multiplicative_atom(&r, &rat(18, 5)));
        assert!(!sring_multiplicative_atom(&r, &rat(9, 2)));
        // 6 = 2 * 3 with r = 5/2
        assert!(!sring_multiplicative_atom(&rat(5, 2), &int(6)));
    }

    #[test]
    fn metadata() {
        assert_eq!(GeneratorFamily::Grams.monotonicity(), Monotonicity::Decreasing);
        assert_eq!(
            GeneratorFamily::Alternating {
                primes: PrimeSequence::All
            }
            .monotonicity(),
            Monotonicity::Neither
        );
        let json = serde_json::to_string(&MonoidSpec::power_of(rat(2, 3), 8).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"family":{"family":"power","q":"2/3"},"truncation":{"kind":"index","k":8}}"#
        );
        let back: MonoidSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, MonoidSpec::power_of(rat(2, 3), 8).unwrap());
    }
}
