//! Witness builders and certificates for divisibility properties of the
//! named families: non-stabilizing ascending chains, unbounded length sets,
//! infinite length-2 slices, the finite divisor bound of the alternating
//! family, and a yes/no/unknown property table per family.
//!
//! Every [`Certificate`] carries its witness data and can re-check it with
//! plain exact arithmetic ([`Certificate::reverify`]), independently of the
//! search code that produced it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, int, primes_up_to};
use crate::error::{Error, Result};
use crate::factorization::{self, Factorization};
use crate::monoid::{
    conductor_atom, sring_additive_atom, sring_contains, sring_multiplicative_atom, GeneratorFamily, MonoidSpec,
    PAdicCertificate, PrimeSequence, Truncation,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    AccpFails,
    BfFails,
    LffFails,
    AtomSet,
    FfmDivisorBound,
    Classification,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::AccpFails => "accp-fails",
            Claim::BfFails => "bf-fails",
            Claim::LffFails => "lff-fails",
            Claim::AtomSet => "atom-set",
            Claim::FfmDivisorBound => "ffm-divisor-bound",
            Claim::Classification => "classification",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub family: GeneratorFamily,
    pub parameters: BTreeMap<String, String>,
    pub witness: Witness,
    /// Set only after [`Certificate::reverify`] succeeded.
    pub verified: bool,
}

/// `value = Σ multiplicity · atom`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Combination {
    #[serde(with = "crate::serde_exact")]
    pub value: Rational,
    #[serde(with = "crate::serde_exact::pairs")]
    pub terms: Vec<(Rational, u64)>,
}

impl Combination {
    fn single(atom: Rational, multiplicity: u64) -> Self {
        let value = &atom * Rational::from_integer(multiplicity.into());
        Combination {
            value,
            terms: vec![(atom, multiplicity)],
        }
    }

    fn holds(&self) -> bool {
        self.terms.iter().all(|(_, c)| *c > 0)
            && self.terms.iter().fold(Rational::zero(), |acc, (a, c)| {
                acc + a * Rational::from_integer((*c).into())
            }) == self.value
    }
}

/// `element = next + delta`, both `next` and `delta` members, `delta > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub n: u64,
    pub element: Combination,
    pub next: Combination,
    pub delta: Combination,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair {
    #[serde(with = "crate::serde_exact")]
    pub a: Rational,
    #[serde(with = "crate::serde_exact")]
    pub b: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Add,
    Mul,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomCheck {
    #[serde(with = "crate::serde_exact")]
    pub x: Rational,
    pub atom: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    /// 1-based index of the atom `a_k`.
    pub index: u64,
    #[serde(with = "crate::serde_exact")]
    pub atom: Rational,
    pub prime: u64,
    /// A factorization of `x - a_k` inside the search truncation.
    pub cofactor: Combination,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    AccpChain {
        steps: Vec<ChainStep>,
    },
    LengthSet {
        #[serde(with = "crate::serde_exact")]
        x: Rational,
        prime_bound: u64,
        lengths: Vec<u64>,
        factorizations: Vec<Factorization<Rational>>,
    },
    LengthTwoPairs {
        operation: Operation,
        #[serde(with = "crate::serde_exact")]
        target: Rational,
        max_den: u64,
        pairs: Vec<RationalPair>,
        half_bound_count: usize,
    },
    SliceGrowth {
        #[serde(with = "crate::serde_exact")]
        target: Rational,
        length: u64,
        bounds: Vec<u64>,
        counts: Vec<usize>,
        first_slice: Vec<Factorization<Rational>>,
    },
    AtomSet {
        #[serde(with = "crate::serde_exact::vec")]
        atoms: Vec<Rational>,
        certificates: Vec<PAdicCertificate>,
    },
    AtomVerdicts {
        operation: Operation,
        checks: Vec<AtomCheck>,
    },
    DivisorBound {
        #[serde(with = "crate::serde_exact")]
        x: Rational,
        n_x: u64,
        #[serde(with = "crate::serde_exact")]
        bound: Rational,
        search_k: u64,
        divisors: Vec<DivisorEntry>,
    },
    Classification {
        table: ClassificationTable,
        supporting: Vec<Certificate>,
    },
}

impl Certificate {
    fn seal(claim: Claim, family: GeneratorFamily, parameters: &[(&str, String)], witness: Witness) -> Self {
        let mut cert = Certificate {
            claim,
            family,
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            witness,
            verified: false,
        };
        cert.verified = cert.reverify();
        cert
    }

    /// Recomputes every identity in the witness from scratch.
    pub fn reverify(&self) -> bool {
        match &self.witness {
            Witness::AccpChain { steps } => verify_chain(&self.family, steps),
            Witness::LengthSet {
                x,
                prime_bound,
                lengths,
                factorizations,
            } => verify_length_set(x, *prime_bound, lengths, factorizations),
            Witness::LengthTwoPairs {
                operation,
                target,
                max_den,
                pairs,
                half_bound_count,
            } => verify_pairs(&self.family, *operation, target, *max_den, pairs, *half_bound_count),
            Witness::SliceGrowth {
                target,
                length,
                counts,
                first_slice,
                bounds,
            } => verify_growth(&self.family, target, *length, bounds, counts, first_slice),
            Witness::AtomSet { atoms, certificates } => verify_atom_set(&self.family, atoms, certificates),
            Witness::AtomVerdicts { operation, checks } => verify_atom_verdicts(&self.family, *operation, checks),
            Witness::DivisorBound {
                x,
                n_x,
                bound,
                search_k,
                divisors,
            } => verify_divisor_bound(&self.family, x, *n_x, bound, *search_k, divisors),
            Witness::Classification { table, supporting } => {
                table.is_consistent() && supporting.iter().all(|c| c.verified && c.reverify())
            }
        }
    }
}

fn to_rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Grams' generator `1 / (2^n p_n)` from scratch.
fn grams_generator(n: u64) -> Option<Rational> {
    let p = arith::nth_prime(n, true).ok()?;
    Some(Rational::new(BigInt::one(), (BigInt::one() << n) * BigInt::from(p)))
}

// ---------------------------------------------------------------- ACCP

/// A strictly ascending chain of principal ideals `b_0 + M ⊊ b_1 + M ⊊ …`
/// verified for `n = 0..=n_max`.
///
/// Grams: `b_n = 1/2^n`, `b_n = b_{n+1} + p_{n+1} · 1/(2^{n+1} p_{n+1})`.
/// Powers of `q = n/d`: `b_n = d q^n = (d - n) q^n + d q^{n+1}`.
pub fn accp_chain(family: &GeneratorFamily, n_max: u64) -> Result<Certificate> {
    let mut steps = Vec::new();
    match family {
        GeneratorFamily::Grams => {
            for n in 0..=n_max {
                let g = |k: u64| -> Result<(Rational, u64)> {
                    let p = arith::nth_prime(k, true)?;
                    Ok((grams_generator(k).expect("prime index in range"), p))
                };
                let (g_n, p_n) = g(n)?;
                let (g_next, p_next) = g(n + 1)?;
                steps.push(ChainStep {
                    n,
                    element: Combination::single(g_n, p_n),
                    next: Combination::single(g_next.clone(), p_next),
                    delta: Combination::single(g_next, p_next),
                });
            }
        }
        GeneratorFamily::PowerOf { q } => {
            family.check_power_hypothesis()?;
            let (num, den) = (
                q.numer().to_u64().ok_or(Error::Overflow("numerator"))?,
                q.denom().to_u64().ok_or(Error::Overflow("denominator"))?,
            );
            let mut power = Rational::one();
            for n in 0..=n_max {
                let next_power = &power * q;
                steps.push(ChainStep {
                    n,
                    element: Combination::single(power.clone(), den),
                    next: Combination::single(next_power.clone(), den),
                    delta: Combination::single(power.clone(), den - num),
                });
                power = next_power;
            }
        }
        f => {
            return Err(Error::Unsupported(format!(
                "no ascending-chain witness for family {}",
                f.name()
            )))
        }
    }
    Ok(Certificate::seal(
        Claim::AccpFails,
        family.clone(),
        &[("n_max", n_max.to_string())],
        Witness::AccpChain { steps },
    ))
}

/// Whether `atom` is a generator of the (untruncated) family, from the
/// defining formula.
fn is_family_generator(family: &GeneratorFamily, atom: &Rational) -> bool {
    match family {
        GeneratorFamily::Grams => {
            if !atom.numer().is_one() {
                return false;
            }
            let d = atom.denom();
            let n = d.trailing_zeros().unwrap_or(0);
            let odd = d >> n;
            odd.to_u64()
                .is_some_and(|p| arith::is_prime(p) && p > 2 && grams_generator(n) == Some(atom.clone()))
        }
        GeneratorFamily::PowerOf { q } => {
            let mut power = Rational::one();
            while power >= *atom {
                if power == *atom {
                    return true;
                }
                power = &power * q;
            }
            false
        }
        GeneratorFamily::UnitFractionPrimes => {
            atom.numer().is_one() && atom.denom().to_u64().is_some_and(arith::is_prime)
        }
        GeneratorFamily::Explicit { gens } => gens.contains(atom),
        _ => false,
    }
}

fn verify_chain(family: &GeneratorFamily, steps: &[ChainStep]) -> bool {
    let uses_generators = |c: &Combination| c.holds() && c.terms.iter().all(|(a, _)| is_family_generator(family, a));
    !steps.is_empty()
        && steps.iter().enumerate().all(|(i, s)| {
            s.n == i as u64
                && uses_generators(&s.element)
                && uses_generators(&s.next)
                && uses_generators(&s.delta)
                && s.delta.value.is_positive()
                && s.element.value == &s.next.value + &s.delta.value
        })
        && steps.windows(2).all(|w| w[0].next.value == w[1].element.value)
}

// ---------------------------------------------------------------- BF

/// `L(1)` over `{1/p : p <= P}` with lengths up to `P` equals the set of
/// primes up to `P`; the lengths grow without bound as `P` grows.
pub fn bf_violation_unit_fractions(prime_bound: u64) -> Result<Certificate> {
    if prime_bound < 2 {
        return Err(Error::InvalidArgument("prime bound must be >= 2".into()));
    }
    let spec = MonoidSpec::unit_fractions_up_to(prime_bound)?;
    let one = Rational::one();
    let result = factorization::enumerate_factorizations(&spec, &one, Some(prime_bound))?;
    Ok(Certificate::seal(
        Claim::BfFails,
        GeneratorFamily::UnitFractionPrimes,
        &[("max_prime", prime_bound.to_string())],
        Witness::LengthSet {
            x: one,
            prime_bound,
            lengths: result.lengths,
            factorizations: result.factorizations,
        },
    ))
}

fn verify_length_set(
    x: &Rational,
    prime_bound: u64,
    lengths: &[u64],
    factorizations: &[Factorization<Rational>],
) -> bool {
    let primes = primes_up_to(prime_bound);
    let found: BTreeSet<u64> = factorizations.iter().map(|z| z.length()).collect();
    let pure = primes.iter().all(|&p| {
        let atom = Rational::new(BigInt::one(), BigInt::from(p));
        factorizations.iter().any(|z| z.parts() == [(atom.clone(), p)])
    });
    lengths == primes.as_slice()
        && found.into_iter().eq(primes.iter().copied())
        && pure
        && factorizations.iter().all(|z| {
            z.value().is_ok_and(|v| v == *x)
                && z.support().all(|a| {
                    a.numer().is_one()
                        && a.denom()
                            .to_u64()
                            .is_some_and(|d| d <= prime_bound && arith::is_prime(d))
                })
        })
}

// ---------------------------------------------------------------- LFF

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "monoid", rename_all = "kebab-case")]
pub enum LffTarget {
    /// `3` in `{0} ∪ Q_{>=1}`.
    Conductor,
    /// `2r + 1` in `(S_r, +)`.
    SRingAdditive {
        #[serde(with = "crate::serde_exact")]
        r: Rational,
    },
    /// `s^2` in `(S_r \ {0}, ·)` for some `s ∈ (r, r^2)`.
    SRingMultiplicative {
        #[serde(with = "crate::serde_exact")]
        r: Rational,
        #[serde(default, with = "crate::serde_exact::option")]
        s: Option<Rational>,
    },
}

impl LffTarget {
    fn family(&self) -> GeneratorFamily {
        match self {
            LffTarget::Conductor => GeneratorFamily::ConductorQ,
            LffTarget::SRingAdditive { r } | LffTarget::SRingMultiplicative { r, .. } => {
                GeneratorFamily::SRing { r: r.clone() }
            }
        }
    }
}

/// Reduced rationals in `[lo, hi)` with denominator at most `max_den`.
fn grid(lo: &Rational, hi: &Rational, max_den: u64) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for d in 1..=max_den {
        let dd = BigInt::from(d);
        let mut n = (lo * Rational::from_integer(dd.clone())).ceil().to_integer();
        loop {
            let x = Rational::new(n.clone(), dd.clone());
            if x >= *hi {
                break;
            }
            out.insert(x);
            n += 1;
        }
    }
    out.into_iter().collect()
}

type AtomTest = Box<dyn Fn(&Rational) -> bool>;

/// Unordered pairs `{a, b}` of atoms with `a ∘ b = target` and
/// `min(den a, den b) <= max_den`.
fn length_two_pairs(operation: Operation, r: Option<&Rational>, target: &Rational, max_den: u64) -> Vec<RationalPair> {
    let (candidates, is_atom): (Vec<Rational>, AtomTest) = match (operation, r) {
        (Operation::Add, None) => (grid(&int(1), &int(2), max_den), Box::new(conductor_atom)),
        (Operation::Add, Some(r)) => {
            let mut c = grid(r, &(r + Rational::one()), max_den);
            c.push(Rational::one());
            let r = r.clone();
            (c, Box::new(move |x| sring_additive_atom(&r, x)))
        }
        (Operation::Mul, Some(r)) => {
            let r2 = r * r;
            let mut c = grid(r, &r2, max_den);
            let top = r2.ceil().to_integer().to_u64().unwrap_or(0);
            c.extend(primes_up_to(top).into_iter().map(to_rat).filter(|p| *p < r2));
            let r = r.clone();
            (c, Box::new(move |x| sring_multiplicative_atom(&r, x)))
        }
        (Operation::Mul, None) => (Vec::new(), Box::new(|_| false)),
    };
    let mut pairs = BTreeSet::new();
    for a in candidates {
        if !is_atom(&a) {
            continue;
        }
        let b = match operation {
            Operation::Add => target - &a,
            Operation::Mul => target / &a,
        };
        if b.is_positive() && is_atom(&b) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            pairs.insert((lo, hi));
        }
    }
    pairs.into_iter().map(|(a, b)| RationalPair { a, b }).collect()
}

/// All length-2 factorizations of the target with denominators up to `D`,
/// each atom checked by closed form, with strict growth from `⌊D/2⌋` to `D`.
pub fn lff_violation(target: &LffTarget, max_den: u64) -> Result<Certificate> {
    if max_den == 0 {
        return Err(Error::InvalidArgument("denominator bound must be >= 1".into()));
    }
    let (operation, r, x, mut params) = match target {
        LffTarget::Conductor => (Operation::Add, None, int(3), vec![]),
        LffTarget::SRingAdditive { r } => {
            if *r <= Rational::one() {
                return Err(Error::InvalidArgument(format!("sring needs r > 1, got {r}")));
            }
            let x = r * int(2) + Rational::one();
            (Operation::Add, Some(r.clone()), x, vec![("r", r.to_string())])
        }
        LffTarget::SRingMultiplicative { r, s } => {
            if *r <= Rational::one() {
                return Err(Error::InvalidArgument(format!("sring needs r > 1, got {r}")));
            }
            let r2 = r * r;
            let s = s.clone().unwrap_or_else(|| (r + &r2) / int(2));
            if s <= *r || s >= r2 {
                return Err(Error::InvalidArgument(format!(
                    "s = {s} must lie strictly between r = {r} and r^2 = {r2}"
                )));
            }
            let x = &s * &s;
            (
                Operation::Mul,
                Some(r.clone()),
                x,
                vec![("r", r.to_string()), ("s", s.to_string())],
            )
        }
    };
    let pairs = length_two_pairs(operation, r.as_ref(), &x, max_den);
    if pairs.is_empty() {
        return Err(Error::BoundTooSmall(format!(
            "no length-2 factorization of {x} with denominators <= {max_den}"
        )));
    }
    let half = length_two_pairs(operation, r.as_ref(), &x, max_den / 2).len();
    if pairs.len() < half + 1 {
        return Err(Error::BoundTooSmall(format!(
            "{} witnesses at D = {max_den} versus {half} at D = {}: no growth",
            pairs.len(),
            max_den / 2
        )));
    }
    params.push(("max_den", max_den.to_string()));
    Ok(Certificate::seal(
        Claim::LffFails,
        target.family(),
        &params,
        Witness::LengthTwoPairs {
            operation,
            target: x,
            max_den,
            pairs,
            half_bound_count: half,
        },
    ))
}

/// Closed-form atom test recomputed without the monoid module's helpers.
fn independent_atom(family: &GeneratorFamily, operation: Operation, x: &Rational) -> bool {
    match (family, operation) {
        (GeneratorFamily::ConductorQ, Operation::Add) => *x >= int(1) && *x < int(2),
        (GeneratorFamily::SRing { r }, Operation::Add) => x.is_one() || (x >= r && *x < r + int(1) && *x != r.ceil()),
        (GeneratorFamily::SRing { r }, Operation::Mul) => {
            let in_s = |y: &Rational| (y.is_integer() && !y.is_negative()) || y >= r;
            let r2 = r * r;
            let is_int_prime = x.is_integer() && x.to_integer().to_u64().is_some_and(arith::is_prime);
            if !(in_s(x) && *x > int(1) && *x < r2 && (is_int_prime || x >= r)) {
                return false;
            }
            // no prime p < x with x / p ∈ S_r and x / p > 1
            let mut p = 2u64;
            while to_rat(p) < *x {
                if arith::is_prime(p) {
                    let y = x / to_rat(p);
                    if in_s(&y) && y > int(1) {
                        return false;
                    }
                }
                p += 1;
            }
            true
        }
        _ => false,
    }
}

fn verify_pairs(
    family: &GeneratorFamily,
    operation: Operation,
    target: &Rational,
    max_den: u64,
    pairs: &[RationalPair],
    half: usize,
) -> bool {
    let distinct: BTreeSet<(&Rational, &Rational)> = pairs.iter().map(|p| (&p.a, &p.b)).collect();
    distinct.len() == pairs.len()
        && pairs.len() > half
        && pairs.iter().all(|RationalPair { a, b }| {
            let combined = match operation {
                Operation::Add => a + b,
                Operation::Mul => a * b,
            };
            combined == *target
                && a <= b
                && a.denom().min(b.denom()) <= &BigInt::from(max_den)
                && independent_atom(family, operation, a)
                && independent_atom(family, operation, b)
        })
}

/// `|Z_ℓ(target)|` over the denominator grid, strictly increasing in `D`.
pub fn slice_growth(family: &GeneratorFamily, target: &Rational, length: u64, bounds: &[u64]) -> Result<Certificate> {
    if !family.is_dense() {
        return Err(Error::Unsupported("slice growth is defined for dense families".into()));
    }
    if bounds.is_empty() {
        return Err(Error::InvalidArgument("no denominator bounds".into()));
    }
    let mut counts = Vec::new();
    let mut first_slice = Vec::new();
    for (i, &d) in bounds.iter().enumerate() {
        let spec = MonoidSpec::new(family.clone(), Truncation::Denominator { max_den: d })?;
        let r = factorization::factorizations_of_length(&spec, target, length)?;
        counts.push(r.factorizations.len());
        if i == 0 {
            first_slice = r.factorizations;
        }
    }
    Ok(Certificate::seal(
        Claim::LffFails,
        family.clone(),
        &[
            ("target", target.to_string()),
            ("length", length.to_string()),
            (
                "bounds",
                bounds.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            ),
        ],
        Witness::SliceGrowth {
            target: target.clone(),
            length,
            bounds: bounds.to_vec(),
            counts,
            first_slice,
        },
    ))
}

fn verify_growth(
    family: &GeneratorFamily,
    target: &Rational,
    length: u64,
    bounds: &[u64],
    counts: &[usize],
    first_slice: &[Factorization<Rational>],
) -> bool {
    let max_den = bounds.first().copied().unwrap_or(0);
    bounds.len() == counts.len()
        && bounds.windows(2).all(|w| w[0] < w[1])
        && counts.windows(2).all(|w| w[0] < w[1])
        && counts.first() == Some(&first_slice.len())
        && first_slice.iter().all(|z| {
            z.length() == length
                && z.value().is_ok_and(|v| v == *target)
                && z.support()
                    .all(|a| a.denom() <= &BigInt::from(max_den) && independent_atom(family, Operation::Add, a))
        })
}

// ---------------------------------------------------------------- atoms

/// The first `k` atoms of a named sequence family with their p-adic
/// certificates.
pub fn atom_set(family: &GeneratorFamily, k: u64) -> Result<Certificate> {
    let spec = MonoidSpec::new(family.clone(), Truncation::Index { k })?;
    let certified = spec.certified_atoms(k)?;
    Ok(Certificate::seal(
        Claim::AtomSet,
        family.clone(),
        &[("k", k.to_string())],
        Witness::AtomSet {
            atoms: certified.atoms,
            certificates: certified.certificates,
        },
    ))
}

fn verify_atom_set(family: &GeneratorFamily, atoms: &[Rational], certificates: &[PAdicCertificate]) -> bool {
    let generators_ok = match family {
        GeneratorFamily::Grams => atoms
            .iter()
            .enumerate()
            .all(|(n, a)| grams_generator(n as u64).as_ref() == Some(a)),
        GeneratorFamily::UnitFractionPrimes => atoms
            .iter()
            .zip(arith::first_primes(atoms.len(), false))
            .all(|(a, p)| *a == Rational::new(BigInt::one(), BigInt::from(p))),
        GeneratorFamily::PowerOf { q } => {
            !q.recip().is_integer() && atoms.iter().enumerate().all(|(n, a)| *a == arith::pow(q, n as u32))
        }
        GeneratorFamily::Alternating { primes } => atoms.iter().enumerate().all(|(i, a)| {
            let p = match primes {
                PrimeSequence::All => arith::nth_prime(i as u64 + 1, false).ok(),
                PrimeSequence::Custom(ps) => ps.get(i).copied(),
            };
            p.is_some_and(|p| *a == alternating_atom(i as u64 + 1, p))
        }),
        _ => false,
    };
    let certs_ok = match family {
        GeneratorFamily::PowerOf { .. } => certificates.is_empty(),
        _ => {
            certificates.len() == atoms.len()
                && certificates
                    .iter()
                    .enumerate()
                    .all(|(i, c)| c.position == i && check_padic(c, atoms))
        }
    };
    !atoms.is_empty() && generators_ok && certs_ok
}

/// The certificate's generator is the only one with a negative valuation at
/// its prime, recomputed by repeated division.
fn check_padic(c: &PAdicCertificate, atoms: &[Rational]) -> bool {
    let valuation = |x: &Rational| -> i64 {
        let p = BigInt::from(c.prime);
        let count = |mut n: BigInt| {
            let mut v = 0i64;
            while !n.is_zero() && n.is_multiple_of(&p) {
                n /= &p;
                v += 1;
            }
            v
        };
        count(x.numer().clone()) - count(x.denom().clone())
    };
    arith::is_prime(c.prime)
        && atoms.get(c.position) == Some(&c.generator)
        && valuation(&c.generator) == c.valuation
        && c.valuation < 0
        && atoms
            .iter()
            .enumerate()
            .all(|(i, a)| i == c.position || valuation(a) >= 0)
}

fn alternating_atom(n: u64, p: u64) -> Rational {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Rational::one() + Rational::new(BigInt::from(sign), BigInt::from(p))
}

/// Closed-form atom verdicts for the dense families.
pub fn atom_verdicts(family: &GeneratorFamily, operation: Operation, xs: &[Rational]) -> Result<Certificate> {
    let checks = xs
        .iter()
        .map(|x| {
            let atom = match (family, operation) {
                (GeneratorFamily::ConductorQ, Operation::Add) => conductor_atom(x),
                (GeneratorFamily::SRing { r }, Operation::Add) => sring_additive_atom(r, x),
                (GeneratorFamily::SRing { r }, Operation::Mul) => sring_multiplicative_atom(r, x),
                (f, _) => {
                    return Err(Error::Unsupported(format!(
                        "closed-form atom verdicts for {}",
                        f.name()
                    )))
                }
            };
            if let GeneratorFamily::SRing { r } = family {
                if !sring_contains(r, x) {
                    return Err(Error::NotAMember(x.to_string()));
                }
            }
            Ok(AtomCheck { x: x.clone(), atom })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::seal(
        Claim::AtomSet,
        family.clone(),
        &[(
            "operation",
            match operation {
                Operation::Add => "add".into(),
                Operation::Mul => "mul".into(),
            },
        )],
        Witness::AtomVerdicts { operation, checks },
    ))
}

fn verify_atom_verdicts(family: &GeneratorFamily, operation: Operation, checks: &[AtomCheck]) -> bool {
    !checks.is_empty()
        && checks
            .iter()
            .all(|c| independent_atom(family, operation, &c.x) == c.atom)
}

// ---------------------------------------------------------------- FFM bound

/// For `x` in the alternating monoid: every atom `a_k` dividing `x` has
/// `k <= N := max(n_x, x + 1)`, where `p_k` does not divide `d(x)` for
/// all `k >= n_x`.
pub fn ffm_divisor_bound_alternating(x: &Rational, primes: &PrimeSequence) -> Result<Certificate> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!("{x} must be a nonzero member")));
    }
    let family = GeneratorFamily::Alternating { primes: primes.clone() };
    let den = x.denom().clone();
    let prime_at = |k: u64| -> Result<u64> {
        match primes {
            PrimeSequence::All => arith::nth_prime(k, false),
            PrimeSequence::Custom(ps) => ps
                .get(k as usize - 1)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("custom prime sequence has no term {k}"))),
        }
    };
    // primes dividing d(x) are at most d(x); scan indices until p_k exceeds it
    let mut n_x = 1u64;
    let mut k = 1u64;
    while let Ok(p) = prime_at(k) {
        if BigInt::from(p) > den {
            break;
        }
        if (&den % BigInt::from(p)).is_zero() {
            n_x = k + 1;
        }
        k += 1;
    }
    let x_plus_one = x + Rational::one();
    let bound = std::cmp::max(to_rat(n_x), x_plus_one.clone());
    let search_k = std::cmp::max(
        10,
        2 * bound.ceil().to_integer().to_u64().ok_or(Error::Overflow("bound"))?,
    );
    let spec = MonoidSpec::new(family.clone(), Truncation::Index { k: search_k })?;
    if !spec.contains(x)?.member {
        return Err(Error::NotAMember(format!(
            "{x} (searched the first {search_k} generators)"
        )));
    }
    let gens = spec.generators()?;
    let mut divisors = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        if a > x {
            continue;
        }
        let rest = x - a;
        let m = spec.contains(&rest)?;
        if m.member {
            divisors.push(DivisorEntry {
                index: i as u64 + 1,
                atom: a.clone(),
                prime: prime_at(i as u64 + 1)?,
                cofactor: Combination {
                    value: rest,
                    terms: m.combination,
                },
            });
        }
    }
    let parameters = [("x", x.to_string()), ("search_k", search_k.to_string())];
    Ok(Certificate::seal(
        Claim::FfmDivisorBound,
        family,
        &parameters,
        Witness::DivisorBound {
            x: x.clone(),
            n_x,
            bound,
            search_k,
            divisors,
        },
    ))
}

fn verify_divisor_bound(
    family: &GeneratorFamily,
    x: &Rational,
    n_x: u64,
    bound: &Rational,
    search_k: u64,
    divisors: &[DivisorEntry],
) -> bool {
    let GeneratorFamily::Alternating { primes } = family else {
        return false;
    };
    let prime_at = |k: u64| match primes {
        PrimeSequence::All => arith::nth_prime(k, false).ok(),
        PrimeSequence::Custom(ps) => ps.get(k as usize - 1).copied(),
    };
    let den = x.denom();
    // n_x: no prime of index >= n_x divides d(x), and p_{n_x - 1} does
    let tail_ok = (n_x..=search_k).all(|k| prime_at(k).is_none_or(|p| !(den % BigInt::from(p)).is_zero()));
    let head_ok = n_x == 1 || prime_at(n_x - 1).is_some_and(|p| (den % BigInt::from(p)).is_zero());
    let x1 = x + Rational::one();
    let bound_ok = *bound == std::cmp::max(to_rat(n_x), x1.clone()) && to_rat(search_k) >= *bound;
    let gens: Option<Vec<Rational>> = (1..=search_k)
        .map(|k| prime_at(k).map(|p| alternating_atom(k, p)))
        .collect();
    let Some(gens) = gens else { return false };
    tail_ok
        && head_ok
        && bound_ok
        && divisors.iter().all(|d| {
            let p_ok = prime_at(d.index) == Some(d.prime);
            let coprime = !(den % BigInt::from(d.prime)).is_zero();
            p_ok
                && d.atom == alternating_atom(d.index, d.prime)
                && d.cofactor.value == x - &d.atom
                && (d.cofactor.terms.is_empty() && d.cofactor.value.is_zero() || d.cofactor.holds())
                && d.cofactor.terms.iter().all(|(a, _)| gens.contains(a))
                && to_rat(d.index) <= *bound
                // k <= p_k <= x + 1 whenever p_k does not divide d(x)
                && (!coprime || (d.index <= d.prime && to_rat(d.prime) <= x1))
        })
}

// ---------------------------------------------------------------- classify

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// A known closed form for this family.
    ClosedForm,
    /// A verified witness certificate attached to the report.
    Witness,
    /// Follows from another entry by FF ⇒ BF ⇒ ACCP ⇒ atomic, FF ⇒ LFF ⇒ atomic.
    Implied,
    /// Nothing known.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub verdict: Verdict,
    pub basis: Basis,
    pub reason: String,
}

impl Entry {
    fn new(verdict: Verdict, basis: Basis, reason: &str) -> Self {
        Entry {
            verdict,
            basis,
            reason: reason.into(),
        }
    }

    fn unknown() -> Self {
        Entry::new(Verdict::Unknown, Basis::None, "")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Atomic,
    Accp,
    Bf,
    Ff,
    Lff,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Atomic,
        Property::Accp,
        Property::Bf,
        Property::Ff,
        Property::Lff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Atomic => "atomic",
            Property::Accp => "accp",
            Property::Bf => "bf",
            Property::Ff => "ff",
            Property::Lff => "lff",
        }
    }
}

/// Implications `stronger ⇒ weaker`.
const IMPLICATIONS: [(Property, Property); 5] = [
    (Property::Ff, Property::Bf),
    (Property::Bf, Property::Accp),
    (Property::Accp, Property::Atomic),
    (Property::Ff, Property::Lff),
    (Property::Lff, Property::Atomic),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub family: String,
    pub entries: BTreeMap<Property, Entry>,
}

impl ClassificationTable {
    pub fn get(&self, p: Property) -> Verdict {
        self.entries.get(&p).map_or(Verdict::Unknown, |e| e.verdict)
    }

    /// No implication is contradicted: a `yes` never sits above a `no`.
    pub fn is_consistent(&self) -> bool {
        Property::ALL.iter().all(|p| self.entries.contains_key(p))
            && IMPLICATIONS
                .iter()
                .all(|&(hi, lo)| !(self.get(hi) == Verdict::Yes && self.get(lo) == Verdict::No))
    }

    /// Fills unknown entries through the implications until nothing changes.
    fn propagate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for &(hi, lo) in &IMPLICATIONS {
                let (vh, vl) = (self.get(hi), self.get(lo));
                if vh == Verdict::Yes && vl == Verdict::Unknown {
                    let reason = format!("{} implies {}", hi.name(), lo.name());
                    self.entries
                        .insert(lo, Entry::new(Verdict::Yes, Basis::Implied, &reason));
                    changed = true;
                }
                if vl == Verdict::No && vh == Verdict::Unknown {
                    let reason = format!("not {} implies not {}", lo.name(), hi.name());
                    self.entries
                        .insert(hi, Entry::new(Verdict::No, Basis::Implied, &reason));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::VerificationFailed(format!(
                "inconsistent property table for {}",
                self.family
            )))
        }
    }
}

const CO_WELL_ORDERED_LFF: &str =
    "generated by a decreasing sequence, so co-well-ordered; atomic co-well-ordered monoids are LFF";

/// The property table of a named family. Entries come from known closed
/// forms, from freshly built and verified witnesses, or by implication.
pub fn classify(family: &GeneratorFamily) -> Result<Certificate> {
    use Basis::{ClosedForm, Witness as Wit};
    use Verdict::{No, Yes};
    let mut entries: BTreeMap<Property, Entry> = Property::ALL.iter().map(|&p| (p, Entry::unknown())).collect();
    let mut supporting = Vec::new();
    let mut set = |p: Property, e: Entry| {
        entries.insert(p, e);
    };
    match family {
        GeneratorFamily::Explicit { .. } => {
            set(
                Property::Ff,
                Entry::new(Yes, ClosedForm, "finitely generated monoids are FF"),
            );
        }
        GeneratorFamily::Grams => {
            set(
                Property::Atomic,
                Entry::new(Yes, ClosedForm, "every generator is an atom (p-adic certificate)"),
            );
            supporting.push(atom_set(family, 4)?);
            supporting.push(accp_chain(family, 5)?);
            set(Property::Accp, Entry::new(No, Wit, "1/2^n + M never stabilizes"));
            set(Property::Lff, Entry::new(Yes, ClosedForm, CO_WELL_ORDERED_LFF));
        }
        GeneratorFamily::PowerOf { .. } if family.check_power_hypothesis().is_err() => {
            set(
                Property::Atomic,
                Entry::new(
                    No,
                    ClosedForm,
                    "1/q is a natural number: every power q^n = (1/q) q^{n+1} splits, so no atoms",
                ),
            );
        }
        GeneratorFamily::PowerOf { .. } => {
            set(
                Property::Atomic,
                Entry::new(
                    Yes,
                    ClosedForm,
                    "atoms are exactly the powers q^n when 1/q is not a natural number",
                ),
            );
            supporting.push(accp_chain(family, 5)?);
            set(Property::Accp, Entry::new(No, Wit, "d q^n = (d - n) q^n + d q^{n+1}"));
            set(Property::Lff, Entry::new(Yes, ClosedForm, CO_WELL_ORDERED_LFF));
        }
        GeneratorFamily::UnitFractionPrimes => {
            set(
                Property::Atomic,
                Entry::new(Yes, ClosedForm, "atoms are exactly the unit fractions 1/p"),
            );
            set(Property::Accp, Entry::new(Yes, ClosedForm, "known to satisfy the ACCP"));
            supporting.push(bf_violation_unit_fractions(13)?);
            set(Property::Bf, Entry::new(No, Wit, "L(1) is the set of all primes"));
            set(Property::Lff, Entry::new(Yes, ClosedForm, CO_WELL_ORDERED_LFF));
        }
        GeneratorFamily::Alternating { primes } => {
            set(
                Property::Atomic,
                Entry::new(
                    Yes,
                    ClosedForm,
                    "each a_n is the only generator with negative p_n-adic valuation",
                ),
            );
            set(
                Property::Ff,
                Entry::new(
                    Yes,
                    ClosedForm,
                    "every element is divisible by finitely many atoms (index bound max(n_x, x + 1))",
                ),
            );
            supporting.push(ffm_divisor_bound_alternating(
                &Rational::new(11.into(), 6.into()),
                primes,
            )?);
        }
        GeneratorFamily::ConductorQ => {
            set(Property::Atomic, Entry::new(Yes, ClosedForm, "atoms are Q ∩ [1, 2)"));
            set(
                Property::Bf,
                Entry::new(Yes, ClosedForm, "0 is not a limit point of the nonzero elements"),
            );
            supporting.push(lff_violation(&LffTarget::Conductor, 10)?);
            set(
                Property::Lff,
                Entry::new(No, Wit, "3 = (3/2 - 1/n) + (3/2 + 1/n) for every n >= 3"),
            );
        }
        GeneratorFamily::SRing { r } => {
            set(
                Property::Atomic,
                Entry::new(Yes, ClosedForm, "additive atoms are ({1} ∪ [r, r+1)) minus ceil(r)"),
            );
            set(
                Property::Bf,
                Entry::new(Yes, ClosedForm, "0 is not a limit point of the nonzero elements"),
            );
            supporting.push(lff_violation(&LffTarget::SRingAdditive { r: r.clone() }, 8)?);
            set(
                Property::Lff,
                Entry::new(No, Wit, "2r + 1 = (r + 1/n) + (r + 1 - 1/n) for all large n"),
            );
        }
    }
    let mut table = ClassificationTable {
        family: family.name().into(),
        entries,
    };
    table.propagate()?;
    Ok(Certificate::seal(
        Claim::Classification,
        family.clone(),
        &[],
        Witness::Classification { table, supporting },
    ))
}

// ---------------------------------------------------------------- battery

/// One named example of the battery and its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    pub name: String,
    pub certificate: Certificate,
}

/// Every example-level claim for the named families, each certified.
pub fn paper_examples() -> Result<Vec<Example>> {
    let mut out = Vec::new();
    let mut push = |name: &str, certificate: Certificate| {
        out.push(Example {
            name: name.into(),
            certificate,
        })
    };
    let q23 = GeneratorFamily::PowerOf { q: arith::rat(2, 3) };
    let sring2 = GeneratorFamily::SRing { r: int(2) };
    push("grams-atoms", atom_set(&GeneratorFamily::Grams, 4)?);
    push("grams-accp-chain", accp_chain(&GeneratorFamily::Grams, 20)?);
    push("power-2/3-atoms", atom_set(&q23, 3)?);
    push("power-2/3-accp-chain", accp_chain(&q23, 20)?);
    push(
        "unit-fractions-atoms",
        atom_set(&GeneratorFamily::UnitFractionPrimes, 3)?,
    );
    push("unit-fractions-lengths-of-1", bf_violation_unit_fractions(13)?);
    push(
        "alternating-atoms",
        atom_set(
            &GeneratorFamily::Alternating {
                primes: PrimeSequence::All,
            },
            6,
        )?,
    );
    for (name, x) in [
        ("alternating-divisors-of-1/2", arith::rat(1, 2)),
        ("alternating-divisors-of-11/6", arith::rat(11, 6)),
        ("alternating-divisors-of-4/3", arith::rat(4, 3)),
    ] {
        push(name, ffm_divisor_bound_alternating(&x, &PrimeSequence::All)?);
    }
    push(
        "conductor-length-2-slice-of-3",
        slice_growth(&GeneratorFamily::ConductorQ, &int(3), 2, &[3, 10, 30])?,
    );
    push("conductor-length-2-witnesses", lff_violation(&LffTarget::Conductor, 3)?);
    push(
        "conductor-atoms",
        atom_verdicts(
            &GeneratorFamily::ConductorQ,
            Operation::Add,
            &[int(1), arith::rat(3, 2), int(2), arith::rat(7, 2)],
        )?,
    );
    push(
        "sring-2-additive-atoms",
        atom_verdicts(&sring2, Operation::Add, &[int(1), int(2), arith::rat(5, 2), int(3)])?,
    );
    push(
        "sring-2-additive-witnesses-for-5",
        lff_violation(&LffTarget::SRingAdditive { r: int(2) }, 4)?,
    );
    push(
        "sring-2-multiplicative-witnesses-for-9",
        lff_violation(
            &LffTarget::SRingMultiplicative {
                r: int(2),
                s: Some(int(3)),
            },
            4,
        )?,
    );
    for family in named_families() {
        let name = format!("classify-{}", family.name());
        push(&name, classify(&family)?);
    }
    Ok(out)
}

/// One representative of each of the seven named families.
pub fn named_families() -> Vec<GeneratorFamily> {
    vec![
        GeneratorFamily::Explicit {
            gens: vec![int(2), int(3)],
        },
        GeneratorFamily::Grams,
        GeneratorFamily::PowerOf { q: arith::rat(2, 3) },
        GeneratorFamily::UnitFractionPrimes,
        GeneratorFamily::Alternating {
            primes: PrimeSequence::All,
        },
        GeneratorFamily::ConductorQ,
        GeneratorFamily::SRing { r: int(2) },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn grams_chain() {
        let c = accp_chain(&GeneratorFamily::Grams, 2).unwrap();
        assert!(c.verified);
        let Witness::AccpChain { steps } = &c.witness else {
            panic!()
        };
        assert_eq!(steps[0].element.value, int(1));
        assert_eq!(steps[0].delta.terms, vec![(rat(1, 10), 5)]);
        assert_eq!(steps[1].delta.terms, vec![(rat(1, 28), 7)]);
        assert_eq!(steps[1].element.value, rat(1, 2));
    }

    #[test]
    fn power_chain() {
        let q = GeneratorFamily::PowerOf { q: rat(2, 3) };
        let c = accp_chain(&q, 1).unwrap();
        assert!(c.verified);
        let Witness::AccpChain { steps } = &c.witness else {
            panic!()
        };
        assert_eq!(steps[1].element.value, int(2));
        assert_eq!(steps[1].delta.value, rat(2, 3));
        assert_eq!(steps[1].next.value, rat(4, 3));
        assert!(matches!(
            accp_chain(&GeneratorFamily::PowerOf { q: rat(1, 2) }, 3),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn tampered_chain_fails() {
        let mut c = accp_chain(&GeneratorFamily::Grams, 3).unwrap();
        if let Witness::AccpChain { steps } = &mut c.witness {
            steps[2].delta.terms[0].1 += 1;
        }
        assert!(!c.reverify());
    }

    #[test]
    fn unit_fraction_lengths() {
        for (p, expected) in [(2, vec![2]), (5, vec![2, 3, 5]), (13, vec![2, 3, 5, 7, 11, 13])] {
            let c = bf_violation_unit_fractions(p).unwrap();
            assert!(c.verified);
            let Witness::LengthSet { lengths, .. } = &c.witness else {
                panic!()
            };
            assert_eq!(lengths, &expected);
        }
        assert!(bf_violation_unit_fractions(1).is_err());
    }

    #[test]
    fn lff_witnesses() {
        let c = lff_violation(&LffTarget::Conductor, 3).unwrap();
        assert!(c.verified);
        let Witness::LengthTwoPairs { pairs, .. } = &c.witness else {
            panic!()
        };
        assert_eq!(
            pairs,
            &[
                RationalPair {
                    a: rat(4, 3),
                    b: rat(5, 3)
                },
                RationalPair {
                    a: rat(3, 2),
                    b: rat(3, 2)
                },
            ]
        );
        let c = lff_violation(&LffTarget::SRingAdditive { r: int(2) }, 2).unwrap();
        let Witness::LengthTwoPairs { pairs, target, .. } = &c.witness else {
            panic!()
        };
        assert_eq!(target, &int(5));
        assert_eq!(
            pairs,
            &[RationalPair {
                a: rat(5, 2),
                b: rat(5, 2)
            }]
        );
        assert!(matches!(
            lff_violation(&LffTarget::SRingAdditive { r: int(2) }, 1),
            Err(Error::BoundTooSmall(_))
        ));
        let m = LffTarget::SRingMultiplicative {
            r: int(2),
            s: Some(int(3)),
        };
        let c = lff_violation(&m, 4).unwrap();
        assert!(c.verified);
        let Witness::LengthTwoPairs { pairs, .. } = &c.witness else {
            panic!()
        };
        assert!(pairs.contains(&RationalPair {
            a: rat(12, 5),
            b: rat(15, 4)
        }));
        assert!(pairs.contains(&RationalPair { a: int(3), b: int(3) }));
        assert!(pairs.iter().all(|p| &p.a * &p.b == int(9)));
        let bad = LffTarget::SRingMultiplicative {
            r: int(2),
            s: Some(int(5)),
        };
        assert!(lff_violation(&bad, 4).is_err());
    }

    #[test]
    fn divisor_bounds() {
        for (x, expected) in [(rat(1, 2), vec![1]), (rat(11, 6), vec![1, 2]), (rat(4, 3), vec![2])] {
            let c = ffm_divisor_bound_alternating(&x, &PrimeSequence::All).unwrap();
            assert!(c.verified, "{x}");
            let Witness::DivisorBound { divisors, .. } = &c.witness else {
                panic!()
            };
            let idx: Vec<u64> = divisors.iter().map(|d| d.index).collect();
            assert_eq!(idx, expected, "{x}");
        }
        let c = ffm_divisor_bound_alternating(&rat(1, 2), &PrimeSequence::All).unwrap();
        let Witness::DivisorBound { n_x, bound, .. } = &c.witness else {
            panic!()
        };
        assert_eq!((*n_x, bound.clone()), (2, int(2)));
        assert!(matches!(
            ffm_divisor_bound_alternating(&rat(1, 3), &PrimeSequence::All),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn classification_tables() {
        use Verdict::{No, Yes};
        let expect = |f: GeneratorFamily, row: [Verdict; 5]| {
            let c = classify(&f).unwrap();
            assert!(c.verified, "{}", f.name());
            let Witness::Classification { table, .. } = &c.witness else {
                panic!()
            };
            let got: Vec<Verdict> = Property::ALL.iter().map(|&p| table.get(p)).collect();
            assert_eq!(got, row, "{}", f.name());
        };
        // atomic, accp, bf, ff, lff
        expect(GeneratorFamily::Grams, [Yes, No, No, No, Yes]);
        expect(GeneratorFamily::ConductorQ, [Yes, Yes, Yes, No, No]);
        expect(GeneratorFamily::UnitFractionPrimes, [Yes, Yes, No, No, Yes]);
        expect(GeneratorFamily::PowerOf { q: rat(1, 2) }, [No, No, No, No, No]);
        expect(
            GeneratorFamily::Alternating {
                primes: PrimeSequence::All,
            },
            [Yes, Yes, Yes, Yes, Yes],
        );
    }

    #[test]
    fn battery_is_verified() {
        let examples = paper_examples().unwrap();
        assert!(examples.len() >= 20);
        for e in &examples {
            assert!(e.certificate.verified, "{}", e.name);
        }
        let growth = examples
            .iter()
            .find(|e| e.name == "conductor-length-2-slice-of-3")
            .unwrap();
        let Witness::SliceGrowth { counts, .. } = &growth.certificate.witness else {
            panic!()
        };
        assert_eq!(counts[0], 2);
    }

    #[test]
    fn certificates_round_trip() {
        let c = classify(&GeneratorFamily::ConductorQ).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(back.reverify());
    }
}
