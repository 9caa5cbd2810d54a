//! Factorizations `Z(x)`, length slices `Z_ℓ(x)` and length sets `L(x)`
//! within a truncation, with completeness reporting.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, convert, Scalar};
use crate::error::{Error, Result};
use crate::monoid::{GeneratorFamily, MonoidSpec, Truncation};
use crate::search::{AtomTable, SearchLimits};
use crate::Rational;

/// A formal sum of atoms, stored ascending by atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent, bound = "")]
pub struct Factorization<S: Scalar> {
    #[serde(with = "crate::serde_exact::pairs")]
    parts: Vec<(S, u64)>,
}

impl<S: Scalar> Factorization<S> {
    /// Normalizes: merges repeated atoms and drops zero multiplicities.
    pub fn new(parts: impl IntoIterator<Item = (S, u64)>) -> Result<Self> {
        let mut parts: Vec<(S, u64)> = parts.into_iter().filter(|(_, c)| *c > 0).collect();
        if let Some((a, _)) = parts.iter().find(|(a, _)| !a.is_positive()) {
            return Err(Error::InvalidArgument(format!("atom {a} is not positive")));
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(S, u64)> = Vec::with_capacity(parts.len());
        for (a, c) in parts {
            match merged.last_mut() {
                Some((b, d)) if *b == a => *d = d.checked_add(c).ok_or(Error::Overflow("multiplicity"))?,
                _ => merged.push((a, c)),
            }
        }
        Ok(Factorization { parts: merged })
    }

    /// From a list of atoms with repetition.
    pub fn from_atoms(atoms: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(atoms.into_iter().map(|a| (a, 1)))
    }

    pub fn parts(&self) -> &[(S, u64)] {
        &self.parts
    }

    /// `|z|`, the number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.parts.iter().map(|(_, c)| c).sum()
    }

    pub fn value(&self) -> Result<S> {
        let mut acc = S::zero();
        for (a, c) in &self.parts {
            acc = arith::add(&acc, &arith::scale(a, *c)?)?;
        }
        Ok(acc)
    }

    pub fn support(&self) -> impl Iterator<Item = &S> {
        self.parts.iter().map(|(a, _)| a)
    }

    /// Atoms with repetition, ascending.
    pub fn expanded(&self) -> impl Iterator<Item = &S> {
        self.parts.iter().flat_map(|(a, c)| std::iter::repeat_n(a, *c as usize))
    }

    pub fn multiplicity(&self, atom: &S) -> u64 {
        self.parts
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map_or(0, |i| self.parts[i].1)
    }
}

impl<S: Scalar> Ord for Factorization<S> {
    /// Lexicographic on the ascending atom lists with repetition.
    fn cmp(&self, other: &Self) -> Ordering {
        self.expanded().cmp(other.expanded())
    }
}

impl<S: Scalar> PartialOrd for Factorization<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> fmt::Display for Factorization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|(a, c)| if *c == 1 { a.to_string() } else { format!("{c}*{a}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Every factorization of `x` in the (untruncated) monoid is listed.
    Complete,
    /// Every factorization of every length queried is listed.
    CompleteForLength,
    /// Only factorizations over the truncated atom set are listed.
    TruncationBounded,
}

impl Completeness {
    /// The weaker of two verdicts.
    pub fn weakest(self, other: Self) -> Self {
        self.max(other)
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "complete",
            Completeness::CompleteForLength => "complete-for-length",
            Completeness::TruncationBounded => "truncation-bounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct QueryResult<S: Scalar> {
    #[serde(with = "crate::serde_exact")]
    pub x: S,
    pub truncation: Truncation,
    pub completeness: Completeness,
    pub factorizations: Vec<Factorization<S>>,
    /// Distinct lengths of the listed factorizations, ascending.
    pub lengths: Vec<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryOptions {
    /// Split the search across the rayon pool; output is identical.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSet {
    pub lengths: BTreeSet<u64>,
    pub completeness: Completeness,
    pub truncation: Truncation,
}

/// Whether `Z_ℓ(x)` over the truncation equals `Z_ℓ(x)` in the full monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessCertificate {
    pub holds: bool,
    /// `x - (ℓ-1)·a_max`; absent when no truncation applies.
    #[serde(with = "crate::serde_exact::option")]
    pub threshold: Option<Rational>,
    /// Smallest atom inside the truncation; absent when no truncation applies.
    #[serde(with = "crate::serde_exact::option")]
    pub smallest_atom: Option<Rational>,
}

/// For a decreasing family, every atom outside the truncation is smaller than
/// every atom inside. If even the smallest part a length-ℓ factorization can
/// have, `x - (ℓ-1)·a_max`, reaches the smallest truncation atom, then every
/// part of every such factorization lies inside the truncation.
pub fn completeness_certificate<S: Scalar>(spec: &MonoidSpec, x: &S, length: u64) -> Result<CompletenessCertificate> {
    if length == 0 {
        return Err(Error::InvalidArgument("length must be >= 1".into()));
    }
    if let GeneratorFamily::Explicit { .. } = spec.family {
        return Ok(CompletenessCertificate {
            holds: true,
            threshold: None,
            smallest_atom: None,
        });
    }
    let Some(a_max) = spec.family.decreasing_max_atom() else {
        return Err(Error::CertificateUnavailable(format!(
            "family {} has no known largest atom below which truncation is exhaustive",
            spec.family.name()
        )));
    };
    spec.family.check_power_hypothesis()?;
    let smallest = spec.generators()?.into_iter().min().expect("index bound k >= 1");
    let threshold = x.to_rational() - a_max * Rational::from_integer((length - 1).into());
    Ok(CompletenessCertificate {
        holds: threshold >= smallest,
        threshold: Some(threshold),
        smallest_atom: Some(smallest),
    })
}

/// Atoms `<= x` available to the search, plus whether `x` is a member at all.
fn prepare<S: Scalar>(spec: &MonoidSpec, x: &S) -> Result<Vec<S>> {
    if x.is_negative() {
        return Err(Error::InvalidArgument(format!("{x} is negative")));
    }
    let membership = spec.contains(x);
    match membership {
        Ok(m) if !m.member && !m.relative_to_truncation => return Err(Error::NotAMember(x.to_string())),
        Err(Error::NotSequenceGenerated(_)) | Ok(_) => {}
        Err(e) => return Err(e),
    }
    let xr = x.to_rational();
    spec.atoms(Some(&xr))?.iter().map(convert).collect()
}

fn run<S: Scalar>(
    spec: &MonoidSpec,
    x: &S,
    atoms: &[S],
    limits: SearchLimits,
    completeness: Completeness,
) -> Result<QueryResult<S>> {
    let mut factorizations = Vec::new();
    if !atoms.is_empty() || x.is_zero() {
        let table = AtomTable::new(atoms);
        for m in table.combinations(x, limits)? {
            let z = Factorization::new(table.atoms().iter().cloned().zip(m))?;
            if z.value()? != *x {
                return Err(Error::VerificationFailed(format!(
                    "factorization {z} does not evaluate to {x}"
                )));
            }
            factorizations.push(z);
        }
    }
    factorizations.sort();
    factorizations.dedup();
    let lengths: BTreeSet<u64> = factorizations.iter().map(Factorization::length).collect();
    Ok(QueryResult {
        x: x.clone(),
        truncation: spec.truncation,
        completeness,
        factorizations,
        lengths: lengths.into_iter().collect(),
    })
}

fn require_max_len(spec: &MonoidSpec, max_len: Option<u64>) -> Result<()> {
    if spec.family.is_dense() {
        if spec.denominator_bound().is_none() {
            return Err(Error::UnboundedQuery(format!(
                "dense family {} requires a denominator bound",
                spec.family.name()
            )));
        }
        if max_len.is_none() {
            return Err(Error::UnboundedQuery(format!(
                "dense family {} requires a length bound",
                spec.family.name()
            )));
        }
    }
    Ok(())
}

/// Whether lengths up to `max_len` cover every factorization of `x` over
/// the explicit atoms (the longest uses only the smallest atom).
fn covers_all_lengths<S: Scalar>(atoms: &[S], x: &S, max_len: Option<u64>) -> Result<bool> {
    let (Some(m), Some(min)) = (max_len, atoms.iter().min()) else {
        return Ok(true);
    };
    Ok(arith::div(x, min)?.floor_u64().is_some_and(|bound| bound <= m))
}

/// `Z(x)` over the truncation, optionally restricted to lengths `<= max_len`.
pub fn enumerate_factorizations<S: Scalar>(spec: &MonoidSpec, x: &S, max_len: Option<u64>) -> Result<QueryResult<S>> {
    enumerate_factorizations_with(spec, x, max_len, QueryOptions::default())
}

pub fn enumerate_factorizations_with<S: Scalar>(
    spec: &MonoidSpec,
    x: &S,
    max_len: Option<u64>,
    options: QueryOptions,
) -> Result<QueryResult<S>> {
    require_max_len(spec, max_len)?;
    let atoms = prepare(spec, x)?;
    let completeness = match spec.family {
        GeneratorFamily::Explicit { .. } if covers_all_lengths(&atoms, x, max_len)? => Completeness::Complete,
        GeneratorFamily::Explicit { .. } => Completeness::CompleteForLength,
        _ => Completeness::TruncationBounded,
    };
    let limits = SearchLimits {
        max_len,
        parallel: options.parallel,
        ..Default::default()
    };
    run(spec, x, &atoms, limits, completeness)
}

/// `Z_ℓ(x)` over the truncation.
pub fn factorizations_of_length<S: Scalar>(spec: &MonoidSpec, x: &S, length: u64) -> Result<QueryResult<S>> {
    factorizations_of_length_with(spec, x, length, QueryOptions::default())
}

pub fn factorizations_of_length_with<S: Scalar>(
    spec: &MonoidSpec,
    x: &S,
    length: u64,
    options: QueryOptions,
) -> Result<QueryResult<S>> {
    if length == 0 {
        return Err(Error::InvalidArgument("length must be >= 1".into()));
    }
    require_max_len(spec, Some(length))?;
    let atoms = prepare(spec, x)?;
    let completeness = slice_completeness(spec, x, length)?;
    let limits = SearchLimits {
        exact_len: Some(length),
        parallel: options.parallel,
        ..Default::default()
    };
    run(spec, x, &atoms, limits, completeness)
}

fn slice_completeness<S: Scalar>(spec: &MonoidSpec, x: &S, length: u64) -> Result<Completeness> {
    if spec.family.is_dense() {
        return Ok(Completeness::TruncationBounded);
    }
    match completeness_certificate(spec, x, length) {
        Ok(c) if c.holds => Ok(Completeness::CompleteForLength),
        Ok(_) | Err(Error::CertificateUnavailable(_)) => Ok(Completeness::TruncationBounded),
        Err(e) => Err(e),
    }
}

/// `L(x)` restricted to lengths `<= max_len`.
///
/// The flag is the weakest completeness over every length slice explored,
/// `1..=max_len`, so an empty slice that might be filled by atoms outside
/// the truncation still downgrades the verdict.
pub fn length_set<S: Scalar>(spec: &MonoidSpec, x: &S, max_len: Option<u64>) -> Result<LengthSet> {
    length_set_with(spec, x, max_len, QueryOptions::default())
}

pub fn length_set_with<S: Scalar>(
    spec: &MonoidSpec,
    x: &S,
    max_len: Option<u64>,
    options: QueryOptions,
) -> Result<LengthSet> {
    let explicit = matches!(spec.family, GeneratorFamily::Explicit { .. });
    if !explicit && max_len.is_none() {
        return Err(Error::UnboundedQuery(format!(
            "family {} requires a length bound",
            spec.family.name()
        )));
    }
    let result = enumerate_factorizations_with(spec, x, max_len, options)?;
    let completeness = if explicit || spec.family.is_dense() {
        result.completeness
    } else {
        let mut weakest = Completeness::CompleteForLength;
        for length in 1..=max_len.unwrap_or(0) {
            weakest = weakest.weakest(slice_completeness(spec, x, length)?);
            if weakest == Completeness::TruncationBounded {
                break;
            }
        }
        weakest
    };
    Ok(LengthSet {
        lengths: result.lengths.into_iter().collect(),
        completeness,
        truncation: spec.truncation,
    })
}

/// Two factorizations are irredundant when they share no atom.
pub fn is_irredundant_pair<S: Scalar>(z1: &Factorization<S>, z2: &Factorization<S>) -> bool {
    // both supports are sorted ascending: merge-walk
    let (a, b) = (z1.parts(), z2.parts());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return false,
        }
    }
    true
}

/// A maximal pairwise-irredundant subset, chosen greedily in the canonical
/// order so the answer is deterministic. Every input factorization shares an
/// atom with some member of the output (checked before returning).
pub fn maximal_irredundant_subset<S: Scalar>(zs: &[Factorization<S>]) -> Result<Vec<Factorization<S>>> {
    let mut sorted = zs.to_vec();
    sorted.sort();
    sorted.dedup();
    if let Some(first) = sorted.first() {
        let v = first.value()?;
        for z in &sorted[1..] {
            let w = z.value()?;
            if w != v {
                return Err(Error::InvalidArgument(format!(
                    "factorizations of different elements: {v} and {w}"
                )));
            }
        }
    }
    let mut chosen: Vec<Factorization<S>> = Vec::new();
    for z in &sorted {
        if chosen.iter().all(|c| is_irredundant_pair(c, z)) {
            chosen.push(z.clone());
        }
    }
    let maximal = sorted
        .iter()
        .all(|z| chosen.iter().any(|c| c == z || !is_irredundant_pair(c, z)));
    if !maximal {
        return Err(Error::VerificationFailed("irredundant subset is not maximal".into()));
    }
    Ok(chosen)
}

/// `true` iff `z` uses only atoms of `spec` present in its truncation.
pub fn uses_truncation_atoms(spec: &MonoidSpec, z: &Factorization<Rational>) -> Result<bool> {
    let value = z.value()?;
    let atoms = spec.atoms(Some(&value))?;
    Ok(z.support().all(|a| atoms.binary_search(a).is_ok()))
}
