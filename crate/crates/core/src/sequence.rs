//! Monotone-subsequence diagnostics on finite sequences of exact scalars.

use serde::{Deserialize, Serialize};

use crate::arith::{self, parse_rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent, bound = "")]
pub struct FiniteSeq<S: Scalar> {
    #[serde(with = "crate::serde_exact::vec")]
    pub terms: Vec<S>,
}

impl<S: Scalar> FiniteSeq<S> {
    pub fn new(terms: Vec<S>) -> Self {
        FiniteSeq { terms }
    }

    /// One rational per line; blank lines and `#` comments are skipped.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            terms.push(parse_rational(line).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?);
        }
        Ok(FiniteSeq { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> From<Vec<S>> for FiniteSeq<S> {
    fn from(terms: Vec<S>) -> Self {
        FiniteSeq { terms }
    }
}

/// A subsequence: 0-based positions and the terms found there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Subsequence<S: Scalar> {
    pub indices: Vec<usize>,
    #[serde(with = "crate::serde_exact::vec")]
    pub values: Vec<S>,
}

impl<S: Scalar> Subsequence<S> {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Whether this really is a subsequence of `s` related by `rel` between
    /// consecutive terms.
    pub fn verify(&self, s: &FiniteSeq<S>, rel: impl Fn(&S, &S) -> bool) -> bool {
        self.indices.len() == self.values.len()
            && self.indices.windows(2).all(|w| w[0] < w[1])
            && self
                .indices
                .iter()
                .zip(&self.values)
                .all(|(&i, v)| s.terms.get(i) == Some(v))
            && self.values.windows(2).all(|w| rel(&w[0], &w[1]))
    }

    fn truncate(mut self, n: usize) -> Self {
        self.indices.truncate(n);
        self.values.truncate(n);
        self
    }
}

/// Longest subsequence whose consecutive terms satisfy `rel`, choosing the
/// lexicographically smallest index tuple among the longest ones.
fn longest_by<S: Scalar>(s: &FiniteSeq<S>, rel: impl Fn(&S, &S) -> bool) -> Subsequence<S> {
    let t = &s.terms;
    let n = t.len();
    // best[i]: longest chain starting at i
    let mut best = vec![1usize; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if rel(&t[i], &t[j]) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    let Some(&top) = best.iter().max() else {
        return Subsequence {
            indices: Vec::new(),
            values: Vec::new(),
        };
    };
    let mut indices = Vec::with_capacity(top);
    let mut cur = (0..n).find(|&i| best[i] == top).expect("maximum attained");
    indices.push(cur);
    while best[cur] > 1 {
        cur = (cur + 1..n)
            .find(|&j| rel(&t[cur], &t[j]) && best[j] == best[cur] - 1)
            .expect("chain continues");
        indices.push(cur);
    }
    let values = indices.iter().map(|&i| t[i].clone()).collect();
    Subsequence { indices, values }
}

pub fn longest_strictly_increasing<S: Scalar>(s: &FiniteSeq<S>) -> Subsequence<S> {
    longest_by(s, |a, b| a < b)
}

pub fn longest_weakly_decreasing<S: Scalar>(s: &FiniteSeq<S>) -> Subsequence<S> {
    longest_by(s, |a, b| a >= b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", bound = "")]
pub enum MonotoneWitness<S: Scalar> {
    StrictlyIncreasing(Subsequence<S>),
    WeaklyDecreasing(Subsequence<S>),
}

impl<S: Scalar> MonotoneWitness<S> {
    pub fn subsequence(&self) -> &Subsequence<S> {
        match self {
            MonotoneWitness::StrictlyIncreasing(w) | MonotoneWitness::WeaklyDecreasing(w) => w,
        }
    }
}

/// A strictly increasing subsequence of length `r` or a weakly decreasing one
/// of length `t`; one of them exists once `len(s) > (r-1)(t-1)`. The weakly
/// decreasing alternative is reported when both exist.
pub fn monotone_subsequence<S: Scalar>(s: &FiniteSeq<S>, r: usize, t: usize) -> Result<MonotoneWitness<S>> {
    if r == 0 || t == 0 {
        return Err(Error::InvalidArgument("r and t must be >= 1".into()));
    }
    let bound = (r - 1)
        .checked_mul(t - 1)
        .ok_or_else(|| Error::InvalidArgument("r and t too large".into()))?;
    if s.len() <= bound {
        return Err(Error::BoundTooSmall(format!(
            "sequence length {} does not exceed (r-1)(t-1) = {bound}",
            s.len()
        )));
    }
    let down = longest_weakly_decreasing(s);
    if down.len() >= t {
        return Ok(MonotoneWitness::WeaklyDecreasing(down.truncate(t)));
    }
    let up = longest_strictly_increasing(s);
    if up.len() >= r {
        return Ok(MonotoneWitness::StrictlyIncreasing(up.truncate(r)));
    }
    Err(Error::VerificationFailed(format!(
        "no monotone subsequence of the guaranteed length (longest increasing {}, longest weakly decreasing {})",
        up.len(),
        down.len()
    )))
}

/// Termwise sum of equally long sequences.
pub fn componentwise_sum<S: Scalar>(ss: &[FiniteSeq<S>]) -> Result<FiniteSeq<S>> {
    let Some(first) = ss.first() else {
        return Err(Error::InvalidArgument("no sequences to sum".into()));
    };
    if let Some(bad) = ss.iter().find(|s| s.len() != first.len()) {
        return Err(Error::InvalidArgument(format!(
            "ragged input: lengths {} and {}",
            first.len(),
            bad.len()
        )));
    }
    let mut terms = first.terms.clone();
    for s in &ss[1..] {
        for (acc, x) in terms.iter_mut().zip(&s.terms) {
            *acc = arith::add(acc, x)?;
        }
    }
    Ok(FiniteSeq { terms })
}
