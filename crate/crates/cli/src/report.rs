//! The resolved query and the JSON report it produces. Both round-trip
//! through serde without loss; every rational is an exact `"num/den"` string.

use std::collections::BTreeSet;

use posmon_core::checkers::{Certificate, Example, LffTarget};
use posmon_core::factorization::{Completeness, Factorization, LengthSet};
use posmon_core::monoid::{AtomMethod, GeneratorFamily, Membership, MonoidSpec, PAdicCertificate};
use posmon_core::semiring::GenPoly;
use posmon_core::sequence::{FiniteSeq, MonotoneWitness, Subsequence};
use posmon_core::{PrimeSequence, Rational, Truncation};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "posmon-report/1";

/// A fully resolved, validated request. Its canonical JSON is the cache key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Query {
    Factorize {
        monoid: MonoidSpec,
        #[serde(with = "posmon_core::serde_exact")]
        x: Rational,
        length: Option<u64>,
        max_len: Option<u64>,
    },
    Lengths {
        monoid: MonoidSpec,
        #[serde(with = "posmon_core::serde_exact")]
        x: Rational,
        max_len: Option<u64>,
    },
    Atoms {
        monoid: MonoidSpec,
        #[serde(with = "posmon_core::serde_exact::option")]
        upper: Option<Rational>,
    },
    Contains {
        monoid: MonoidSpec,
        #[serde(with = "posmon_core::serde_exact")]
        x: Rational,
    },
    CheckAccp {
        family: GeneratorFamily,
        n_max: u64,
    },
    CheckBf {
        max_prime: u64,
    },
    CheckLff {
        target: LffTarget,
        max_den: u64,
    },
    CheckFfmBound {
        #[serde(with = "posmon_core::serde_exact")]
        x: Rational,
        primes: PrimeSequence,
    },
    CheckClassify {
        family: GeneratorFamily,
    },
    SemiringMul {
        monoid: MonoidSpec,
        f: String,
        g: String,
    },
    SemiringDiv {
        monoid: MonoidSpec,
        f: String,
        g: String,
    },
    SemiringIrreducible {
        monoid: MonoidSpec,
        f: String,
        budget: u64,
    },
    SemiringFactor {
        monoid: MonoidSpec,
        f: String,
        max_len: u64,
    },
    SemiringEval {
        monoid: MonoidSpec,
        f: String,
        digits: u32,
    },
    SeqLis {
        terms: FiniteSeq<Rational>,
    },
    SeqLwd {
        terms: FiniteSeq<Rational>,
    },
    SeqMonotone {
        terms: FiniteSeq<Rational>,
        r: usize,
        t: usize,
    },
    SeqSum {
        sequences: Vec<FiniteSeq<Rational>>,
    },
    PaperExamples,
}

/// A polynomial as display text plus `[exponent, coefficient]` pairs by
/// descending exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub text: String,
    pub terms: Vec<(String, String)>,
}

impl From<&GenPoly> for Poly {
    fn from(p: &GenPoly) -> Self {
        Poly {
            text: p.to_string(),
            terms: p.term_strings(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyStats {
    #[serde(with = "posmon_core::serde_exact")]
    pub degree: Rational,
    pub leading_coefficient: String,
    #[serde(with = "posmon_core::serde_exact")]
    pub order: Rational,
    pub eval_at_one: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Factorizations {
        truncation: Truncation,
        completeness: Completeness,
        factorizations: Vec<Factorization<Rational>>,
        lengths: Vec<u64>,
    },
    Lengths(LengthSet),
    Atoms {
        truncation: Truncation,
        method: AtomMethod,
        #[serde(with = "posmon_core::serde_exact::vec")]
        atoms: Vec<Rational>,
        certificates: Vec<PAdicCertificate>,
    },
    Membership {
        membership: Membership<Rational>,
        /// Atom verdict, present for members.
        atom: Option<bool>,
    },
    Certificate(Certificate),
    Product {
        product: Poly,
        stats: Option<PolyStats>,
    },
    Quotient {
        quotient: Option<Poly>,
    },
    Irreducibility {
        irreducible: bool,
        divisor: Option<Poly>,
        cofactor: Option<Poly>,
        candidates_tested: u64,
    },
    PolyFactorizations {
        factorizations: Vec<Vec<Poly>>,
        lengths: BTreeSet<u64>,
    },
    Exponential {
        digits: u32,
        value: String,
    },
    Subsequence(Subsequence<Rational>),
    Monotone {
        witness: MonotoneWitness<Rational>,
    },
    Sum {
        terms: FiniteSeq<Rational>,
    },
    Battery {
        all_verified: bool,
        examples: Vec<Example>,
    },
}

impl Outcome {
    /// Re-checks every certificate in the outcome from its witness data.
    pub fn verification_failures(&self) -> Vec<String> {
        match self {
            Outcome::Certificate(c) if !(c.verified && c.reverify()) => {
                vec![format!("{} certificate for {}", c.claim, c.family.name())]
            }
            Outcome::Battery { examples, .. } => examples
                .iter()
                .filter(|e| !(e.certificate.verified && e.certificate.reverify()))
                .map(|e| e.name.clone())
                .collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub query: Query,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl Report {
    pub fn new(query: Query, outcome: Outcome) -> Self {
        Report {
            schema: SCHEMA.into(),
            query,
            outcome,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
