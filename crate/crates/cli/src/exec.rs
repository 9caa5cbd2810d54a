//! Runs a resolved [`Query`] against the library.

use posmon_core::checkers::{self, Certificate};
use posmon_core::factorization::{self, QueryOptions};
use posmon_core::semiring::{self, GenPoly};
use posmon_core::sequence;
use posmon_core::{Error, MonoidSpec, Rational};

use crate::report::{Outcome, Poly, PolyStats, Query};

fn parse(spec: &MonoidSpec, text: &str) -> Result<GenPoly, Error> {
    GenPoly::parse(text, spec)
}

fn certificate(c: Certificate) -> Outcome {
    Outcome::Certificate(c)
}

pub fn execute(query: &Query, parallel: bool) -> Result<Outcome, Error> {
    let options = QueryOptions { parallel };
    Ok(match query {
        Query::Factorize {
            monoid,
            x,
            length,
            max_len,
        } => {
            let r = match length {
                Some(l) => factorization::factorizations_of_length_with(monoid, x, *l, options)?,
                None => factorization::enumerate_factorizations_with(monoid, x, *max_len, options)?,
            };
            Outcome::Factorizations {
                truncation: r.truncation,
                completeness: r.completeness,
                factorizations: r.factorizations,
                lengths: r.lengths,
            }
        }
        Query::Lengths { monoid, x, max_len } => {
            Outcome::Lengths(factorization::length_set_with(monoid, x, *max_len, options)?)
        }
        Query::Atoms { monoid, upper } => {
            let sequence_family =
                !monoid.family.is_dense() && !matches!(monoid.family, posmon_core::GeneratorFamily::Explicit { .. });
            let certified = match (monoid.index_bound(), upper) {
                (Some(k), None) if sequence_family => Some(monoid.certified_atoms(k)?),
                _ => None,
            };
            match certified {
                Some(c) => Outcome::Atoms {
                    truncation: monoid.truncation,
                    method: c.method,
                    atoms: c.atoms,
                    certificates: c.certificates,
                },
                None => Outcome::Atoms {
                    truncation: monoid.truncation,
                    method: if monoid.family.is_dense() {
                        posmon_core::AtomMethod::ClosedForm
                    } else {
                        posmon_core::AtomMethod::BoundedSearch
                    },
                    atoms: monoid.atoms(upper.as_ref())?,
                    certificates: Vec::new(),
                },
            }
        }
        Query::Contains { monoid, x } => {
            let membership = monoid.contains(x)?;
            let atom = if membership.member {
                Some(monoid.is_atom(x)?.atom)
            } else {
                None
            };
            Outcome::Membership { membership, atom }
        }
        Query::CheckAccp { family, n_max } => certificate(checkers::accp_chain(family, *n_max)?),
        Query::CheckBf { max_prime } => certificate(checkers::bf_violation_unit_fractions(*max_prime)?),
        Query::CheckLff { target, max_den } => certificate(checkers::lff_violation(target, *max_den)?),
        Query::CheckFfmBound { x, primes } => certificate(checkers::ffm_divisor_bound_alternating(x, primes)?),
        Query::CheckClassify { family } => certificate(checkers::classify(family)?),
        Query::SemiringMul { monoid, f, g } => {
            let product = semiring::gp_mul(&parse(monoid, f)?, &parse(monoid, g)?)?;
            let stats = semiring::gp_stats(&product).ok().map(|s| PolyStats {
                degree: s.degree,
                leading_coefficient: s.leading_coefficient.to_string(),
                order: s.order,
                eval_at_one: s.eval_at_one.to_string(),
            });
            Outcome::Product {
                product: Poly::from(&product),
                stats,
            }
        }
        Query::SemiringDiv { monoid, f, g } => {
            let q = semiring::gp_divide(&parse(monoid, f)?, &parse(monoid, g)?)?;
            Outcome::Quotient {
                quotient: q.as_ref().map(Poly::from),
            }
        }
        Query::SemiringIrreducible { monoid, f, budget } => {
            let r = semiring::is_irreducible_gp_with_budget(&parse(monoid, f)?, *budget)?;
            Outcome::Irreducibility {
                irreducible: r.irreducible,
                divisor: r.divisor.as_ref().map(Poly::from),
                cofactor: r.cofactor.as_ref().map(Poly::from),
                candidates_tested: r.candidates_tested,
            }
        }
        Query::SemiringFactor { monoid, f, max_len } => {
            let r = semiring::factor_gp(&parse(monoid, f)?, *max_len)?;
            Outcome::PolyFactorizations {
                factorizations: r
                    .factorizations
                    .iter()
                    .map(|z| z.iter().map(Poly::from).collect())
                    .collect(),
                lengths: r.lengths,
            }
        }
        Query::SemiringEval { monoid, f, digits } => Outcome::Exponential {
            digits: *digits,
            value: semiring::eval_exponential(&parse(monoid, f)?, *digits)?,
        },
        Query::SeqLis { terms } => Outcome::Subsequence(sequence::longest_strictly_increasing(terms)),
        Query::SeqLwd { terms } => Outcome::Subsequence(sequence::longest_weakly_decreasing(terms)),
        Query::SeqMonotone { terms, r, t } => Outcome::Monotone {
            witness: sequence::monotone_subsequence::<Rational>(terms, *r, *t)?,
        },
        Query::SeqSum { sequences } => Outcome::Sum {
            terms: sequence::componentwise_sum(sequences)?,
        },
        Query::PaperExamples => {
            let examples = checkers::paper_examples()?;
            Outcome::Battery {
                all_verified: examples.iter().all(|e| e.certificate.verified),
                examples,
            }
        }
    })
}
