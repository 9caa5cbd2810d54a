//! Naive reference implementations used as test oracles. None of them
//! touches the library's search, pruning or closed-form code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use posmon_core::Rational;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_below_or_at(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| trial_division_prime(p)).collect()
}

/// All multiplicity vectors `c` with `Σ c_i a_i = x`, by plain nested
/// counting over integers after clearing denominators.
pub fn brute_force_factorizations(atoms: &[Rational], x: &Rational) -> BTreeSet<Vec<(Rational, u64)>> {
    let lcm = atoms
        .iter()
        .chain(std::iter::once(x))
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let scale = |a: &Rational| (a * Rational::from_integer(lcm.clone())).to_integer().to_u64().unwrap();
    let ints: Vec<u64> = atoms.iter().map(scale).collect();
    let target = scale(x);
    let mut out = BTreeSet::new();
    let mut counts = vec![0u64; ints.len()];
    fn go(i: usize, rest: u64, ints: &[u64], counts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == ints.len() {
            if rest == 0 {
                out.push(counts.clone());
            }
            return;
        }
        for c in 0..=rest / ints[i] {
            counts[i] = c;
            go(i + 1, rest - c * ints[i], ints, counts, out);
        }
        counts[i] = 0;
    }
    let mut raw = Vec::new();
    go(0, target, &ints, &mut counts, &mut raw);
    for c in raw {
        let mut z: Vec<(Rational, u64)> = atoms.iter().cloned().zip(c).filter(|(_, m)| *m > 0).collect();
        z.sort();
        out.insert(z);
    }
    out
}

/// Atoms of the monoid generated by positive `gens`: generators that are not
/// a sum of two or more other nonzero elements.
pub fn brute_force_atoms(gens: &[Rational]) -> Vec<Rational> {
    let mut distinct: Vec<Rational> = gens.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    distinct.sort();
    distinct
        .iter()
        .filter(|g| {
            let smaller: Vec<Rational> = distinct.iter().filter(|h| h < g).cloned().collect();
            brute_force_factorizations(&smaller, g).is_empty()
        })
        .cloned()
        .collect()
}

pub fn naive_valuation(x: &Rational, p: u64) -> i64 {
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let p = BigInt::from(p);
        let mut v = 0;
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    count(x.numer()) - count(x.denom())
}

/// Polynomial product by the schoolbook double loop on `exponent → coefficient` maps.
pub fn naive_product(f: &BTreeMap<Rational, u64>, g: &BTreeMap<Rational, u64>) -> BTreeMap<Rational, u64> {
    let mut out = BTreeMap::new();
    for (a, c) in f {
        for (b, d) in g {
            *out.entry(a + b).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Longest strictly increasing subsequence length by trying every subset.
pub fn exhaustive_lis_len(s: &[Rational]) -> usize {
    exhaustive_len(s, |a, b| a < b)
}

pub fn exhaustive_lwd_len(s: &[Rational]) -> usize {
    exhaustive_len(s, |a, b| a >= b)
}

fn exhaustive_len(s: &[Rational], rel: impl Fn(&Rational, &Rational) -> bool) -> usize {
    assert!(s.len() <= 16, "exhaustive oracle is exponential");
    (0u32..1 << s.len())
        .filter(|mask| {
            let picked: Vec<&Rational> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| &s[i]).collect();
            picked.windows(2).all(|w| rel(w[0], w[1]))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
