//! Depth-first enumeration of nonnegative integer combinations
//! `target = Σ c_i * atom_i` over a finite atom set.
//!
//! Atoms are visited in descending order and multiplicities largest first.
//! Branches are cut when
//! - the remaining value exceeds `remaining_length * current_atom`,
//! - an exact length is requested and the remaining value is below
//!   `remaining_length * smallest_atom`,
//! - the denominator congruence of the current atom against the atoms still
//!   to come has no solution (see [`MultiplicityCongruence`]); otherwise only
//!   multiplicities in its residue class are tried.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{self, MultiplicityCongruence, Residue, Scalar};
use crate::error::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    /// Only combinations with total multiplicity at most this.
    pub max_len: Option<u64>,
    /// Only combinations with total multiplicity exactly this.
    pub exact_len: Option<u64>,
    /// Stop after the first combination.
    pub first_only: bool,
    /// Split the first branching level across the rayon pool.
    pub parallel: bool,
}

impl SearchLimits {
    fn cap(&self) -> Option<u64> {
        match (self.exact_len, self.max_len) {
            (Some(e), Some(m)) => Some(e.min(m)),
            (Some(e), None) => Some(e),
            (None, m) => m,
        }
    }
}

/// A finite, strictly positive, duplicate-free atom set prepared for search.
#[derive(Debug, Clone)]
pub struct AtomTable<S> {
    atoms: Vec<S>,
    congruences: Vec<MultiplicityCongruence>,
}

impl<S: Scalar> AtomTable<S> {
    /// Builds the table; `atoms` may come in any order.
    pub fn new(atoms: &[S]) -> Self {
        let mut atoms: Vec<S> = atoms.to_vec();
        atoms.sort_by(|a, b| b.cmp(a));
        atoms.dedup();
        debug_assert!(atoms.iter().all(|a| a.is_positive()));
        let rationals: Vec<BigRational> = atoms.iter().map(Scalar::to_rational).collect();
        let mut congruences = vec![MultiplicityCongruence::new(&BigRational::one(), &BigInt::one()); atoms.len()];
        let mut rest = BigInt::one();
        for i in (0..atoms.len()).rev() {
            congruences[i] = MultiplicityCongruence::new(&rationals[i], &rest);
            rest = rest.lcm(rationals[i].denom());
        }
        AtomTable { atoms, congruences }
    }

    /// Atoms in descending order; multiplicity vectors follow this order.
    pub fn atoms(&self) -> &[S] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// All multiplicity vectors (aligned with [`AtomTable::atoms`]) that
    /// combine to `target` within `limits`, in search order.
    pub fn combinations(&self, target: &S, limits: SearchLimits) -> Result<Vec<Vec<u64>>> {
        if target.is_negative() {
            return Ok(Vec::new());
        }
        let search = Search {
            table: self,
            limits,
            cap: limits.cap(),
        };
        if limits.parallel && !limits.first_only && self.atoms.len() > 1 {
            return search.run_parallel(target);
        }
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(self.atoms.len());
        search.node(0, target.clone(), 0, &mut stack, &mut out)?;
        Ok(out)
    }
}

struct Search<'a, S> {
    table: &'a AtomTable<S>,
    limits: SearchLimits,
    cap: Option<u64>,
}

impl<S: Scalar> Search<'_, S> {
    fn atoms(&self) -> &[S] {
        &self.table.atoms
    }

    fn emit(&self, stack: &[u64], extra: Option<(usize, u64)>, out: &mut Vec<Vec<u64>>) {
        let mut v = stack.to_vec();
        v.resize(self.atoms().len(), 0);
        if let Some((j, c)) = extra {
            v[j] = c;
        }
        out.push(v);
    }

    fn done(&self, out: &[Vec<u64>]) -> bool {
        self.limits.first_only && !out.is_empty()
    }

    /// Admissible multiplicities for atom `i`, largest first.
    fn choices(&self, i: usize, remaining: &S, used: u64) -> Result<Option<(Vec<u64>, Residue)>> {
        let atom = &self.atoms()[i];
        let rem_len = self.cap.map(|c| c - used);
        let Some(residue) = self.table.congruences[i].residue(&remaining.to_rational()) else {
            return Ok(None);
        };
        let mut cmax = arith::div(remaining, atom)?
            .floor_u64()
            .ok_or(crate::Error::Overflow(S::NAME))?;
        if let Some(r) = rem_len {
            cmax = cmax.min(r);
        }
        let step = residue.step();
        let mut cs = Vec::new();
        let mut c = residue.largest_at_most(cmax);
        while let Some(v) = c {
            cs.push(v);
            c = v.checked_sub(step);
        }
        Ok(Some((cs, residue)))
    }

    fn node(&self, i: usize, remaining: S, used: u64, stack: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) -> Result<()> {
        if remaining.is_zero() {
            if self.limits.exact_len.is_none_or(|l| used == l) {
                self.emit(stack, None, out);
            }
            return Ok(());
        }
        let n = self.atoms().len();
        if i == n {
            return Ok(());
        }
        let rem_len = self.cap.map(|c| c - used);
        if rem_len == Some(0) {
            return Ok(());
        }
        let atom = &self.atoms()[i];
        if let Some(r) = rem_len {
            if remaining > arith::scale(atom, r)? {
                return Ok(());
            }
        }
        if let (Some(_), Some(r)) = (self.limits.exact_len, rem_len) {
            if remaining < arith::scale(&self.atoms()[n - 1], r)? {
                return Ok(());
            }
        }
        if rem_len == Some(1) {
            // the remainder must itself be one of the atoms still available
            if let Ok(pos) = self.atoms()[i..].binary_search_by(|a| remaining.cmp(a)) {
                if self.limits.exact_len.is_none_or(|l| used + 1 == l) {
                    self.emit(stack, Some((i + pos, 1)), out);
                }
            }
            return Ok(());
        }
        if i == n - 1 {
            let c = arith::div(&remaining, atom)?;
            if !c.is_integral() {
                return Ok(());
            }
            let c = c.floor_u64().ok_or(crate::Error::Overflow(S::NAME))?;
            if rem_len.is_some_and(|r| c > r) {
                return Ok(());
            }
            if self.limits.exact_len.is_none_or(|l| used + c == l) {
                self.emit(stack, Some((i, c)), out);
            }
            return Ok(());
        }
        let Some((cs, _)) = self.choices(i, &remaining, used)? else {
            return Ok(());
        };
        for c in cs {
            let next = arith::sub(&remaining, &arith::scale(atom, c)?)?;
            stack.push(c);
            self.node(i + 1, next, used + c, stack, out)?;
            stack.pop();
            if self.done(out) {
                break;
            }
        }
        Ok(())
    }

    fn run_parallel(&self, target: &S) -> Result<Vec<Vec<u64>>> {
        let atom = &self.atoms()[0];
        let Some((cs, _)) = self.choices(0, target, 0)? else {
            return Ok(Vec::new());
        };
        let parts: Result<Vec<Vec<Vec<u64>>>> = cs
            .par_iter()
            .map(|&c| {
                let mut out = Vec::new();
                let mut stack = vec![c];
                let next = arith::sub(target, &arith::scale(atom, c)?)?;
                self.node(1, next, c, &mut stack, &mut out)?;
                Ok(out)
            })
            .collect();
        Ok(parts?.into_iter().flatten().collect())
    }
}

/// Value of a multiplicity vector against `atoms`.
pub fn combine<S: Scalar>(atoms: &[S], mults: &[u64]) -> Result<S> {
    let mut acc = S::zero();
    for (a, &c) in atoms.iter().zip(mults) {
        if c > 0 {
            acc = arith::add(&acc, &arith::scale(a, c)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use num_rational::Ratio;

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn two_three_six() {
        let t = AtomTable::new(&ints(&[2, 3]));
        let mut got = t.combinations(&int(6), SearchLimits::default()).unwrap();
        got.sort();
        // atoms descending: [3, 2]
        assert_eq!(got, vec![vec![0, 3], vec![2, 0]]);
    }

    #[test]
    fn exact_length_slices() {
        let t = AtomTable::new(&ints(&[2, 3]));
        let lim = SearchLimits {
            exact_len: Some(2),
            ..Default::default()
        };
        assert!(t.combinations(&int(7), lim).unwrap().is_empty());
        let lim = SearchLimits {
            exact_len: Some(3),
            ..Default::default()
        };
        assert_eq!(t.combinations(&int(7), lim).unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn grams_truncation() {
        let t = AtomTable::new(&[rat(1, 3), rat(1, 10), rat(1, 28)]);
        let got = t.combinations(&rat(13, 30), SearchLimits::default()).unwrap();
        assert_eq!(got, vec![vec![1, 1, 0]]);
    }

    #[test]
    fn zero_target_is_the_empty_combination() {
        let t = AtomTable::new(&ints(&[2, 3]));
        assert_eq!(
            t.combinations(&int(0), SearchLimits::default()).unwrap(),
            vec![vec![0, 0]]
        );
        let lim = SearchLimits {
            exact_len: Some(1),
            ..Default::default()
        };
        assert!(t.combinations(&int(0), lim).unwrap().is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let t = AtomTable::new(&ints(&[3, 5, 7, 11]));
        let mut seq = t.combinations(&int(60), SearchLimits::default()).unwrap();
        let mut par = t
            .combinations(
                &int(60),
                SearchLimits {
                    parallel: true,
                    ..Default::default()
                },
            )
            .unwrap();
        seq.sort();
        par.sort();
        assert_eq!(seq, par);
    }

    #[test]
    fn small_scalar_agrees() {
        let big = AtomTable::new(&[rat(1, 2), rat(1, 3), rat(1, 5)]);
        let small: AtomTable<Ratio<i64>> = AtomTable::new(&[Ratio::new(1, 2), Ratio::new(1, 3), Ratio::new(1, 5)]);
        let a = big.combinations(&int(2), SearchLimits::default()).unwrap();
        let b = small
            .combinations(&Ratio::from_integer(2), SearchLimits::default())
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn first_only_stops() {
        let t = AtomTable::new(&ints(&[1, 2, 3]));
        let lim = SearchLimits {
            first_only: true,
            ..Default::default()
        };
        let got = t.combinations(&int(30), lim).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(combine(t.atoms(), &got[0]).unwrap(), int(30));
    }
}
