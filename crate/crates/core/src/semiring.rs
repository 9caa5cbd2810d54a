//! The monoid semiring `N_0[M]`: finite sums `Σ c_i x^{m_i}` with positive
//! integer coefficients and exponents in a positive monoid `M`.
//!
//! Because `{e^m : m ∈ M}` is linearly independent over the rationals, the
//! exponential semiring `E(M)` is `N_0[M]` with `x = e`; everything here is
//! exact, and [`eval_exponential`] is only a display helper.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, parse_rational};
use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::Rational;

/// A generalized polynomial over an exponent monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenPoly {
    terms: BTreeMap<Rational, BigUint>,
    spec: MonoidSpec,
}

impl GenPoly {
    /// Builds a polynomial, merging repeated exponents, dropping zero
    /// coefficients and checking every exponent is a member of `spec`.
    pub fn new(spec: &MonoidSpec, terms: impl IntoIterator<Item = (Rational, BigUint)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, BigUint> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            *map.entry(e).or_default() += c;
        }
        for e in map.keys() {
            if !spec.contains(e)?.member {
                return Err(Error::NotAMember(format!("exponent {e}")));
            }
        }
        Ok(GenPoly {
            terms: map,
            spec: spec.clone(),
        })
    }

    fn raw(spec: &MonoidSpec, terms: BTreeMap<Rational, BigUint>) -> Self {
        GenPoly {
            terms,
            spec: spec.clone(),
        }
    }

    pub fn zero(spec: &MonoidSpec) -> Self {
        Self::raw(spec, BTreeMap::new())
    }

    pub fn one(spec: &MonoidSpec) -> Self {
        Self::monomial_unchecked(spec, Rational::zero(), BigUint::one())
    }

    fn monomial_unchecked(spec: &MonoidSpec, e: Rational, c: BigUint) -> Self {
        Self::raw(spec, BTreeMap::from([(e, c)]))
    }

    /// `c x^e`, with `e` checked against the exponent monoid.
    pub fn monomial(spec: &MonoidSpec, e: Rational, c: u64) -> Result<Self> {
        Self::new(spec, [(e, BigUint::from(c))])
    }

    /// Parses `3*x^(5/2) + x^(2/3) + 1`; `x^n`, `x`, `c*x`, and bare
    /// integers are accepted as terms, and `0` is the zero polynomial.
    pub fn parse(text: &str, spec: &MonoidSpec) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if text == "0" {
            return Ok(Self::zero(spec));
        }
        let mut terms = Vec::new();
        for raw in split_terms(text)? {
            terms.push(parse_term(&raw)?);
        }
        Self::new(spec, terms)
    }

    pub fn spec(&self) -> &MonoidSpec {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Rational, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: &Rational) -> BigUint {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Result<&Rational> {
        self.terms.keys().next_back().ok_or(Error::UndefinedDegree)
    }

    pub fn order(&self) -> Result<&Rational> {
        self.terms.keys().next().ok_or(Error::UndefinedDegree)
    }

    pub fn leading_coefficient(&self) -> Result<&BigUint> {
        self.terms.values().next_back().ok_or(Error::UndefinedDegree)
    }

    /// Value at `x = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// The exponent set `S_E`.
    pub fn exponent_set(&self) -> BTreeSet<Rational> {
        self.terms.keys().cloned().collect()
    }

    /// Terms by descending exponent, as `(exponent, coefficient)` strings.
    pub fn term_strings(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    }
}

impl Ord for GenPoly {
    /// Canonical order: degree, then leading coefficient, then the term
    /// list by descending exponent. The zero polynomial comes first.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &GenPoly| p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()));
        key(self)
            .cmp(&key(other))
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl PartialOrd for GenPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = if e.is_zero() {
                None
            } else if e.is_one() {
                Some("x".to_string())
            } else if e.is_integer() {
                Some(format!("x^{e}"))
            } else {
                Some(format!("x^({e})"))
            };
            match (power, c.is_one()) {
                (None, _) => write!(f, "{c}")?,
                (Some(p), true) => f.write_str(&p)?,
                (Some(p), false) => write!(f, "{c}*{p}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for GenPoly {
    /// Written as a list of `[exponent, coefficient]` string pairs by
    /// descending exponent.
    fn serialize<Z: serde::Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.term_strings().serialize(ser)
    }
}

fn split_terms(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in `{text}`")));
        }
        if ch == '+' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{text}`")));
    }
    out.push(cur);
    if out.iter().any(String::is_empty) {
        return Err(Error::Parse(format!("empty term in `{text}`")));
    }
    Ok(out)
}

fn parse_coefficient(s: &str) -> Result<BigUint> {
    s.parse::<BigUint>()
        .map_err(|_| Error::Parse(format!("`{s}` is not a nonnegative integer coefficient")))
}

fn parse_term(term: &str) -> Result<(Rational, BigUint)> {
    let (coef, power) = match term.split_once('*') {
        Some((c, p)) => (Some(c), Some(p)),
        None if term.starts_with('x') => (None, Some(term)),
        None => (Some(term), None),
    };
    let coef = coef.map(parse_coefficient).transpose()?.unwrap_or_else(BigUint::one);
    let exponent = match power {
        None => Rational::zero(),
        Some("x") => Rational::one(),
        Some(p) => {
            let e = p
                .strip_prefix("x^")
                .ok_or_else(|| Error::Parse(format!("`{term}` is not of the form c*x^e")))?;
            let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
            let e: Rational = parse_rational(e)?;
            if e.is_negative() {
                return Err(Error::Parse(format!("negative exponent in `{term}`")));
            }
            e
        }
    };
    Ok((exponent, coef))
}

fn same_spec(f: &GenPoly, g: &GenPoly) -> Result<()> {
    if f.spec != g.spec {
        return Err(Error::InvalidArgument(
            "polynomials over different exponent monoids".into(),
        ));
    }
    Ok(())
}

pub fn gp_add(f: &GenPoly, g: &GenPoly) -> Result<GenPoly> {
    same_spec(f, g)?;
    let mut terms = f.terms.clone();
    for (e, c) in &g.terms {
        *terms.entry(e.clone()).or_default() += c;
    }
    Ok(GenPoly::raw(&f.spec, terms))
}

pub fn gp_mul(f: &GenPoly, g: &GenPoly) -> Result<GenPoly> {
    same_spec(f, g)?;
    let mut terms: BTreeMap<Rational, BigUint> = BTreeMap::new();
    for (e1, c1) in &f.terms {
        for (e2, c2) in &g.terms {
            *terms.entry(e1 + e2).or_default() += c1 * c2;
        }
    }
    Ok(GenPoly::raw(&f.spec, terms))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpStats {
    #[serde(with = "crate::serde_exact")]
    pub degree: Rational,
    #[serde(serialize_with = "as_string")]
    pub leading_coefficient: BigUint,
    #[serde(with = "crate::serde_exact")]
    pub order: Rational,
    #[serde(serialize_with = "set_as_strings")]
    pub exponent_set: BTreeSet<Rational>,
    #[serde(serialize_with = "as_string")]
    pub eval_at_one: BigUint,
}

fn as_string<Z: serde::Serializer>(c: &BigUint, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
    ser.serialize_str(&c.to_string())
}

fn set_as_strings<Z: serde::Serializer>(s: &BTreeSet<Rational>, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
    ser.collect_seq(s.iter().map(|e| e.to_string()))
}

pub fn gp_stats(f: &GenPoly) -> Result<GpStats> {
    Ok(GpStats {
        degree: f.degree()?.clone(),
        leading_coefficient: f.leading_coefficient()?.clone(),
        order: f.order()?.clone(),
        exponent_set: f.exponent_set(),
        eval_at_one: f.eval_at_one(),
    })
}

const GUARD_DIGITS: u32 = 12;

/// `Σ c_i e^{m_i}` rounded to `digits` significant decimal digits.
pub fn eval_exponential(f: &GenPoly, digits: u32) -> Result<String> {
    if digits == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1 digit".into()));
    }
    if f.is_zero() {
        return Ok("0".into());
    }
    // every term is >= 1, so absolute error 10^-(digits + guard) is ample
    let work = digits + GUARD_DIGITS;
    let scale = BigInt::from(10u32).pow(work);
    let mut total = BigInt::zero();
    for (e, c) in &f.terms {
        total += exp_fixed(e, &scale) * BigInt::from(c.clone());
    }
    Ok(format_significant(&total, work, digits))
}

/// `floor(e^m * scale)` up to a few units, by the Taylor series with the
/// exponent split into its integer part (computed as `e^1` powers).
fn exp_fixed(m: &Rational, scale: &BigInt) -> BigInt {
    let guard = BigInt::from(10u32).pow(10);
    let big_scale = scale * &guard;
    let whole = m.floor().to_integer();
    let frac = m - Rational::from_integer(whole.clone());
    let series = |x: &Rational| -> BigInt {
        // Σ x^n / n!, x in [0, 1], in fixed point at big_scale
        let (p, q) = (x.numer().clone(), x.denom().clone());
        let mut term = big_scale.clone();
        let mut sum = big_scale.clone();
        let mut n = BigInt::one();
        while !term.is_zero() {
            term = term * &p / (&q * &n);
            sum += &term;
            n += 1;
        }
        sum
    };
    let mut acc = series(&frac);
    if whole.is_positive() {
        let e1 = series(&Rational::one());
        let mut k = whole.to_u64().expect("exponent fits in u64");
        // acc *= e1^k in fixed point, by repeated squaring
        let mut base = e1;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &base / &big_scale;
            }
            base = &base * &base / &big_scale;
            k >>= 1;
        }
    }
    acc / guard
}

/// `value / 10^scale_digits` to `digits` significant digits, rounding half up.
fn format_significant(value: &BigInt, scale_digits: u32, digits: u32) -> String {
    let s = value.to_string();
    let len = s.len() as i64;
    let drop = len - digits as i64;
    let (mut kept, mut len) = if drop > 0 {
        let divisor = BigInt::from(10u32).pow(drop as u32);
        let (q, r) = value.div_rem(&divisor);
        let q = if &r * 2 >= divisor { q + 1 } else { q };
        (q.to_string(), len)
    } else {
        (s, len)
    };
    if kept.len() as i64 > digits as i64 && drop > 0 {
        // rounding carried into a new leading digit
        kept.pop();
        len += 1;
    }
    let int_digits = len - scale_digits as i64;
    if int_digits <= 0 {
        let zeros = "0".repeat((-int_digits) as usize);
        let body = kept.trim_end_matches('0');
        return format!("0.{zeros}{}", if body.is_empty() { "0" } else { body });
    }
    let int_digits = int_digits as usize;
    if int_digits >= kept.len() {
        let pad = int_digits - kept.len();
        return format!("{kept}{}", "0".repeat(pad));
    }
    format!("{}.{}", &kept[..int_digits], &kept[int_digits..])
}

/// Exponents of the finitely generated exponent monoid, with memoized
/// membership.
struct ExponentMonoid<'a> {
    spec: &'a MonoidSpec,
    memo: RefCell<HashMap<Rational, bool>>,
}

impl<'a> ExponentMonoid<'a> {
    fn new(spec: &'a MonoidSpec) -> Result<Self> {
        if spec.family.is_dense() {
            return Err(Error::Unsupported(format!(
                "division over the dense exponent monoid {}",
                spec.family.name()
            )));
        }
        spec.generators()?;
        Ok(ExponentMonoid {
            spec,
            memo: RefCell::new(HashMap::new()),
        })
    }

    fn contains(&self, e: &Rational) -> Result<bool> {
        if e.is_negative() {
            return Ok(false);
        }
        if let Some(&b) = self.memo.borrow().get(e) {
            return Ok(b);
        }
        let b = self.spec.contains(e)?.member;
        self.memo.borrow_mut().insert(e.clone(), b);
        Ok(b)
    }
}

/// `h` with `g·h = f`, positive coefficients and exponents in `M`, if any.
///
/// Exponents are scaled to integers by the common denominator, then leading
/// terms are eliminated over the integers; the top exponent of the remainder
/// strictly drops each step, so the loop ends on the finite grid.
pub fn gp_divide(f: &GenPoly, g: &GenPoly) -> Result<Option<GenPoly>> {
    same_spec(f, g)?;
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let monoid = ExponentMonoid::new(&f.spec)?;
    divide_in(&monoid, f, g)
}

fn divide_in(monoid: &ExponentMonoid<'_>, f: &GenPoly, g: &GenPoly) -> Result<Option<GenPoly>> {
    if f.is_zero() {
        return Ok(Some(GenPoly::zero(&f.spec)));
    }
    let gens = f.spec.generators()?;
    let grid = arith::denominator_lcm(f.terms.keys().chain(g.terms.keys()).chain(gens.iter()));
    let to_grid = |e: &Rational| -> BigInt { (e * Rational::from_integer(grid.clone())).to_integer() };
    let mut rem: BTreeMap<BigInt, BigInt> = f
        .terms
        .iter()
        .map(|(e, c)| (to_grid(e), BigInt::from(c.clone())))
        .collect();
    let divisor: Vec<(BigInt, BigInt)> = g
        .terms
        .iter()
        .map(|(e, c)| (to_grid(e), BigInt::from(c.clone())))
        .collect();
    let (g_deg, g_lc) = divisor.last().cloned().expect("nonzero divisor");
    let g_ord = divisor[0].0.clone();
    let mut quotient: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    while let Some((top, lead)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let shift = &top - &g_deg;
        if shift.is_negative() {
            return Ok(None);
        }
        let (q, r) = lead.div_rem(&g_lc);
        if !r.is_zero() {
            return Ok(None);
        }
        // remainder terms below ord(g) + shift can never be eliminated later
        if rem.keys().next().is_some_and(|low| *low < g_ord) {
            return Ok(None);
        }
        for (e, c) in &divisor {
            let key = e + &shift;
            let entry = rem.entry(key.clone()).or_default();
            *entry -= &q * c;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        *quotient.entry(shift).or_default() += q;
    }
    let mut terms = BTreeMap::new();
    for (e, c) in quotient {
        if c.is_zero() {
            continue;
        }
        let Some(c) = c.to_biguint().filter(|_| c.is_positive()) else {
            return Ok(None);
        };
        let e = Rational::new(e, grid.clone());
        if !monoid.contains(&e)? {
            return Ok(None);
        }
        terms.insert(e, c);
    }
    let h = GenPoly::raw(&f.spec, terms);
    if gp_mul(g, &h)? != *f {
        return Err(Error::VerificationFailed(format!("({g}) * ({h}) != {f}")));
    }
    Ok(Some(h))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// A nontrivial divisor and its cofactor when reducible.
    pub divisor: Option<GenPoly>,
    pub cofactor: Option<GenPoly>,
    /// Candidate divisors tried by exact division.
    pub candidates_tested: u64,
}

/// Upper bound on candidate divisors a single search may visit.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

/// Every nontrivial `g` (not 1, not `f`) dividing `f`, in canonical order.
///
/// If `g·h = f` then, since no coefficient is negative, every exponent of `g`
/// plus `ord h` is an exponent of `f`, and each coefficient of `g` is at most
/// the matching coefficient of `f`. Choosing `ord g = o` with `o` and
/// `ord f - o` in `M` fixes the candidate support; degree, leading
/// coefficient, constant coefficient and value-at-one divisibility filter the
/// candidates before exact division.
fn proper_divisors(
    monoid: &ExponentMonoid<'_>,
    f: &GenPoly,
    first_only: bool,
    budget: u64,
) -> Result<(Vec<(GenPoly, GenPoly)>, u64)> {
    let ord_f = f.order()?.clone();
    let deg_f = f.degree()?.clone();
    let lc_f = f.leading_coefficient()?.clone();
    let c0_f = f.coefficient(&ord_f);
    let eval_f = f.eval_at_one();
    let exps: Vec<Rational> = f.terms.keys().cloned().collect();
    let mut candidates: Vec<GenPoly> = Vec::new();
    let mut visited = 0u64;
    // ord g = o ranges over members of M with ord f - o in M
    let mut orders: BTreeSet<Rational> = BTreeSet::new();
    for o in grid_points_up_to(monoid, &ord_f)? {
        let ord_h = &ord_f - &o;
        if monoid.contains(&ord_h)? {
            orders.insert(o);
        }
    }
    for o in orders {
        let ord_h = &ord_f - &o;
        let mut support: Vec<(Rational, BigUint)> = Vec::new();
        for s in &exps {
            let e = s - &ord_h;
            if e >= o && monoid.contains(&e)? {
                support.push((e, f.coefficient(s)));
            }
        }
        // support[0] is o itself (s = ord f); enumerate coefficient vectors
        let mut coeffs = vec![BigUint::zero(); support.len()];
        enumerate_coefficients(
            &support,
            0,
            &mut coeffs,
            &BigUint::zero(),
            &eval_f,
            &mut |cs: &[BigUint]| -> Result<bool> {
                visited += 1;
                if visited > budget {
                    return Err(Error::BoundTooSmall(format!(
                        "divisor search exceeded {budget} candidates"
                    )));
                }
                let terms: BTreeMap<Rational, BigUint> = support
                    .iter()
                    .zip(cs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((e, _), c)| (e.clone(), c.clone()))
                    .collect();
                let g = GenPoly::raw(&f.spec, terms);
                if g.is_one() || g == *f || g.is_zero() {
                    return Ok(true);
                }
                let (lc_g, c0_g) = (g.leading_coefficient()?, g.coefficient(g.order()?));
                if !monoid.contains(&(&deg_f - g.degree()?))? {
                    return Ok(true);
                }
                if !(lc_f.is_multiple_of(lc_g) && c0_f.is_multiple_of(&c0_g) && eval_f.is_multiple_of(&g.eval_at_one()))
                {
                    return Ok(true);
                }
                candidates.push(g);
                Ok(true)
            },
        )?;
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut tested = 0u64;
    for g in candidates {
        tested += 1;
        if let Some(h) = divide_in(monoid, f, &g)? {
            if !h.is_one() {
                out.push((g, h));
                if first_only {
                    break;
                }
            }
        }
    }
    Ok((out, tested))
}

/// Grid points of `M` in `[0, bound]`: all sums of generators up to `bound`.
fn grid_points_up_to(monoid: &ExponentMonoid<'_>, bound: &Rational) -> Result<Vec<Rational>> {
    let gens: Vec<Rational> = monoid.spec.generators()?.into_iter().filter(|g| g <= bound).collect();
    let mut points: BTreeSet<Rational> = BTreeSet::from([Rational::zero()]);
    let mut frontier = vec![Rational::zero()];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = &p + g;
            if q <= *bound && points.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    Ok(points.into_iter().collect())
}

/// Visits coefficient vectors with `coeffs[0] >= 1`, `coeffs[i] <= bound_i`
/// and total at most `cap`.
fn enumerate_coefficients(
    support: &[(Rational, BigUint)],
    i: usize,
    coeffs: &mut Vec<BigUint>,
    sum: &BigUint,
    cap: &BigUint,
    visit: &mut dyn FnMut(&[BigUint]) -> Result<bool>,
) -> Result<()> {
    if i == support.len() {
        visit(coeffs)?;
        return Ok(());
    }
    let lo = if i == 0 { BigUint::one() } else { BigUint::zero() };
    let mut c = lo;
    while c <= support[i].1 && &(sum + &c) <= cap {
        coeffs[i] = c.clone();
        enumerate_coefficients(support, i + 1, coeffs, &(sum + &c), cap, visit)?;
        c += 1u32;
    }
    coeffs[i] = BigUint::zero();
    Ok(())
}

fn check_nonunit(f: &GenPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial".into()));
    }
    if f.is_one() {
        return Err(Error::InvalidArgument("the unit 1".into()));
    }
    Ok(())
}

/// Exhaustive divisor search; reducible verdicts carry a divisor/cofactor
/// pair whose product is re-checked.
pub fn is_irreducible_gp(f: &GenPoly) -> Result<Irreducibility> {
    is_irreducible_gp_with_budget(f, DEFAULT_SEARCH_BUDGET)
}

pub fn is_irreducible_gp_with_budget(f: &GenPoly, budget: u64) -> Result<Irreducibility> {
    check_nonunit(f)?;
    let monoid = ExponentMonoid::new(&f.spec)?;
    let (found, tested) = proper_divisors(&monoid, f, true, budget)?;
    Ok(match found.into_iter().next() {
        Some((g, h)) => Irreducibility {
            irreducible: false,
            divisor: Some(g),
            cofactor: Some(h),
            candidates_tested: tested,
        },
        None => Irreducibility {
            irreducible: true,
            divisor: None,
            cofactor: None,
            candidates_tested: tested,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpFactorizations {
    /// Each factorization lists its irreducible factors in canonical order.
    pub factorizations: Vec<Vec<GenPoly>>,
    pub lengths: BTreeSet<u64>,
}

/// All factorizations of `f` into irreducibles with at most `max_len`
/// factors, up to ordering, each re-multiplied to `f`.
pub fn factor_gp(f: &GenPoly, max_len: u64) -> Result<GpFactorizations> {
    check_nonunit(f)?;
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be >= 1".into()));
    }
    let monoid = ExponentMonoid::new(&f.spec)?;
    let mut factorer = Factorer {
        monoid: &monoid,
        divisors: HashMap::new(),
        irreducible: HashMap::new(),
    };
    let mut factorizations = factorer.factor(f, None, max_len)?;
    for z in &mut factorizations {
        z.sort();
    }
    factorizations.sort();
    factorizations.dedup();
    for z in &factorizations {
        let mut prod = GenPoly::one(&f.spec);
        for g in z {
            prod = gp_mul(&prod, g)?;
        }
        if prod != *f {
            return Err(Error::VerificationFailed(format!("factors of {f} multiply to {prod}")));
        }
    }
    let lengths = factorizations.iter().map(|z| z.len() as u64).collect();
    Ok(GpFactorizations {
        factorizations,
        lengths,
    })
}

struct Factorer<'a, 'b> {
    monoid: &'a ExponentMonoid<'b>,
    divisors: HashMap<GenPoly, Vec<(GenPoly, GenPoly)>>,
    irreducible: HashMap<GenPoly, bool>,
}

impl Factorer<'_, '_> {
    fn divisors(&mut self, f: &GenPoly) -> Result<Vec<(GenPoly, GenPoly)>> {
        if let Some(d) = self.divisors.get(f) {
            return Ok(d.clone());
        }
        let (d, _) = proper_divisors(self.monoid, f, false, DEFAULT_SEARCH_BUDGET)?;
        self.irreducible.insert(f.clone(), d.is_empty());
        self.divisors.insert(f.clone(), d.clone());
        Ok(d)
    }

    fn is_irreducible(&mut self, f: &GenPoly) -> Result<bool> {
        if let Some(&b) = self.irreducible.get(f) {
            return Ok(b);
        }
        Ok(self.divisors(f)?.is_empty())
    }

    /// Factorizations of `f` whose factors are all `>= floor`, listed in
    /// non-decreasing canonical order.
    fn factor(&mut self, f: &GenPoly, floor: Option<&GenPoly>, budget: u64) -> Result<Vec<Vec<GenPoly>>> {
        if budget == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        if floor.is_none_or(|m| f >= m) && self.is_irreducible(f)? {
            out.push(vec![f.clone()]);
        }
        if budget == 1 {
            return Ok(out);
        }
        for (g, h) in self.divisors(f)? {
            if floor.is_some_and(|m| g < *m) || h < g || !self.is_irreducible(&g)? {
                continue;
            }
            for mut rest in self.factor(&h, Some(&g), budget - 1)? {
                rest.insert(0, g.clone());
                out.push(rest);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn two_three() -> MonoidSpec {
        MonoidSpec::numerical(&[2, 3]).unwrap()
    }

    fn naturals() -> MonoidSpec {
        MonoidSpec::numerical(&[1]).unwrap()
    }

    fn p(text: &str, spec: &MonoidSpec) -> GenPoly {
        GenPoly::parse(text, spec).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let spec = MonoidSpec::numerical(&[1]).unwrap();
        let q = MonoidSpec::explicit(&[rat(1, 2), rat(1, 3)]).unwrap();
        let f = p("1 + x^(2/3) + 3*x^(5/2)", &q);
        assert_eq!(f.to_string(), "3*x^(5/2) + x^(2/3) + 1");
        assert_eq!(p("x + x + 2", &spec).to_string(), "2*x + 2");
        assert_eq!(p("0", &spec).to_string(), "0");
        assert_eq!(p("x^3", &spec).to_string(), "x^3");
        assert!(GenPoly::parse("x^1", &two_three()).is_err());
        assert!(GenPoly::parse("2*y", &spec).is_err());
        assert!(GenPoly::parse("x^(-1)", &spec).is_err());
        assert!(GenPoly::parse("1 + ", &spec).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let m = two_three();
        let prod = gp_mul(&p("1 + x^2", &m), &p("1 + x^3", &m)).unwrap();
        assert_eq!(prod, p("1 + x^2 + x^3 + x^5", &m));
        assert_eq!(gp_mul(&p("x^2", &m), &p("x^3", &m)).unwrap(), p("x^5", &m));
        let q = MonoidSpec::power_of(rat(2, 3), 4).unwrap();
        let f = p("2*x^(2/3) + 3*x", &q);
        assert_eq!(gp_mul(&f, &GenPoly::one(&q)).unwrap(), f);
        let s = gp_stats(&f).unwrap();
        assert_eq!(s.degree, int(1));
        assert_eq!(s.leading_coefficient, BigUint::from(3u32));
        assert_eq!(s.order, rat(2, 3));
        assert_eq!(s.eval_at_one, BigUint::from(5u32));
        assert_eq!(s.exponent_set, BTreeSet::from([rat(2, 3), int(1)]));
        let one = gp_stats(&GenPoly::one(&m)).unwrap();
        assert_eq!((one.degree, one.leading_coefficient), (int(0), BigUint::one()));
        let g = MonoidSpec::grams(3).unwrap();
        let h = gp_mul(&p("x^(1/3)", &g), &p("x^(1/10)", &g)).unwrap();
        assert_eq!(h.degree().unwrap(), &rat(13, 30));
        assert_eq!(gp_stats(&GenPoly::zero(&m)), Err(Error::UndefinedDegree));
        assert!(gp_add(&p("1", &m), &p("1", &naturals())).is_err());
        assert_eq!(gp_add(&p("x^2", &m), &p("1 + x^2", &m)).unwrap(), p("2*x^2 + 1", &m));
    }

    #[test]
    fn exponential_evaluation() {
        let n = naturals();
        assert_eq!(eval_exponential(&p("1 + x", &n), 10).unwrap(), "3.718281828");
        assert_eq!(eval_exponential(&GenPoly::zero(&n), 10).unwrap(), "0");
        let h = MonoidSpec::explicit(&[rat(1, 2)]).unwrap();
        assert_eq!(eval_exponential(&p("2*x^(1/2)", &h), 10).unwrap(), "3.297442541");
        assert_eq!(eval_exponential(&p("1", &n), 3).unwrap(), "1.00");
        assert_eq!(eval_exponential(&p("x^10", &n), 4).unwrap(), "22030");
        assert_eq!(format_significant(&BigInt::from(99_996), 4, 3), "10.0");
    }

    #[test]
    fn division_examples() {
        let m = two_three();
        let f = p("1 + x^2 + x^3 + x^5", &m);
        assert_eq!(gp_divide(&f, &p("1 + x^2", &m)).unwrap(), Some(p("1 + x^3", &m)));
        assert_eq!(gp_divide(&p("x^5", &m), &p("x^3", &m)).unwrap(), Some(p("x^2", &m)));
        assert_eq!(gp_divide(&p("x^4", &m), &p("x^3", &m)).unwrap(), None);
        assert_eq!(gp_divide(&f, &GenPoly::zero(&m)), Err(Error::DivisionByZero));
        let c = MonoidSpec::conductor(None).unwrap();
        assert!(matches!(
            gp_divide(&p("x^2", &c), &p("x^(3/2)", &c)),
            Err(Error::Unsupported(_))
        ));
        // 1 + x^3 = (1 + x)(1 - x + x^2) needs a negative coefficient
        let n = naturals();
        assert_eq!(gp_divide(&p("1 + x^3", &n), &p("1 + x", &n)).unwrap(), None);
    }

    #[test]
    fn irreducibility_examples() {
        let m = two_three();
        assert!(is_irreducible_gp(&p("x^2", &m)).unwrap().irreducible);
        let v = is_irreducible_gp(&p("1 + x^2 + x^3 + x^5", &m)).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.divisor, Some(p("1 + x^2", &m)));
        assert_eq!(v.cofactor, Some(p("1 + x^3", &m)));
        let n = naturals();
        assert!(is_irreducible_gp(&p("1 + x", &n)).unwrap().irreducible);
        assert!(is_irreducible_gp(&p("1", &n)).is_err());
        assert!(is_irreducible_gp(&GenPoly::zero(&n)).is_err());
        // (1 + x)(1 + x^2) has no other splitting
        assert!(!is_irreducible_gp(&p("1 + x + x^2 + x^3", &n)).unwrap().irreducible);
        assert!(is_irreducible_gp(&p("2", &n)).unwrap().irreducible);
        assert!(!is_irreducible_gp(&p("6", &n)).unwrap().irreducible);
        let v = is_irreducible_gp(&p("2*x^2 + 2*x^3", &m)).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.divisor, Some(p("2", &m)));
    }

    #[test]
    fn factorization_examples() {
        let m = two_three();
        let r = factor_gp(&p("x^6", &m), 10).unwrap();
        assert_eq!(
            r.factorizations,
            vec![
                vec![p("x^2", &m), p("x^2", &m), p("x^2", &m)],
                vec![p("x^3", &m), p("x^3", &m)],
            ]
        );
        assert_eq!(r.lengths, BTreeSet::from([2, 3]));
        let n = naturals();
        let r = factor_gp(&p("1 + 2*x + x^2", &n), 5).unwrap();
        assert_eq!(r.factorizations, vec![vec![p("1 + x", &n), p("1 + x", &n)]]);
        let r = factor_gp(&p("x^2", &m), 5).unwrap();
        assert_eq!(r.factorizations, vec![vec![p("x^2", &m)]]);
        let r = factor_gp(&p("x^6", &m), 2).unwrap();
        assert_eq!(r.lengths, BTreeSet::from([2]));
    }

    #[test]
    fn serializes_terms() {
        let m = two_three();
        let json = serde_json::to_string(&p("3*x^3 + 1", &m)).unwrap();
        assert_eq!(json, r#"[["3","3"],["0","1"]]"#);
    }
}
