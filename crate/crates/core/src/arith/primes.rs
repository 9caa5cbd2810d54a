use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = usize::try_from(limit).expect("sieve limit exceeds address space");
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Number of primes `<= limit`.
pub fn prime_count_up_to(limit: u64) -> usize {
    primes_up_to(limit).len()
}

/// The first `count` primes, skipping 2 when `exclude_two` is set.
pub fn first_primes(count: usize, exclude_two: bool) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let needed = count + usize::from(exclude_two);
    let mut limit = 15u64;
    loop {
        let primes = primes_up_to(limit);
        if primes.len() >= needed {
            let skip = usize::from(exclude_two);
            return primes[skip..needed].to_vec();
        }
        limit *= 2;
    }
}

/// Prime by index.
///
/// With `exclude_two == false` the index is 1-based over all primes
/// (`nth_prime(1, false) == 2`). With `exclude_two == true` the index is
/// 0-based over the odd primes (`nth_prime(0, true) == 3`), the convention of
/// the generators `1/(2^n p_n)`.
pub fn nth_prime(n: u64, exclude_two: bool) -> Result<u64> {
    let position = if exclude_two {
        n.checked_add(2)
            .ok_or_else(|| Error::InvalidArgument(format!("prime index {n} out of range")))?
    } else {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "prime indices over all primes are 1-based".into(),
            ));
        }
        n
    };
    // Rosser's bound p_m < m (ln m + ln ln m) for m >= 6 sizes the sieve; the
    // loop grows it if the estimate ever falls short.
    let m = position as f64;
    let mut limit = if position < 6 {
        15
    } else {
        (m * (m.ln() + m.ln().ln())).ceil() as u64 + 1
    };
    loop {
        let primes = primes_up_to(limit);
        if let Some(&p) = primes.get(position as usize - 1) {
            return Ok(p);
        }
        limit = limit
            .checked_mul(2)
            .ok_or_else(|| Error::InvalidArgument(format!("prime index {n} out of range")))?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_conventions() {
        assert_eq!(nth_prime(1, false).unwrap(), 2);
        assert_eq!(nth_prime(0, true).unwrap(), 3);
        assert_eq!(nth_prime(2, true).unwrap(), 7);
        assert_eq!(nth_prime(6, false).unwrap(), 13);
        assert_eq!(nth_prime(1000, false).unwrap(), 7919);
        assert!(nth_prime(0, false).is_err());
        assert_eq!(first_primes(4, true), vec![3, 5, 7, 11]);
        assert_eq!(first_primes(3, false), vec![2, 3, 5]);
        let big = first_primes(500, false);
        assert_eq!(big[499], nth_prime(500, false).unwrap());
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let sieve = primes_up_to(20_000);
        let tested: Vec<u64> = (0..=20_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, tested);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }
}
