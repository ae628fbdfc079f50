//! Prime generation, deterministic primality and primorials.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Result};

/// All primes `<= limit` (sieve of Eratosthenes over odd numbers).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // index i represents 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u64];
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !c && 2 * i < limit)
            .map(|(i, _)| (2 * i + 1) as u64),
    );
    out
}

/// Upper bound on the `k`-th prime, valid for every `k >= 1`.
fn nth_prime_upper(k: u64) -> u64 {
    if k < 6 {
        return 13;
    }
    let kf = k as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 3
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let mut ps = primes_up_to(nth_prime_upper(count as u64));
    ps.truncate(count);
    debug_assert_eq!(ps.len(), count);
    ps
}

/// The `k`-th prime, `p_1 = 2`.
pub fn nth_prime(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(invalid("prime index starts at 1"));
    }
    Ok(*first_primes(k as usize).last().unwrap())
}

/// `p_1 p_2 ... p_k`.
pub fn primorial(k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(invalid("primorial index starts at 1"));
    }
    Ok(first_primes(k)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p))
}

/// `p_k# / p_j`, the primorial with the `j`-th prime divided out.
pub fn primorial_without(k: usize, j: usize) -> Result<BigUint> {
    if k == 0 || j == 0 {
        return Err(invalid("prime indices start at 1"));
    }
    if j > k {
        return Err(invalid(format!("excluded index j={j} exceeds k={k}")));
    }
    Ok(first_primes(k)
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j)
        .fold(BigUint::one(), |acc, (_, p)| acc * p))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
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
    'witness: for a in SMALL {
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

/// Brent's variant of Pollard's rho; `n` must be an odd composite.
pub(crate) fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = num_integer::gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sieve_matches_trial_division() {
        let ps = primes_up_to(2000);
        let oracle: Vec<u64> = (0..=2000).filter(|&n| trial_is_prime(n)).collect();
        assert_eq!(ps, oracle);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(nth_prime(2).unwrap(), 3);
        assert_eq!(nth_prime(6).unwrap(), 13);
        assert_eq!(nth_prime(99).unwrap(), 523);
        assert_eq!(nth_prime(100).unwrap(), 541);
        assert!(nth_prime(100).unwrap() > 529);
        assert!(nth_prime(0).is_err());
    }

    #[test]
    fn primorials() {
        assert_eq!(primorial(1).unwrap(), BigUint::from(2u32));
        assert_eq!(primorial(3).unwrap(), BigUint::from(30u32));
        assert_eq!(primorial_without(5, 1).unwrap(), BigUint::from(1155u32));
        assert!(primorial_without(2, 3).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_is_prime(n), "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(341_550_071_728_321));
    }

    #[test]
    fn rho_finds_factor() {
        let n = 1_000_003u64 * 998_244_353;
        let d = pollard_rho(n);
        assert!(d > 1 && d < n && n.is_multiple_of(d));
    }
}
