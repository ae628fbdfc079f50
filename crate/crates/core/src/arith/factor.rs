//! Factorizations and the multiplicative functions built on them.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::primes::{is_prime, pollard_rho};
use crate::error::{invalid, Result};

/// Canonical prime factorization; the empty list is `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Validates strictly increasing primes with positive exponents.
    pub fn new(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for (i, &(p, e)) in pairs.iter().enumerate() {
            if e == 0 {
                return Err(invalid(format!("exponent of {p} is zero")));
            }
            if !is_prime(p) {
                return Err(invalid(format!("{p} is not prime")));
            }
            if i > 0 && pairs[i - 1].0 >= p {
                return Err(invalid("primes must be strictly increasing"));
            }
        }
        Ok(Factorization { pairs })
    }

    /// `n = 1`.
    pub fn one() -> Self {
        Factorization::default()
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.pairs
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    pub fn max_exponent(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// Exponent of `p` (zero when absent).
    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of two factorizations.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let (a, b) = (&self.pairs, &other.pairs);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Factorization { pairs: out }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

const TRIAL_LIMIT: u64 = 1 << 10;

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

/// Prime factorization of `n >= 1`.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(invalid("cannot factor 0"));
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3;
    while d < TRIAL_LIMIT && d * d <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        if d * d > rest {
            pairs.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split(rest, &mut big);
            big.sort_unstable();
            for p in big {
                match pairs.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => pairs.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization { pairs })
}

/// `(p^(e+1) - 1) / (p - 1)`.
fn geometric(p: u64, e: u32) -> BigUint {
    let p = BigUint::from(p);
    (p.pow(e + 1) - 1u32) / (p - 1u32)
}

/// Sum of divisors.
pub fn sigma(f: &Factorization) -> BigUint {
    f.pairs
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * geometric(p, e))
}

/// `sigma(n)` for machine-size `n`.
pub fn sigma_u64(n: u64) -> Result<u128> {
    sigma(&factor(n)?)
        .to_u128()
        .ok_or_else(|| invalid("sigma exceeds 128 bits"))
}

/// Euler's totient.
pub fn phi(f: &Factorization) -> BigUint {
    f.pairs.iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e - 1) * (p - 1)
    })
}

/// `sigma(n) / n` in lowest terms.
pub fn abundancy_of(f: &Factorization) -> BigRational {
    BigRational::new(sigma(f).into(), f.value().into())
}

/// `sigma(n) / n` for `n >= 1`.
pub fn abundancy(n: u64) -> Result<BigRational> {
    Ok(abundancy_of(&factor(n)?))
}

/// `n / phi(n)` in lowest terms.
pub fn totient_ratio(f: &Factorization) -> BigRational {
    BigRational::new(f.value().into(), phi(f).into())
}

/// Every exponent of `n` is below `k`.
pub fn is_k_free(n: u64, k: u32) -> Result<bool> {
    if k < 2 {
        return Err(invalid("k-free requires k >= 2"));
    }
    Ok(factor(n)?.max_exponent() < k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn divisor_sum(n: u64) -> u64 {
        (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
    }

    fn coprime_count(n: u64) -> u64 {
        (1..=n).filter(|&a| num_integer::gcd(a, n) == 1).count() as u64
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn factor_examples() {
        assert!(factor(1).unwrap().is_one());
        assert_eq!(factor(5040).unwrap().pairs(), &[(2, 4), (3, 2), (5, 1), (7, 1)]);
        assert_eq!(factor(5041).unwrap().pairs(), &[(71, 2)]);
        assert!(factor(0).is_err());
        for n in 1..3000 {
            assert_eq!(factor(n).unwrap().pairs(), trial_factor(n).as_slice());
        }
    }

    #[test]
    fn factor_large_semiprimes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        let f = factor(p * q).unwrap();
        assert_eq!(f.pairs(), &[(q, 1), (p, 1)]);
        let f = factor(1_000_003u64.pow(3)).unwrap();
        assert_eq!(f.pairs(), &[(1_000_003, 3)]);
        let f = factor(u64::MAX).unwrap();
        assert_eq!(f.value(), big(u64::MAX));
    }

    #[test]
    fn sigma_and_phi_examples() {
        let s = |n| sigma(&factor(n).unwrap());
        let t = |n| phi(&factor(n).unwrap());
        assert_eq!(s(1), big(1));
        assert_eq!(s(6), big(12));
        assert_eq!(s(5040), big(19344));
        assert_eq!(s(5041), big(5113));
        assert_eq!(t(1), big(1));
        assert_eq!(t(12), big(4));
        assert_eq!(t(5041), big(4970));
        for n in 1..600 {
            assert_eq!(s(n), big(divisor_sum(n)), "sigma({n})");
            assert_eq!(t(n), big(coprime_count(n)), "phi({n})");
        }
    }

    #[test]
    fn abundancy_examples() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(abundancy(1).unwrap(), q(1, 1));
        assert_eq!(abundancy(6).unwrap(), q(2, 1));
        assert_eq!(abundancy(5040).unwrap(), q(403, 105));
    }

    #[test]
    fn k_free_examples() {
        assert!(is_k_free(12, 3).unwrap());
        assert!(!is_k_free(12, 2).unwrap());
        assert!(is_k_free(1 << 20, 21).unwrap());
        assert!(!is_k_free(1 << 21, 21).unwrap());
        assert!(is_k_free(12, 1).is_err());
    }

    #[test]
    fn factorization_validation() {
        assert!(Factorization::new(vec![(2, 1), (3, 2)]).is_ok());
        assert!(Factorization::new(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::new(vec![(4, 1)]).is_err());
        assert!(Factorization::new(vec![(5, 0)]).is_err());
        let a = factor(360).unwrap();
        let b = factor(98).unwrap();
        assert_eq!(a.mul(&b).value(), big(360 * 98));
        assert_eq!(a.to_string(), "2^3 * 3^2 * 5");
    }

    #[test]
    fn abundancy_below_totient_ratio() {
        for n in 2..=100_000u64 {
            let f = factor(n).unwrap();
            assert!(abundancy_of(&f) < totient_ratio(&f), "{n}");
        }
    }

    proptest! {
        #[test]
        fn multiplicative(a in 1u64..=1000, b in 1u64..=1000) {
            prop_assume!(num_integer::gcd(a, b) == 1);
            let (fa, fb, fab) = (factor(a).unwrap(), factor(b).unwrap(), factor(a * b).unwrap());
            prop_assert_eq!(sigma(&fab), sigma(&fa) * sigma(&fb));
            prop_assert_eq!(phi(&fab), phi(&fa) * phi(&fb));
        }

        #[test]
        fn factor_round_trips(n in 1u64..) {
            let f = factor(n).unwrap();
            prop_assert_eq!(f.value(), big(n));
            prop_assert!(Factorization::new(f.pairs().to_vec()).is_ok());
        }
    }
}
