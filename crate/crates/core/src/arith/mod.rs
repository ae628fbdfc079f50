//! Exact integer arithmetic: factorization, multiplicative functions, primes, primorials,
//! Chebyshev's theta and the segmented sum-of-divisors sieve.

mod factor;
mod primes;
mod sieve;

pub use factor::{
    abundancy, abundancy_of, factor, is_k_free, phi, sigma, sigma_u64, totient_ratio,
    Factorization,
};
pub use primes::{first_primes, is_prime, nth_prime, primes_up_to, primorial, primorial_without};
pub use sieve::{
    map_segment_range, map_segments, segment_count, sieve_primes, sigma_segment, sigma_sieve,
    SieveConfig, SigmaSieve,
};

pub(crate) use sieve::run_indexed;

use crate::error::{invalid, Result};
use crate::numerics::Interval;

/// Guard bits for a sum of `terms` outward-rounded logarithms.
fn sum_guard(terms: usize) -> u32 {
    12 + (usize::BITS - terms.leading_zeros())
}

/// Enclosure of `sum_{p <= x} log p`.
pub fn chebyshev_theta(x: u64, prec: u32) -> Result<Interval> {
    if x < 2 {
        return Err(invalid("theta requires x >= 2"));
    }
    let ps = primes_up_to(x);
    Ok(theta_of_primes(&ps, prec))
}

/// `sum log p` over the given primes, each logarithm enclosed at working precision.
pub fn theta_of_primes(ps: &[u64], prec: u32) -> Interval {
    let w = prec + sum_guard(ps.len());
    ps.iter()
        .fold(Interval::zero(w), |acc, &p| {
            acc.add(&Interval::from_int(p, w).ln().expect("p >= 2"))
        })
        .with_prec(prec)
}

/// Running enclosures of `theta(p)` at every prime `p <= limit`, in increasing order.
pub fn theta_steps(limit: u64, prec: u32) -> Vec<(u64, Interval)> {
    let ps = primes_up_to(limit);
    let w = prec + sum_guard(ps.len());
    let mut acc = Interval::zero(w);
    ps.into_iter()
        .map(|p| {
            acc = acc.add(&Interval::from_int(p, w).ln().expect("p >= 2"));
            (p, acc.with_prec(prec))
        })
        .collect()
}
