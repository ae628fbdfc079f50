//! Digamma and trigamma enclosures.
//!
//! Both functions shift the argument upward with the recurrences
//! `psi(x) = psi(x + 1) - 1/x` and `psi'(x) = psi'(x + 1) + 1/x^2` until it exceeds a
//! precision-dependent threshold, then sum the asymptotic (Stirling-type) series. For a real
//! argument the truncation error is bounded by the first omitted term, which is added to the
//! enclosure as a symmetric radius.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::{domain, Error, Result};

/// Hard cap on the number of Bernoulli numbers the series may request.
const MAX_BERNOULLI: usize = 4000;

/// `B_2, B_4, ..., B_{2n}` via the integer tangent-number recurrence.
fn bernoulli_even(n: usize) -> Vec<BigRational> {
    let mut t: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return Vec::new();
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - 1);
            let num = &t[k] * BigInt::from(2 * k);
            let b = BigRational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Cached `B_{2k}` for `k = 1..=n`.
pub fn bernoulli_table(n: usize) -> Result<Vec<BigRational>> {
    if n > MAX_BERNOULLI {
        return Err(Error::ResourceExhausted(format!(
            "{n} Bernoulli numbers requested (cap {MAX_BERNOULLI})"
        )));
    }
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if guard.len() < n {
        let want = n.max(2 * guard.len()).min(MAX_BERNOULLI).max(n);
        *guard = bernoulli_even(want);
    }
    Ok(guard[..n].to_vec())
}

fn shift_target(prec: u32) -> i64 {
    (prec as i64).max(10)
}

/// Number of unit shifts needed to push `x.lo` above the asymptotic threshold.
fn shift_count(x: &Interval, prec: u32) -> i64 {
    let lo = x.lo().floor_int();
    let target = BigInt::from(shift_target(prec));
    if lo >= target {
        0
    } else {
        i64::try_from(target - lo).unwrap_or(i64::MAX)
    }
}

/// Asymptotic sum `sum_k coef(k) * B_{2k} * y^{-(2k + offset)}` with the first-omitted-term bound.
fn asymptotic_tail(
    y: &Interval,
    w: u32,
    offset: i32,
    coef: impl Fn(usize) -> i64,
) -> Result<Interval> {
    let eps = Dyadic::new(BigInt::one(), -(w as i64) - 8);
    let inv_y2 = y.sqr().recip()?;
    let mut pw = y.powi(offset)?.recip()?;
    let mut sum = Interval::zero(w);
    let mut need = 16usize;
    let mut table = bernoulli_table(need)?;
    let mut k = 1usize;
    loop {
        if k > table.len() {
            need *= 2;
            table = bernoulli_table(need)?;
        }
        pw = pw.mul(&inv_y2);
        let b = Interval::from_ratio(&table[k - 1], w);
        let term = b.mul(&pw).div_int(coef(k))?;
        if term.mag() < eps {
            return Ok(sum.inflate(&term.mag()));
        }
        sum = sum.add(&term);
        k += 1;
    }
}

/// Enclosure of the digamma function `psi(x)` for `x > 0`.
pub fn digamma(x: &Interval, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(domain("digamma requires x > 0"));
    }
    let shifts = shift_count(x, prec);
    let w = prec + 24 + (64 - (shifts as u64).leading_zeros());
    let xs = x.with_prec(w);
    let mut recur = Interval::zero(w);
    for i in 0..shifts {
        recur = recur.add(&xs.add(&Interval::from_int(i, w)).recip()?);
    }
    let y = xs.add(&Interval::from_int(shifts, w));
    // psi(y) = ln y - 1/(2y) - sum B_{2k} / (2k y^{2k}) + R
    let series = asymptotic_tail(&y, w, 0, |k| 2 * k as i64)?;
    let psi_y = y.ln()?.sub(&y.ldexp(1).recip()?).sub(&series);
    Ok(psi_y.sub(&recur).with_prec(prec))
}

/// Enclosure of the trigamma function `psi'(x)` for `x > 0`.
pub fn trigamma(x: &Interval, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(domain("trigamma requires x > 0"));
    }
    let shifts = shift_count(x, prec);
    let w = prec + 24 + (64 - (shifts as u64).leading_zeros());
    let xs = x.with_prec(w);
    let mut recur = Interval::zero(w);
    for i in 0..shifts {
        recur = recur.add(&xs.add(&Interval::from_int(i, w)).sqr().recip()?);
    }
    let y = xs.add(&Interval::from_int(shifts, w));
    // psi'(y) = 1/y + 1/(2y^2) + sum B_{2k} / y^{2k+1} + R
    let series = asymptotic_tail(&y, w, 1, |_| 1)?;
    let head = y.recip()?.add(&y.sqr().ldexp(1).recip()?);
    Ok(head.add(&series).add(&recur).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_small_values() {
        let b = bernoulli_table(6).unwrap();
        assert_eq!(b[0], q(1, 6));
        assert_eq!(b[1], q(-1, 30));
        assert_eq!(b[2], q(1, 42));
        assert_eq!(b[3], q(-1, 30));
        assert_eq!(b[4], q(5, 66));
        assert_eq!(b[5], q(-691, 2730));
    }

    #[test]
    fn digamma_at_small_integers() {
        let p = 64;
        let g = constants::gamma(p + 10);
        let psi1 = digamma(&Interval::one(p), p).unwrap();
        assert!(psi1.overlaps(&g.neg()));
        assert!(psi1.width().to_f64() < 1e-17);
        let psi2 = digamma(&Interval::from_int(2, p), p).unwrap();
        assert!(psi2.overlaps(&Interval::one(p).sub(&g)));
        // psi(5) = H_4 - gamma = 25/12 - gamma
        let psi5 = digamma(&Interval::from_int(5, p), p).unwrap();
        let expected = Interval::from_frac(25, 12, p + 10).sub(&g);
        assert!(psi5.overlaps(&expected));
        assert!((psi5.mid_f64() - 1.506_117_668_431_800_5).abs() < 1e-15);
    }

    #[test]
    fn trigamma_at_small_integers() {
        let p = 64;
        let z2 = constants::zeta2(p + 10);
        let t1 = trigamma(&Interval::one(p), p).unwrap();
        assert!(t1.overlaps(&z2));
        let t2 = trigamma(&Interval::from_int(2, p), p).unwrap();
        assert!(t2.overlaps(&z2.sub(&Interval::one(p))));
        let t5 = trigamma(&Interval::from_int(5, p), p).unwrap();
        let expected = z2
            .sub(&Interval::one(p))
            .sub(&Interval::from_frac(1, 4, p + 10))
            .sub(&Interval::from_frac(1, 9, p + 10))
            .sub(&Interval::from_frac(1, 16, p + 10));
        assert!(t5.overlaps(&expected));
    }

    #[test]
    fn domain_violations() {
        assert!(digamma(&Interval::zero(64), 64).is_err());
        assert!(trigamma(&Interval::from_int(-3, 64), 64).is_err());
    }

    #[test]
    fn high_precision_digamma_is_tight() {
        let p = 512;
        let psi1 = digamma(&Interval::one(p), p).unwrap();
        let g = constants::gamma(p + 10);
        assert!(psi1.overlaps(&g.neg()));
        assert!(psi1.width().log2_approx() < -(p as f64) + 8.0);
    }

    #[test]
    fn large_argument_needs_no_shift() {
        let x = Interval::from_int(1_000_000_000_000i64, 64);
        let psi = digamma(&x, 64).unwrap();
        let approx = 1e12f64.ln() - 0.5e-12;
        assert!((psi.mid_f64() - approx).abs() < 1e-12);
    }
}
