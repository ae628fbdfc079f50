//! Superabundant numbers: a sieve record scan, a generator over non-increasing exponent
//! vectors, and Kaneko-Lagarias on both.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{abundancy_of, factor, first_primes, map_segments, Factorization, SieveConfig};
use crate::error::{invalid, Error, Result};
use crate::lagarias::{check_kaneko_lagarias_factored, HarmonicSeq, EXACT_H_LIMIT};
use crate::numerics::{decide_intervals, Interval, PrecisionPolicy, Verdict};
use crate::report::{CheckpointReport, Flag};

const GUARD: u32 = 16;

/// One superabundant number.
#[derive(Debug, Clone, PartialEq)]
pub struct SAEntry {
    pub factorization: Factorization,
    pub abundancy: BigRational,
    /// Filled in by [`verify_kl_on_sa`].
    pub kl_verdict: Option<Verdict>,
}

impl SAEntry {
    fn new(factorization: Factorization) -> Self {
        let abundancy = abundancy_of(&factorization);
        SAEntry {
            factorization,
            abundancy,
            kl_verdict: None,
        }
    }

    pub fn n(&self) -> BigUint {
        self.factorization.value()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.factorization.pairs().iter().map(|&(_, e)| e).collect()
    }
}

/// `a/b > c/d` for positive integers.
fn ratio_gt(a: u128, b: u128, c: u128, d: u128) -> bool {
    match (a.checked_mul(d), c.checked_mul(b)) {
        (Some(l), Some(r)) => l > r,
        _ => BigUint::from(a) * BigUint::from(d) > BigUint::from(c) * BigUint::from(b),
    }
}

/// Every superabundant `n <= limit`, by a record scan over the sum-of-divisors sieve.
pub fn sa_scan(limit: u64, workers: usize) -> Result<Vec<SAEntry>> {
    if limit == 0 {
        return Err(invalid("limit must be positive"));
    }
    let local = map_segments(1, limit, SieveConfig::default(), workers, |a, sig| {
        let mut best: Option<(u128, u128)> = None;
        let mut recs = Vec::new();
        for (i, &s) in sig.iter().enumerate() {
            let n = (a + i as u64) as u128;
            if best.is_none_or(|(bs, bn)| ratio_gt(s, n, bs, bn)) {
                best = Some((s, n));
                recs.push((n as u64, s));
            }
        }
        Ok(recs)
    })?;
    let mut best: Option<(u128, u128)> = None;
    let mut out = Vec::new();
    for (n, s) in local.into_iter().flatten() {
        if best.is_none_or(|(bs, bn)| ratio_gt(s, n as u128, bs, bn)) {
            best = Some((s, n as u128));
            out.push(SAEntry::new(factor(n)?));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Candidate {
    value: BigUint,
    exps: Vec<u32>,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Default bound on the candidate heap of [`sa_generate`].
pub const DEFAULT_FRONTIER: usize = 1 << 20;

/// The first `count` superabundant numbers (default frontier bound).
pub fn sa_generate(count: usize) -> Result<Vec<SAEntry>> {
    sa_generate_with(count, DEFAULT_FRONTIER)
}

/// Pops products `prod p_i^{e_i}` with `e_1 >= e_2 >= ...` in increasing order and keeps those
/// whose abundancy beats every candidate popped before. Each vector has one parent (drop a
/// trailing 1, else decrement the last exponent), so every candidate is pushed once.
pub fn sa_generate_with(count: usize, frontier: usize) -> Result<Vec<SAEntry>> {
    if count == 0 {
        return Err(invalid("count must be positive"));
    }
    if frontier == 0 {
        return Err(invalid("frontier bound must be positive"));
    }
    let mut primes = first_primes(64);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Candidate {
        value: BigUint::one(),
        exps: Vec::new(),
    }));
    let mut best: Option<BigRational> = None;
    let mut out = Vec::with_capacity(count);
    let mut popped = 0usize;
    while out.len() < count {
        if heap.len() > frontier {
            return Err(Error::FrontierExhausted {
                popped,
                found: out.len(),
                wanted: count,
            });
        }
        let Some(Reverse(c)) = heap.pop() else {
            unreachable!("the candidate set is infinite");
        };
        popped += 1;
        let r = c.exps.len();
        if r + 1 > primes.len() {
            primes = first_primes(primes.len() * 2);
        }
        let last = c.exps.last().copied();
        if let Some(e) = last {
            if r == 1 || c.exps[r - 2] > e {
                let mut exps = c.exps.clone();
                exps[r - 1] += 1;
                heap.push(Reverse(Candidate {
                    value: &c.value * primes[r - 1],
                    exps,
                }));
            }
        }
        let mut exps = c.exps.clone();
        exps.push(1);
        heap.push(Reverse(Candidate {
            value: &c.value * primes[r],
            exps,
        }));
        let f = Factorization::new(primes.iter().copied().zip(c.exps.iter().copied()).collect())?;
        let ab = abundancy_of(&f);
        if best.as_ref().is_none_or(|b| ab > *b) {
            best = Some(ab.clone());
            out.push(SAEntry {
                factorization: f,
                abundancy: ab,
                kl_verdict: None,
            });
        }
    }
    Ok(out)
}

/// `1/(2n) - 1/(2n+1)`, the width of the harmonic bracket at `n`.
fn bracket_width(n: &BigUint) -> BigRational {
    let two_n: BigInt = BigInt::from(n.clone()) * 2;
    BigRational::new(1.into(), two_n.clone() * (two_n + 1))
}

/// Kaneko-Lagarias on the first `count` superabundant numbers above 60.
pub fn verify_kl_on_sa(count: usize, policy: &PrecisionPolicy) -> Result<(CheckpointReport, Vec<SAEntry>)> {
    if count == 0 {
        return Err(invalid("count must be positive"));
    }
    let mut all = sa_generate(count + 16)?;
    let sixty = BigUint::from(60u32);
    let excluded: Vec<String> = all
        .iter()
        .filter(|e| e.n() <= sixty)
        .map(|e| e.n().to_string())
        .collect();
    all.retain(|e| e.n() > sixty);
    all.truncate(count);
    let mut r = CheckpointReport::new("KL_ON_SA");
    r.param("count", count);
    let mut widest: Option<BigRational> = None;
    let mut enclosed = 0;
    for e in &mut all {
        let rep = check_kaneko_lagarias_factored(&e.factorization, policy)?;
        r.require(format!("Kaneko-Lagarias at {}", e.factorization), rep.verdict);
        if rep.has_flag(Flag::HarmonicEnclosed) {
            enclosed += 1;
            let w = bracket_width(&e.n());
            if widest.as_ref().is_none_or(|b| w > *b) {
                widest = Some(w);
            }
        }
        e.kl_verdict = Some(rep.verdict);
    }
    r.finding("excluded_at_most_60", excluded.join(","));
    r.finding("exact_harmonic_entries", all.len() - enclosed);
    r.finding("bracketed_harmonic_entries", enclosed);
    if let Some(w) = widest {
        let wi = Interval::from_ratio(&w, 64);
        r.finding("largest_bracket_width", wi.hi_string(4));
    }
    if let Some(last) = all.last() {
        r.witness(format!("{} entries hold, up to {}", all.len(), last.factorization));
    }
    Ok((r, all))
}

/// Entries above 2 whose largest prime appears squared or higher.
pub fn largest_prime_exponent_exceptions(entries: &[SAEntry]) -> Vec<BigUint> {
    entries
        .iter()
        .filter(|e| {
            e.n() > BigUint::from(2u32) && e.factorization.pairs().last().is_some_and(|&(_, k)| k > 1)
        })
        .map(SAEntry::n)
        .collect()
}

fn g_seq(seq: &HarmonicSeq, n: u64, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let h = seq.interval(w);
    Ok(h.exp()?.mul(&h.ln()?).div(&Interval::from_int(n, w))?.with_prec(prec))
}

/// For every non-superabundant `m <= limit`, with `n` the largest superabundant below `m`:
/// `g(n) < g(m)` and `sigma(n)/n > sigma(m)/m`, where `g(x) = exp(H_x) log(H_x) / x`.
pub fn verify_lli_reduction(limit: u64, policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    if limit < 61 {
        return Err(invalid("limit must be at least 61"));
    }
    let mut r = CheckpointReport::new("LLI_REDUCTION");
    r.param("limit", limit);
    let p0 = policy.start_bits();
    let mut seq = HarmonicSeq::new();
    let mut sa: Option<(u64, u128, HarmonicSeq, Interval)> = None;
    let mut checked = 0u64;
    for item in crate::arith::sigma_sieve(1, limit, SieveConfig::default())? {
        let (m, s) = item?;
        seq.advance();
        let is_record = sa
            .as_ref()
            .is_none_or(|(n, sn, ..)| ratio_gt(s, m as u128, *sn, *n as u128));
        if is_record {
            let g = if m == 1 { Interval::zero(p0) } else { g_seq(&seq, m, p0)? };
            sa = Some((m, s, seq.clone(), g));
            continue;
        }
        let (n, sn, nseq, gn) = sa.as_ref().expect("1 is superabundant");
        let gm = g_seq(&seq, m, p0)?;
        let v = if gn.strictly_below(&gm) {
            Verdict::Holds
        } else {
            decide_intervals(
                |p| if *n == 1 { Ok(Interval::zero(p)) } else { g_seq(nseq, *n, p) },
                |p| g_seq(&seq, m, p),
                policy,
            )?
            .0
        };
        r.require(format!("g({n}) < g({m})"), v);
        let ab = if ratio_gt(*sn, *n as u128, s, m as u128) { Verdict::Holds } else { Verdict::Fails };
        r.require(format!("sigma({n})/{n} > sigma({m})/{m}"), ab);
        checked += 1;
    }
    r.witness(format!("{checked} non-superabundant m checked against their predecessor record"));
    r.finding("exact_harmonic_limit", EXACT_H_LIMIT);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(v: &[SAEntry]) -> Vec<u64> {
        v.iter().map(|e| e.factorization.to_u64().unwrap()).collect()
    }

    fn brute_records(limit: u64) -> Vec<u64> {
        let mut best = (0u128, 1u128);
        let mut out = Vec::new();
        for n in 1..=limit {
            let s: u128 = (1..=n).filter(|d| n % d == 0).map(|d| d as u128).sum();
            if s * best.1 > best.0 * n as u128 {
                best = (s, n as u128);
                out.push(n);
            }
        }
        out
    }

    #[test]
    fn scan_examples() {
        assert_eq!(values(&sa_scan(12, 1).unwrap()), vec![1, 2, 4, 6, 12]);
        assert_eq!(values(&sa_scan(120, 1).unwrap()), vec![1, 2, 4, 6, 12, 24, 36, 48, 60, 120]);
        assert_eq!(values(&sa_scan(1, 1).unwrap()), vec![1]);
        assert_eq!(values(&sa_scan(5000, 2).unwrap()), brute_records(5000));
    }

    #[test]
    fn generator_agrees_with_scan() {
        assert_eq!(values(&sa_generate(10).unwrap()), values(&sa_scan(120, 1).unwrap()));
        assert_eq!(values(&sa_generate(1).unwrap()), vec![1]);
        let scan = sa_scan(200_000, 2).unwrap();
        let gen = sa_generate(scan.len()).unwrap();
        assert_eq!(values(&gen), values(&scan));
        let thirty = sa_generate(30).unwrap();
        for w in thirty.windows(2) {
            assert!(w[0].abundancy < w[1].abundancy);
            assert!(w[0].n() < w[1].n());
        }
        for e in &thirty {
            let ex = e.exponents();
            assert!(ex.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn frontier_cap() {
        match sa_generate_with(40, 8) {
            Err(Error::FrontierExhausted { wanted, found, .. }) => {
                assert_eq!(wanted, 40);
                assert!(found < 40);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn largest_prime_diagnostic() {
        let v = sa_generate(40).unwrap();
        let ex = largest_prime_exponent_exceptions(&v);
        assert_eq!(ex, vec![BigUint::from(4u32), BigUint::from(36u32)]);
    }

    #[test]
    fn kl_and_reduction() {
        let pol = PrecisionPolicy::default();
        let (r, entries) = verify_kl_on_sa(20, &pol).unwrap();
        assert!(r.certified, "{r:?}");
        assert_eq!(entries.len(), 20);
        assert!(entries.iter().all(|e| e.kl_verdict == Some(Verdict::Holds)));
        assert_eq!(r.finding_value("excluded_at_most_60"), Some("1,2,4,6,12,24,36,48,60"));
        assert!(verify_lli_reduction(2000, &pol).unwrap().certified);
        assert!(verify_lli_reduction(60, &pol).is_err());
    }
}
