//! Segmented sum-of-divisors sieve.

use num_integer::Roots;

use super::primes::primes_up_to;
use crate::error::{invalid, Error, Result};

/// Segment geometry for [`sigma_sieve`] and [`map_segments`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    pub segment_size: u64,
    pub max_segments: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: 1 << 16,
            max_segments: 1 << 26,
        }
    }
}

impl SieveConfig {
    pub fn with_segment_size(segment_size: u64) -> Result<Self> {
        if segment_size == 0 {
            return Err(invalid("segment size must be positive"));
        }
        Ok(SieveConfig {
            segment_size,
            ..SieveConfig::default()
        })
    }

    fn check(&self, lo: u64, hi: u64) -> Result<u64> {
        if lo == 0 || lo > hi {
            return Err(invalid(format!("sieve range [{lo}, {hi}] requires 1 <= lo <= hi")));
        }
        if self.segment_size == 0 {
            return Err(invalid("segment size must be positive"));
        }
        let segments = (hi - lo) / self.segment_size + 1;
        if segments > self.max_segments {
            return Err(Error::ResourceExhausted(format!(
                "{segments} segments exceed the cap of {}",
                self.max_segments
            )));
        }
        Ok(segments)
    }

    /// `i`-th segment of `[lo, hi]` as an inclusive range.
    pub fn segment(&self, lo: u64, hi: u64, i: u64) -> (u64, u64) {
        let a = lo + i * self.segment_size;
        (a, hi.min(a.saturating_add(self.segment_size - 1)))
    }
}

fn alloc<T: Clone>(len: usize, fill: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|e| Error::ResourceExhausted(format!("segment of {len} entries: {e}")))?;
    v.resize(len, fill);
    Ok(v)
}

/// `sigma(n)` for every `n` in `[a, b]`, given all primes up to `sqrt(b)`.
pub fn sigma_segment(a: u64, b: u64, primes: &[u64]) -> Result<Vec<u128>> {
    debug_assert!(1 <= a && a <= b);
    let len = usize::try_from(b - a + 1).map_err(|_| invalid("segment too long"))?;
    let mut rest: Vec<u64> = alloc(len, 0)?;
    for (i, r) in rest.iter_mut().enumerate() {
        *r = a + i as u64;
    }
    let mut sig: Vec<u128> = alloc(len, 1)?;
    for &p in primes {
        if p.saturating_mul(p) > b {
            break;
        }
        let mut m = a.div_ceil(p) * p;
        while m <= b {
            let i = (m - a) as usize;
            let mut pk: u128 = 1;
            let mut sum: u128 = 1;
            while rest[i].is_multiple_of(p) {
                rest[i] /= p;
                pk *= p as u128;
                sum += pk;
            }
            sig[i] *= sum;
            m = match m.checked_add(p) {
                Some(next) => next,
                None => break,
            };
        }
    }
    for (s, &r) in sig.iter_mut().zip(&rest) {
        if r > 1 {
            *s *= r as u128 + 1;
        }
    }
    Ok(sig)
}

/// Primes needed to sieve up to `hi`.
pub fn sieve_primes(hi: u64) -> Vec<u64> {
    primes_up_to(hi.sqrt() + 1)
}

/// An in-order stream of `(n, sigma(n))` over `[lo, hi]`, one segment at a time.
pub struct SigmaSieve {
    lo: u64,
    hi: u64,
    cfg: SieveConfig,
    primes: Vec<u64>,
    next_segment: u64,
    segments: u64,
    buf: Vec<u128>,
    buf_start: u64,
    pos: usize,
}

impl Iterator for SigmaSieve {
    type Item = Result<(u64, u128)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos == self.buf.len() {
            if self.next_segment == self.segments {
                return None;
            }
            let (a, b) = self.cfg.segment(self.lo, self.hi, self.next_segment);
            self.next_segment += 1;
            match sigma_segment(a, b, &self.primes) {
                Ok(buf) => {
                    self.buf = buf;
                    self.buf_start = a;
                    self.pos = 0;
                }
                Err(e) => {
                    self.next_segment = self.segments;
                    self.buf.clear();
                    self.pos = 0;
                    return Some(Err(e));
                }
            }
        }
        let n = self.buf_start + self.pos as u64;
        let s = self.buf[self.pos];
        self.pos += 1;
        Some(Ok((n, s)))
    }
}

/// Stream every `(n, sigma(n))` with `lo <= n <= hi` in increasing order.
pub fn sigma_sieve(lo: u64, hi: u64, cfg: SieveConfig) -> Result<SigmaSieve> {
    let segments = cfg.check(lo, hi)?;
    Ok(SigmaSieve {
        lo,
        hi,
        cfg,
        primes: sieve_primes(hi),
        next_segment: 0,
        segments,
        buf: Vec::new(),
        buf_start: lo,
        pos: 0,
    })
}

/// Apply `f(segment_start, sigmas)` to every segment of `[lo, hi]` and return the results in
/// segment order. Segments run on up to `workers` threads when the `parallel` feature is on.
pub fn map_segments<R, F>(lo: u64, hi: u64, cfg: SieveConfig, workers: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64, &[u128]) -> Result<R> + Sync,
{
    map_segment_range(lo, hi, cfg, workers, 0, u64::MAX, f)
}

/// Like [`map_segments`] but only for segment indices in `[first, last]`.
pub fn map_segment_range<R, F>(
    lo: u64,
    hi: u64,
    cfg: SieveConfig,
    workers: usize,
    first: u64,
    last: u64,
    f: F,
) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64, &[u128]) -> Result<R> + Sync,
{
    let segments = cfg.check(lo, hi)?;
    let last = last.min(segments - 1);
    if first > last {
        return Ok(Vec::new());
    }
    let primes = sieve_primes(hi);
    let run = |i: u64| {
        let (a, b) = cfg.segment(lo, hi, i);
        let sig = sigma_segment(a, b, &primes)?;
        f(a, &sig)
    };
    run_indexed(first, last, workers, run)
}

#[cfg(feature = "parallel")]
pub(crate) fn run_indexed<R, F>(first: u64, last: u64, workers: usize, run: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64) -> Result<R> + Sync,
{
    use rayon::prelude::*;
    if workers <= 1 || first == last {
        return (first..=last).map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ResourceExhausted(format!("worker pool: {e}")))?;
    pool.install(|| (first..=last).into_par_iter().map(&run).collect())
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_indexed<R, F>(first: u64, last: u64, _workers: usize, run: F) -> Result<Vec<R>>
where
    F: Fn(u64) -> Result<R>,
{
    (first..=last).map(run).collect()
}

/// Number of segments covering `[lo, hi]`.
pub fn segment_count(lo: u64, hi: u64, cfg: SieveConfig) -> Result<u64> {
    cfg.check(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factor, sigma};
    use rand::{Rng, SeedableRng};

    fn divisor_sum(n: u64) -> u128 {
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as u128).sum()
    }

    fn collect(lo: u64, hi: u64, cfg: SieveConfig) -> Vec<(u64, u128)> {
        sigma_sieve(lo, hi, cfg).unwrap().map(|r| r.unwrap()).collect()
    }

    #[test]
    fn small_ranges() {
        let cfg = SieveConfig::default();
        let got: Vec<u128> = collect(1, 10, cfg).into_iter().map(|(_, s)| s).collect();
        assert_eq!(got, vec![1, 3, 4, 7, 6, 12, 8, 15, 13, 18]);
        assert_eq!(collect(5040, 5041, cfg), vec![(5040, 19344), (5041, 5113)]);
        assert_eq!(collect(1, 1, cfg), vec![(1, 1)]);
    }

    #[test]
    fn tiny_segments_match_oracle() {
        let cfg = SieveConfig::with_segment_size(7).unwrap();
        let got = collect(1, 2000, cfg);
        assert_eq!(got.len(), 2000);
        for (n, s) in got {
            assert_eq!(s, divisor_sum(n), "{n}");
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        let cfg = SieveConfig::default();
        assert!(sigma_sieve(0, 5, cfg).is_err());
        assert!(sigma_sieve(6, 5, cfg).is_err());
        let capped = SieveConfig {
            segment_size: 10,
            max_segments: 3,
        };
        assert!(matches!(sigma_sieve(1, 100, capped), Err(Error::ResourceExhausted(_))));
        assert!(sigma_sieve(1, 30, capped).is_ok());
    }

    #[test]
    fn random_sample_matches_factorization_route() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let cfg = SieveConfig::with_segment_size(4096).unwrap();
        for _ in 0..4 {
            let lo = rng.gen_range(1..1_000_000_000_000u64);
            let hi = lo + 2499;
            for (n, s) in collect(lo, hi, cfg) {
                assert_eq!(s, sigma(&factor(n).unwrap()).try_into().unwrap(), "{n}");
            }
        }
    }

    #[test]
    fn large_range() {
        let cfg = SieveConfig::default();
        let hi = 1_000_000_000_000_000u64;
        let got = collect(hi - 200, hi, cfg);
        assert_eq!(got.len(), 201);
        for (n, s) in got {
            assert_eq!(s, sigma(&factor(n).unwrap()).try_into().unwrap(), "{n}");
        }
    }

    #[test]
    fn parallel_segments_are_ordered() {
        let cfg = SieveConfig::with_segment_size(100).unwrap();
        let starts = map_segments(1, 10_000, cfg, 4, |a, sig| Ok((a, sig.len()))).unwrap();
        assert_eq!(starts.len(), 100);
        for (i, &(a, len)) in starts.iter().enumerate() {
            assert_eq!(a, 1 + 100 * i as u64);
            assert_eq!(len, 100);
        }
        let sub = map_segment_range(1, 10_000, cfg, 2, 98, 500, |a, _| Ok(a)).unwrap();
        assert_eq!(sub, vec![9801, 9901]);
    }
}
