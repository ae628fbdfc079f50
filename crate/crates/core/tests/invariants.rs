use num_bigint::BigUint;
use num_rational::BigRational;

use robinv_core::arith::{chebyshev_theta, primes_up_to};
use robinv_core::bounds::{self, b_exact, FamilyParams, PrimeTable};
use robinv_core::lagarias::{
    check_kaneko_lagarias, harmonic, h_real, scan_kaneko_lagarias, scan_lagarias, HarmonicSeq,
};
use robinv_core::numerics::{constants, Interval, PrecisionPolicy, Verdict};
use robinv_core::robin::{check_robin, classify_counterexamples, density_estimate, scan_robin};
use robinv_core::superabundant::{largest_prime_exponent_exceptions, sa_generate, sa_scan};

fn divisor_sum(n: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s
}

#[test]
fn scan_agrees_with_pointwise_checks_to_1e5() {
    let pol = PrecisionPolicy::default();
    let scan = scan_robin(1, 100_000, &pol, 2).unwrap();
    let pointwise: Vec<u64> = (2..=100_000u64)
        .filter(|&n| check_robin(n, &pol).unwrap().verdict == Verdict::Fails)
        .collect();
    assert_eq!(scan.violators, pointwise);
    assert!(scan.undecidable.is_empty());
}

#[test]
fn no_odd_violator_above_9_and_unique_classes() {
    let pol = PrecisionPolicy::default();
    let c = classify_counterexamples(1_000_000, &pol, 2).unwrap();
    assert!(c.report.certified);
    assert!(c.rows.iter().filter(|r| r.k == 0).all(|r| r.n <= 9));
    for r in &c.rows {
        assert_eq!(r.n, r.odd_part << r.k);
        assert_eq!(r.odd_part % 2, 1);
        assert!(r.within_bound.holds());
    }
}

#[test]
fn density_numerator_is_stable_beyond_5040() {
    let pol = PrecisionPolicy::default();
    let (d1, v1) = density_estimate(5040, &pol, 1).unwrap();
    let mut prev = d1;
    for limit in [10_000u64, 100_000, 1_000_000] {
        let (d, v) = density_estimate(limit, &pol, 2).unwrap();
        assert_eq!(v, v1);
        assert!(d <= prev);
        prev = d;
    }
}

#[test]
fn theta_is_monotone_on_a_sample() {
    let xs = [2u64, 3, 10, 100, 529, 1000, 4096, 10_000];
    let th: Vec<Interval> = xs.iter().map(|&x| chebyshev_theta(x, 96).unwrap()).collect();
    for w in th.windows(2) {
        assert!(w[0].lo() <= w[1].lo() && w[0].hi() <= w[1].hi());
    }
}

#[test]
fn digamma_reproduces_harmonic_numbers_to_1000() {
    let mut seq = HarmonicSeq::new();
    for n in 1..=1000u64 {
        seq.advance();
        let p = h_real(&BigRational::from_integer(n.into()), 96).unwrap();
        assert!(p.h.contains_ratio(&seq.value()), "{n}");
    }
    assert_eq!(harmonic(1000).unwrap().value, seq.value());
}

#[test]
fn bound_sweeps() {
    let table = PrimeTable::for_k(500);
    for k in 1..=500u64 {
        for j in 1..=3u32 {
            let Ok(f) = FamilyParams::new(j, k) else { continue };
            if j as u64 > k + 1 {
                continue;
            }
            if k >= 2 {
                let a = table.a_exact(f).unwrap();
                let up = table.a_upper(f, 64).unwrap();
                assert!(Interval::from_ratio(&a, 64).strictly_below(&up), "A sandwich at k={k}, j={j}");
            }
        }
    }
    let zeta2 = constants::zeta2(128);
    for j in 1..=3u32 {
        let pj = table.p(j as u64);
        let fac = BigRational::new((pj * pj).into(), (pj * pj - 1).into());
        let mut prev: Option<BigRational> = None;
        for k in (j as u64).max(2)..=300 {
            let b = b_exact(FamilyParams::new(j, k).unwrap()).unwrap() * &fac;
            assert!(Interval::from_ratio(&b, 128).strictly_below(&zeta2), "k={k}, j={j}");
            if let Some(p) = &prev {
                assert!(b > *p);
            }
            prev = Some(b);
        }
    }
}

#[test]
fn prime_bounds_bracket_sieve_primes() {
    let ps = primes_up_to(120_000);
    for k in 6..=10_000u64 {
        let (lo, hi) = bounds::prime_bounds(k, 64).unwrap();
        let p = Interval::from_int(ps[k as usize - 1], 64);
        assert!(lo.strictly_below(&p) && p.strictly_below(&hi), "k={k}");
    }
}

#[test]
fn theta_certificate_on_samples() {
    for (lo, hi) in [(529u64, 2000u64), (99_000, 100_000), (999_000, 1_000_000)] {
        let c = bounds::theta_certificate(lo, hi, 64).unwrap();
        assert_eq!(c.verdict, Verdict::Holds, "[{lo}, {hi}]");
    }
}

#[test]
fn kaneko_lagarias_exceptions_match_float_oracle() {
    let pol = PrecisionPolicy::default();
    let scan = scan_kaneko_lagarias(10_000, &pol).unwrap();
    let mut h = 0.0f64;
    let mut oracle = Vec::new();
    for n in 1..=10_000u64 {
        h += 1.0 / n as f64;
        let rhs = h.exp() * h.ln();
        let s = divisor_sum(n) as f64;
        assert!(n == 1 || ((rhs - s) / s).abs() > 1e-9, "near tie at {n}");
        if s >= rhs {
            oracle.push(n);
        }
    }
    assert_eq!(scan.failures, oracle);
    assert!(scan.failures.iter().all(|&n| n <= 60));
    for n in [60u64, 61, 120, 5040] {
        let expect = if n == 60 { Verdict::Fails } else { Verdict::Holds };
        assert_eq!(check_kaneko_lagarias(n, &pol).unwrap().verdict, expect);
    }
}

#[test]
fn lagarias_holds_to_1e5_and_robin_implies_kl_pointwise() {
    let pol = PrecisionPolicy::default();
    assert_eq!(scan_lagarias(100_000, &pol).unwrap().failures, vec![1]);
    let robin = scan_robin(3, 100_000, &pol, 2).unwrap();
    let kl = scan_kaneko_lagarias(100_000, &pol).unwrap();
    for n in kl.failures.iter().filter(|&&n| n >= 3) {
        assert!(robin.violators.contains(n), "{n} fails KL while Robin holds");
    }
}

#[test]
fn superabundant_generator_matches_scan_to_1e7() {
    let scan = sa_scan(10_000_000, 2).unwrap();
    let gen = sa_generate(scan.len() + 5).unwrap();
    assert_eq!(&gen[..scan.len()], &scan[..]);
    assert!(gen[scan.len()].n() > BigUint::from(10_000_000u32));
    for e in &gen {
        assert!(e.exponents().windows(2).all(|w| w[0] >= w[1]));
    }
    assert_eq!(
        largest_prime_exponent_exceptions(&gen),
        vec![BigUint::from(4u32), BigUint::from(36u32)]
    );
}
