use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use robinv_core::arith::{factor, phi, sigma_u64};
use robinv_core::bounds::{a_exact, b_exact, FamilyParams, PrimeTable};
use robinv_core::numerics::{constants, decide, digamma, trigamma, Interval, PrecisionPolicy, Verdict};
use robinv_core::robin::robin_rhs;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-1_000_000i64..1_000_000, 1i64..100_000).prop_map(|(n, d)| rat(n, d))
}

fn pos_rat() -> impl Strategy<Value = BigRational> {
    (1i64..1_000_000, 1i64..10_000).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_operations_contain_exact_results(a in small_rat(), b in small_rat(), prec in 24u32..300) {
        let (x, y) = (Interval::from_ratio(&a, prec), Interval::from_ratio(&b, prec));
        prop_assert!(x.add(&y).contains_ratio(&(&a + &b)));
        prop_assert!(x.sub(&y).contains_ratio(&(&a - &b)));
        prop_assert!(x.mul(&y).contains_ratio(&(&a * &b)));
        if !b.is_zero() {
            prop_assert!(x.div(&y).unwrap().contains_ratio(&(&a / &b)));
        }
    }

    #[test]
    fn exp_and_ln_are_inverse_enclosures(q in small_rat(), prec in 32u32..400) {
        let x = Interval::from_ratio(&(q / BigInt::from(1000)), prec);
        let back = x.exp().unwrap().ln().unwrap();
        prop_assert!(back.contains_interval(&x) || back.overlaps(&x));
        prop_assert!(back.lo() <= x.lo() && x.hi() <= back.hi());
    }

    #[test]
    fn enclosures_nest_under_doubled_precision(q in pos_rat(), p in 32u32..300) {
        let xp = Interval::from_ratio(&q, p);
        let x2 = Interval::from_ratio(&q, 2 * p);
        prop_assert!(xp.ln().unwrap().contains_interval(&x2.ln().unwrap()));
        let e = Interval::from_ratio(&(&q / BigInt::from(1000)), p).exp().unwrap();
        let e2 = Interval::from_ratio(&(&q / BigInt::from(1000)), 2 * p).exp().unwrap();
        prop_assert!(e.contains_interval(&e2));
        prop_assert!(digamma(&xp, p).unwrap().contains_interval(&digamma(&x2, 2 * p).unwrap()));
        prop_assert!(trigamma(&xp, p).unwrap().contains_interval(&trigamma(&x2, 2 * p).unwrap()));
        prop_assert!(constants::gamma(p).contains_interval(&constants::gamma(2 * p)));
        prop_assert!(constants::pi(p).contains_interval(&constants::pi(2 * p)));
        prop_assert!(constants::c1(p).contains_interval(&constants::c1(2 * p)));
    }

    #[test]
    fn digamma_recurrence(q in pos_rat(), prec in 48u32..200) {
        let x = Interval::from_ratio(&q, prec + 20);
        let x1 = Interval::from_ratio(&(&q + BigInt::from(1)), prec + 20);
        let diff = digamma(&x1, prec).unwrap().sub(&digamma(&x, prec).unwrap());
        let inv = BigRational::new(q.denom().clone(), q.numer().clone());
        prop_assert!(diff.contains_ratio(&inv));
    }

    #[test]
    fn trigamma_is_positive(n in 1u64..10_000, d in 1u64..16) {
        let x = Interval::from_ratio(&BigRational::new((n * d).into(), d.into()), 64);
        prop_assert!(trigamma(&x, 64).unwrap().lo().is_positive());
    }

    #[test]
    fn sigma_and_phi_are_multiplicative(a in 1u64..1000, b in 1u64..1000) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        prop_assert_eq!(sigma_u64(a * b).unwrap(), sigma_u64(a).unwrap() * sigma_u64(b).unwrap());
        let ph = |n: u64| phi(&factor(n).unwrap());
        prop_assert_eq!(ph(a * b), ph(a) * ph(b));
    }

    #[test]
    fn robin_rhs_is_monotone(n in 3u64..1_000_000_000_000) {
        let (a, b) = (robin_rhs(n, 80).unwrap(), robin_rhs(n + 1, 80).unwrap());
        prop_assert!(a.lo() <= b.lo() && a.hi() <= b.hi());
    }

    #[test]
    fn family_product_is_totient_ratio(k in 1u64..200, j in 1u32..4) {
        prop_assume!(j as u64 <= k + 1);
        let f = FamilyParams::new(j, k).unwrap();
        let t = PrimeTable::for_k(k);
        let m: u64 = (1..=k + 1).filter(|&l| l != j as u64).map(|l| t.p(l)).fold(1u64, |acc, p| acc.saturating_mul(p));
        let ab = a_exact(f).unwrap() * b_exact(f).unwrap();
        if k <= 12 {
            let expect = BigRational::new(m.into(), phi(&factor(m).unwrap()).into());
            prop_assert_eq!(ab, expect);
        } else {
            let direct: BigRational = (1..=k + 1)
                .filter(|&l| l != j as u64)
                .map(|l| BigRational::new(BigInt::from(t.p(l)), BigInt::from(t.p(l) - 1)))
                .product();
            prop_assert_eq!(ab, direct);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decide_separates_offsets_of_1e_minus_20(q in small_rat()) {
        let shift = BigRational::new(1.into(), BigInt::from(10u32).pow(20));
        let target = &q + shift;
        let policy = PrecisionPolicy::new(64, 128, 2, 1).unwrap();
        let d = decide(&q, |p| Ok(Interval::from_ratio(&target, p)), &policy).unwrap();
        prop_assert_eq!(d.verdict, Verdict::Holds);
    }
}
