//! Mathematical constants as outward-rounded enclosures.
//!
//! The trust root is the set of decimal literals in `literals.rs`. Each literal is turned
//! into a dyadic enclosure once (at [`STORED_BITS`]) and re-rounded outward on demand,
//! which makes every constant nested under precision increase.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use super::literals;

/// Precision of the cached enclosures. Requests above this saturate at the literal accuracy.
pub const STORED_BITS: u32 = 4300;

struct Stored {
    lo: Dyadic,
    hi: Dyadic,
}

fn parse(lit: &str) -> Stored {
    let (n, d) = Dyadic::parse_decimal(lit);
    let lo = Dyadic::from_ratio(&(&n - BigInt::from(1)), &d, STORED_BITS, Round::Down);
    let hi = Dyadic::from_ratio(&(&n + BigInt::from(1)), &d, STORED_BITS, Round::Up);
    Stored { lo, hi }
}

macro_rules! stored_constant {
    ($(#[$doc:meta])* $name:ident, $lit:path) => {
        $(#[$doc])*
        pub fn $name(prec: u32) -> Interval {
            static CELL: OnceLock<Stored> = OnceLock::new();
            let s = CELL.get_or_init(|| parse($lit));
            Interval::new(s.lo.clone(), s.hi.clone(), prec)
        }
    };
}

stored_constant!(
    /// Euler-Mascheroni constant.
    gamma,
    literals::GAMMA
);
stored_constant!(
    /// pi.
    pi,
    literals::PI
);
stored_constant!(
    /// log 2.
    ln2,
    literals::LN2
);
stored_constant!(
    /// log 10.
    ln10,
    literals::LN10
);
stored_constant!(
    /// log 2.51, the constant in the lower bound on prime products.
    ln_2_51,
    literals::LN_2_51
);
stored_constant!(
    /// The Mertens-sum constant `c1 = lim (sum_{p<=x} 1/p - log log x) ~ 0.261497`.
    c1,
    literals::MERTENS
);

type Memo = Mutex<HashMap<u32, Interval>>;

fn memoized(cell: &'static OnceLock<Memo>, prec: u32, f: impl FnOnce() -> Interval) -> Interval {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = f();
    map.lock().unwrap().insert(prec, v.clone());
    v
}

/// `e^gamma ~ 1.78107`.
pub fn exp_gamma(prec: u32) -> Interval {
    static CELL: OnceLock<Memo> = OnceLock::new();
    memoized(&CELL, prec, || {
        gamma(prec + 16)
            .exp()
            .expect("exp of gamma")
            .with_prec(prec)
    })
}

/// `pi^2`.
pub fn pi_sq(prec: u32) -> Interval {
    static CELL: OnceLock<Memo> = OnceLock::new();
    memoized(&CELL, prec, || pi(prec + 8).sqr().with_prec(prec))
}

/// `pi^2 / 6 = zeta(2)`.
pub fn zeta2(prec: u32) -> Interval {
    pi_sq(prec + 8).div_int(6).expect("nonzero").with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn dec(s: &str) -> BigRational {
        let (n, d) = Dyadic::parse_decimal(s);
        BigRational::new(n, d)
    }

    #[test]
    fn gamma_brackets_reference() {
        let g = gamma(53);
        let bracket = Interval::from_ratio(&dec("0.5772156649"), 64)
            .hull(&Interval::from_ratio(&dec("0.5772156650"), 64));
        assert!(bracket.contains_interval(&g));
        assert!(g.contains_ratio(&dec("0.57721566490153286060651209008240243104215933593992")));
        for prec in [24, 32, 64] {
            let g = gamma(prec);
            // five-digit bracket 0.57721 < gamma < 0.57722
            assert!(g.lo().cmp_ratio(&57721.into(), &100000.into()).is_gt());
            assert!(g.hi().cmp_ratio(&57722.into(), &100000.into()).is_lt());
        }
    }

    #[test]
    fn gamma_width_contract() {
        for prec in [16u32, 53, 64, 200, 1000, 4000] {
            let w = gamma(prec).width();
            let bound = Dyadic::new(1.into(), 2 - prec as i64);
            assert!(w <= bound, "prec {prec}");
        }
        let w64 = gamma(64).width();
        let w128 = gamma(128).width();
        assert!(w128.ldexp(1) <= w64);
    }

    #[test]
    fn nesting_under_precision_increase() {
        for f in [gamma, pi, ln2, ln10, ln_2_51, c1] {
            for p in [16u32, 40, 64, 100, 256] {
                assert!(f(p).contains_interval(&f(2 * p)));
            }
        }
    }

    #[test]
    fn c1_value() {
        let c = c1(53);
        assert!(c.contains_ratio(&dec("0.261497212847642783755")));
        let c = c1(64);
        assert!(c.width().to_f64() <= 1e-6);
    }

    #[test]
    fn derived_constants_agree_with_series_evaluations() {
        // log 2.51 from the literal versus the series logarithm of 251/100
        let direct = Interval::from_frac(251, 100, 200).ln().unwrap();
        assert!(direct.overlaps(&ln_2_51(200)));
        let l10 = Interval::from_int(10, 300).ln().unwrap();
        assert!(l10.overlaps(&ln10(300)));
        let eg = exp_gamma(64);
        assert!((eg.mid_f64() - 1.781_072_417_990_198).abs() < 1e-14);
        let z2 = zeta2(64);
        assert!((z2.mid_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn pi_matches_machin_formula() {
        // pi = 16 atan(1/5) - 4 atan(1/239), summed with an alternating-tail bound
        let prec = 400;
        let atan_inv = |q: i64| {
            let x = Interval::from_frac(1, q, prec + 20);
            let x2 = x.sqr();
            let mut pw = x.clone();
            let mut sum = Interval::zero(prec + 20);
            let mut k = 0i64;
            let eps = Dyadic::new(1.into(), -(prec as i64) - 30);
            loop {
                let t = pw.div_int(2 * k + 1).unwrap();
                sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
                pw = pw.mul(&x2);
                k += 1;
                if pw.mag() < eps {
                    return sum.inflate(&pw.mag());
                }
            }
        };
        let machin = atan_inv(5).mul_int(16).sub(&atan_inv(239).mul_int(4));
        assert!(machin.overlaps(&pi(prec)));
        assert!(machin.width().to_f64() < 1e-100);
    }
}
