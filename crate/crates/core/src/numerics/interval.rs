//! Closed real intervals with dyadic endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::constants;
use super::dyadic::{Dyadic, Round};
use crate::error::{domain, Error, Result};

/// Enclosure `[lo, hi]` of a real number at a working precision of `prec` bits.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

pub(crate) const MIN_PREC: u32 = 8;

impl Interval {
    /// Build from endpoints, rounding them outward to `prec`. Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Interval::new(x.clone(), x, prec)
    }

    pub fn from_int<T: Into<BigInt>>(n: T, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::point(Dyadic::one(), prec)
    }

    /// Enclosure of an exact rational.
    pub fn from_ratio(q: &BigRational, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let (n, d) = (q.numer(), q.denom());
        Interval {
            lo: Dyadic::from_ratio(n, d, prec, Round::Down),
            hi: Dyadic::from_ratio(n, d, prec, Round::Up),
            prec,
        }
    }

    pub fn from_frac(num: i64, den: i64, prec: u32) -> Self {
        Interval::from_ratio(&BigRational::new(num.into(), den.into()), prec)
    }

    /// Enclosure of a decimal literal such as `"2.51"` (exact value, rounded outward).
    pub fn from_decimal(lit: &str, prec: u32) -> Self {
        let (n, d) = Dyadic::parse_decimal(lit);
        Interval::from_ratio(&BigRational::new(n, d), prec)
    }

    /// `x` exactly representable in `f64`; used for grid points and thresholds.
    pub fn from_f64(x: f64, prec: u32) -> Result<Self> {
        let d = Dyadic::from_f64(x).ok_or_else(|| Error::InvalidInput(format!("non-finite {x}")))?;
        Ok(Interval::point(d, prec))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Re-round outward to a new precision. Reducing precision widens; raising it is a no-op
    /// on the endpoints.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn is_thin(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_ratio(&self, q: &BigRational) -> bool {
        self.lo.cmp_ratio(q.numer(), q.denom()) != Ordering::Greater
            && self.hi.cmp_ratio(q.numer(), q.denom()) != Ordering::Less
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Intersection, if nonempty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    /// Widen symmetrically by `r >= 0`.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        let p = self.prec;
        Interval {
            lo: self.lo.add_round(&-r, p, Round::Down),
            hi: self.hi.add_round(r, p, Round::Up),
            prec: p,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.ldexp(k),
            hi: self.hi.ldexp(k),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let p = self.prec.max(other.prec);
        Interval {
            lo: self.lo.add_round(&other.lo, p, Round::Down),
            hi: self.hi.add_round(&other.hi, p, Round::Up),
            prec: p,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = self.prec.max(other.prec);
        if !self.lo.is_negative() && !other.lo.is_negative() {
            return Interval {
                lo: self.lo.mul_round(&other.lo, p, Round::Down),
                hi: self.hi.mul_round(&other.hi, p, Round::Up),
                prec: p,
            };
        }
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = cands.iter().min().unwrap().round(p, Round::Down);
        let hi = cands.iter().max().unwrap().round(p, Round::Up);
        Interval { lo, hi, prec: p }
    }

    pub fn mul_int(&self, n: i64) -> Interval {
        self.mul(&Interval::from_int(n, self.prec))
    }

    pub fn sqr(&self) -> Interval {
        let p = self.prec;
        if self.contains_zero() {
            let m = self.mag();
            return Interval {
                lo: Dyadic::zero(),
                hi: m.mul_round(&m, p, Round::Up),
                prec: p,
            };
        }
        let a = self.lo.abs();
        let b = self.hi.abs();
        let (small, large) = if a < b { (a, b) } else { (b, a) };
        Interval {
            lo: small.mul_round(&small, p, Round::Down),
            hi: large.mul_round(&large, p, Round::Up),
            prec: p,
        }
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(domain("division by an interval containing zero"));
        }
        let p = self.prec.max(other.prec);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, p, Round::Down))
            .min()
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, p, Round::Up))
            .max()
            .unwrap();
        Ok(Interval { lo, hi, prec: p })
    }

    pub fn div_int(&self, n: i64) -> Result<Interval> {
        self.div(&Interval::from_int(n, self.prec))
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::one(self.prec).div(self)
    }

    /// Integer power by repeated squaring; negative exponents go through `recip`.
    pub fn powi(&self, n: i32) -> Result<Interval> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut base = self.clone();
        let mut acc = Interval::one(self.prec);
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        self.root(2)
    }

    pub fn cbrt(&self) -> Result<Interval> {
        self.root(3)
    }

    fn root(&self, n: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(domain(format!("root of degree {n} of a negative interval")));
        }
        let p = self.prec;
        Ok(Interval {
            lo: self.lo.root_round(n, p, Round::Down).unwrap(),
            hi: self.hi.root_round(n, p, Round::Up).unwrap(),
            prec: p,
        })
    }

    /// Natural logarithm. Requires `lo > 0`.
    pub fn ln(&self) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(domain("logarithm of an interval touching zero"));
        }
        let p = self.prec;
        if self.is_thin() {
            return Ok(ln_point(&self.lo, p));
        }
        let lo = ln_point(&self.lo, p).lo;
        let hi = ln_point(&self.hi, p).hi;
        Ok(Interval { lo, hi, prec: p })
    }

    pub fn exp(&self) -> Result<Interval> {
        let p = self.prec;
        if self.is_thin() {
            return exp_point(&self.lo, p);
        }
        let lo = exp_point(&self.lo, p)?.lo;
        let hi = exp_point(&self.hi, p)?.hi;
        Ok(Interval { lo, hi, prec: p })
    }

    /// Endpoint strings for reports: `digits` significant digits, rounded outward.
    pub fn lo_string(&self, digits: u32) -> String {
        self.lo.to_sci_string(digits, Round::Down)
    }

    pub fn hi_string(&self, digits: u32) -> String {
        self.hi.to_sci_string(digits, Round::Up)
    }

    /// Decimal digits that faithfully reflect the working precision.
    pub fn report_digits(&self) -> u32 {
        ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as u32 + 1
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]@{}", self.lo_string(20), self.hi_string(20), self.prec)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.report_digits().min(24);
        write!(f, "[{}, {}]", self.lo_string(d), self.hi_string(d))
    }
}

fn guard_bits(prec: u32) -> u32 {
    prec + 24 + (32 - prec.leading_zeros())
}

/// Enclosure of `ln x` for a single positive dyadic, at precision `prec`.
fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    if *x == Dyadic::one() {
        return Interval::zero(prec);
    }
    let top = x.top();
    // x = m * 2^t with m in [0.75, 1.5)
    let mut t = top - 1;
    let leading_two = if x.bits() >= 2 {
        (x.mantissa().magnitude() >> (x.bits() - 2)) == num_bigint::BigUint::from(3u32)
    } else {
        false
    };
    if leading_two {
        t += 1;
    }
    let w = guard_bits(prec) + (64 - (t.unsigned_abs()).leading_zeros());
    let m = Interval::point(x.ldexp(-t), w);
    let one = Interval::one(w);
    let s = m.sub(&one).div(&m.add(&one)).expect("m + 1 > 0");
    let z = s.sqr();
    let eps = Dyadic::new(BigInt::from(1), -(w as i64) - 4);
    let mut sum = Interval::zero(w);
    let mut power = s.clone();
    let mut k: i64 = 0;
    loop {
        let term = power.div_int(2 * k + 1).expect("nonzero");
        sum = sum.add(&term);
        power = power.mul(&z);
        k += 1;
        if power.mag() < eps || power.is_thin() && power.lo.is_zero() {
            break;
        }
    }
    // tail: sum_{i>=k} |s| z^i / (2i+1) <= |power| / ((2k+1)(1 - z)) <= 2|power|
    let tail = power.mag().ldexp(1);
    let series = sum.inflate(&tail).ldexp(1);
    let result = if t == 0 {
        series
    } else {
        series.add(&constants::ln2(w).mul_int(t))
    };
    result.with_prec(prec)
}

/// Enclosure of `exp x` for a single dyadic.
fn exp_point(x: &Dyadic, prec: u32) -> Result<Interval> {
    if x.is_zero() {
        return Ok(Interval::one(prec));
    }
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() >= 4.0e15 {
        return Err(Error::Overflow(format!("exp argument {xf:e} out of range")));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let halvings: u32 = ((prec as f64).sqrt() as u32 / 2).clamp(4, 40);
    let w = guard_bits(prec) + halvings + (64 - k.unsigned_abs().leading_zeros());
    let xi = Interval::point(x.clone(), w);
    let r = if k == 0 {
        xi
    } else {
        xi.sub(&constants::ln2(w).mul_int(k))
    };
    let r = r.ldexp(-(halvings as i64));
    let eps = Dyadic::new(BigInt::from(1), -(w as i64) - 4);
    let mut sum = Interval::one(w);
    let mut term = Interval::one(w);
    let mut i: i64 = 1;
    loop {
        term = term.mul(&r).div_int(i).expect("nonzero");
        sum = sum.add(&term);
        i += 1;
        if term.mag() < eps {
            break;
        }
    }
    // |r| < 1/2, so the tail after the last term is at most |term| |r| * 2 <= |term|
    let tail = term.mag();
    let mut y = sum.inflate(&tail);
    for _ in 0..halvings {
        y = y.sqr();
    }
    Ok(y.ldexp(k).with_prec(prec))
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval::zero(64)
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl std::ops::Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(&self, &rhs)
    }
}

impl<'a> std::ops::Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl<'a> std::ops::Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl<'a> std::ops::Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl std::ops::Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

/// Compare an exact rational with an interval: `Less` if `q < lo`, `Greater` if `q > hi`,
/// `Equal` when `q` lies inside.
pub fn cmp_ratio_interval(q: &BigRational, x: &Interval) -> Ordering {
    if x.lo().cmp_ratio(q.numer(), q.denom()) == Ordering::Greater {
        Ordering::Less
    } else if x.hi().cmp_ratio(q.numer(), q.denom()) == Ordering::Less {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(x: f64) -> Interval {
        Interval::from_f64(x, 64).unwrap()
    }

    #[test]
    fn exp_log_round_trip_contains_input() {
        let two = iv(2.0);
        let back = two.ln().unwrap().exp().unwrap();
        assert!(back.contains(&Dyadic::from_int(2)));
        let one = Interval::one(64);
        let l = one.exp().unwrap().ln().unwrap();
        assert!(l.contains(&Dyadic::one()));
    }

    #[test]
    fn ln_known_values() {
        let l = iv(10.0).ln().unwrap();
        assert!(l.lo().to_f64() <= std::f64::consts::LN_10);
        assert!(l.hi().to_f64() >= std::f64::consts::LN_10);
        assert!(l.width().to_f64() < 1e-17);
        let small = iv(0.001).ln().unwrap();
        assert!((small.mid_f64() - 0.001f64.ln()).abs() < 1e-15);
        assert_eq!(Interval::one(64).ln().unwrap(), Interval::zero(64));
    }

    #[test]
    fn exp_known_values() {
        let e = Interval::one(128).exp().unwrap();
        let lo = BigRational::new(2718281828459045235i64.into(), 1_000_000_000_000_000_000i64.into());
        let hi = BigRational::new(2718281828459045236i64.into(), 1_000_000_000_000_000_000i64.into());
        assert!(!e.contains_ratio(&lo) && !e.contains_ratio(&hi));
        assert!(Interval::from_ratio(&lo, 128).strictly_below(&e));
        assert!(e.strictly_below(&Interval::from_ratio(&hi, 128)));
        let big = iv(700.0).exp().unwrap();
        assert!((big.mid_f64() / 700f64.exp() - 1.0).abs() < 1e-14);
        let neg = iv(-30.5).exp().unwrap();
        assert!((neg.mid_f64() / (-30.5f64).exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(Interval::zero(64).ln().is_err());
        let straddle = Interval::new(Dyadic::from_int(-1), Dyadic::one(), 64);
        assert!(iv(1.0).div(&straddle).is_err());
        assert!(straddle.sqrt().is_err());
    }

    #[test]
    fn mul_with_signs() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3), 32);
        let b = Interval::new(Dyadic::from_int(-5), Dyadic::from_int(4), 32);
        let c = a.mul(&b);
        assert_eq!(c.lo(), &Dyadic::from_int(-15));
        assert_eq!(c.hi(), &Dyadic::from_int(12));
        assert_eq!(a.sqr().lo(), &Dyadic::zero());
    }

    #[test]
    fn powi_and_roots() {
        let x = iv(1.5);
        let p = x.powi(5).unwrap();
        assert!(p.contains_ratio(&BigRational::new(243.into(), 32.into())));
        let r = iv(8.0).cbrt().unwrap();
        assert!(r.contains(&Dyadic::from_int(2)));
    }
}
