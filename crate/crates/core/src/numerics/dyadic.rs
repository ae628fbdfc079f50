//! Dyadic rationals `mant * 2^exp` with directed rounding.
//!
//! Every inexact operation takes an explicit precision (in bits of mantissa) and a
//! rounding direction. Exact operations (`add`, `sub`, `mul`, `ldexp`) never round.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// An exact binary fraction. Normalized: the mantissa is odd, or zero with `exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shift_floor(u: &BigUint, s: u64) -> BigUint {
    u >> s
}

fn shift_ceil(u: &BigUint, s: u64) -> BigUint {
    let q = u >> s;
    let exact = u.is_zero() || u.trailing_zeros().unwrap_or(0) >= s;
    if exact {
        q
    } else {
        q + 1u32
    }
}

/// Round magnitude `u` (of a number with sign `neg`) to a multiple of 2^s in direction `dir`.
fn shift_directed(u: &BigUint, s: u64, neg: bool, dir: Round) -> BigUint {
    // rounding toward -inf shrinks positive magnitudes and grows negative ones
    match (dir, neg) {
        (Round::Down, false) | (Round::Up, true) => shift_floor(u, s),
        (Round::Up, false) | (Round::Down, true) => shift_ceil(u, s),
    }
}

fn signed(neg: bool, u: BigUint) -> BigInt {
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, u)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// Exact conversion; `None` for non-finite input.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let m = BigInt::from(m);
        Some(Dyadic::new(if neg { -m } else { m }, e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position just above the leading bit: `2^(top-1) <= |x| < 2^top`. Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        let neg = self.is_negative();
        let m = shift_directed(self.mant.magnitude(), s, neg, dir);
        Dyadic::new(signed(neg, m), self.exp + s as i64)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&-other)
    }

    /// Rounded sum that avoids materializing huge exponent gaps.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let floor_pos = big.top() - prec as i64 - 4;
        if small.top() < floor_pos && small.top() < big.exp {
            // `small` is below every retained bit of `big`: substitute a sticky bit
            // (or nothing) on the side that keeps the directed bound valid.
            let sticky_pos = floor_pos.min(big.exp) - 1;
            let pushes_up = small.is_positive();
            let sticky = match (dir, pushes_up) {
                (Round::Up, true) => Dyadic::new(BigInt::one(), sticky_pos),
                (Round::Down, false) => Dyadic::new(-BigInt::one(), sticky_pos),
                _ => Dyadic::zero(),
            };
            return big.add(&sticky).round(prec, dir);
        }
        self.add(other).round(prec, dir)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.mul(other).round(prec, dir)
    }

    /// Quotient rounded to `prec` bits. Panics on division by zero.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let neg = self.is_negative() != other.is_negative();
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let want = prec as i64 + 2;
        let s = (want + b.bits() as i64 - a.bits() as i64).max(0) as u64;
        let (q, r) = (a << s).div_rem(b);
        let q = if r.is_zero() {
            q
        } else {
            match (dir, neg) {
                (Round::Down, false) | (Round::Up, true) => q,
                _ => q + 1u32,
            }
        };
        Dyadic::new(signed(neg, q), self.exp - other.exp - s as i64).round(prec, dir)
    }

    /// `n`-th root of a nonnegative value, rounded to `prec` bits. `None` for negative input.
    pub fn root_round(&self, n: u32, prec: u32, dir: Round) -> Option<Dyadic> {
        assert!(n >= 1);
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::zero());
        }
        let m = self.mant.magnitude();
        let nn = n as i64;
        let mut t = (nn * (prec as i64 + 2) - m.bits() as i64).max(0);
        t += (self.exp - t).rem_euclid(nn);
        let big = m << t as u64;
        let r = big.nth_root(n);
        let exact = num_traits::pow(r.clone(), n as usize) == big;
        let r = if !exact && dir == Round::Up { r + 1u32 } else { r };
        let e = (self.exp - t).div_euclid(nn);
        Some(Dyadic::new(BigInt::from(r), e).round(prec, dir))
    }

    /// `num / den` rounded to `prec` bits. Panics when `den == 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_int(num.clone()).div_round(&Dyadic::from_int(den.clone()), prec, dir)
    }

    /// Exact comparison against `num / den` with `den > 0`.
    pub fn cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        if self.exp >= 0 {
            ((&self.mant << self.exp as u64) * den).cmp(num)
        } else {
            (&self.mant * den).cmp(&(num << (-self.exp) as u64))
        }
    }

    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            let neg = self.is_negative();
            signed(
                neg,
                shift_directed(self.mant.magnitude(), (-self.exp) as u64, neg, Round::Down),
            )
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        -(-self).floor_int()
    }

    /// Nearest-ish `f64`; for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let s = bits.saturating_sub(60);
        let top = (self.mant.magnitude() >> s).to_u64().unwrap_or(u64::MAX) as f64;
        let e = self.exp + s as i64;
        let v = if e > 2000 {
            f64::INFINITY
        } else if e < -2200 {
            0.0
        } else {
            let half = (e / 2) as i32;
            top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
        };
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Approximate base-2 logarithm of `|x|`; for sizing decisions only.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let s = bits.saturating_sub(60);
        let top = (self.mant.magnitude() >> s).to_u64().unwrap_or(u64::MAX) as f64;
        top.log2() + (self.exp + s as i64) as f64
    }

    /// Scientific notation with `digits` significant digits, rounded in direction `dir`,
    /// e.g. `3.8166e0`.
    pub fn to_sci_string(&self, digits: u32, dir: Round) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let mag_dir = if neg { dir.flip() } else { dir };
        let mut e10 = (self.log2_approx() * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigUint::from(10u32);
        let lower = num_traits::pow(ten.clone(), digits as usize - 1);
        let upper = &lower * 10u32;
        let q = loop {
            let q = self.scaled_decimal(digits as i64 - 1 - e10, mag_dir);
            if q >= upper {
                e10 += 1;
            } else if q < lower {
                e10 -= 1;
            } else {
                break q;
            }
        };
        let s = q.to_str_radix(10);
        let (head, tail) = s.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push('e');
        out.push_str(&e10.to_string());
        out
    }

    /// `|x| * 10^s` rounded to an integer in direction `dir`.
    fn scaled_decimal(&self, s: i64, dir: Round) -> BigUint {
        let ten = BigUint::from(10u32);
        let mut num = self.mant.magnitude().clone();
        let mut den = BigUint::one();
        if s >= 0 {
            num *= num_traits::pow(ten, s as usize);
        } else {
            den *= num_traits::pow(ten, (-s) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if r.is_zero() || dir == Round::Down {
            q
        } else {
            q + 1u32
        }
    }

    /// Parse a plain decimal literal such as `0.5772` into an exact rational
    /// `(numerator, denominator)`, with the number of fractional digits.
    pub(crate) fn parse_decimal(lit: &str) -> (BigInt, BigInt) {
        let (int_part, frac_part) = match lit.split_once('.') {
            Some((a, b)) => (a, b),
            None => (lit, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().expect("decimal literal");
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        (num, den)
    }
}

impl std::ops::Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            o => return o,
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        let by_top = self.top().cmp(&other.top());
        if by_top != Ordering::Equal {
            return if self.is_negative() {
                by_top.reverse()
            } else {
                by_top
            };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(17, Round::Down))
    }
}
