//! Three-valued comparison of exact values against interval enclosures, with precision
//! escalation.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::interval::{cmp_ratio_interval, Interval};
use crate::error::{invalid, Result};

/// Outcome of checking a strict inequality `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// The enclosures still overlapped at the maximum precision.
    Undecidable { bits_reached: u32 },
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecidable { .. } => "undecidable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Undecidable { bits_reached } => write!(f, "undecidable@{bits_reached}"),
            v => f.write_str(v.as_str()),
        }
    }
}

/// Working-precision schedule for [`decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionPolicy {
    start_bits: u32,
    max_bits: u32,
    growth_num: u32,
    growth_den: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 64,
            max_bits: 4096,
            growth_num: 2,
            growth_den: 1,
        }
    }
}

impl PrecisionPolicy {
    /// `growth = growth_num / growth_den` must exceed 1.
    pub fn new(start_bits: u32, max_bits: u32, growth_num: u32, growth_den: u32) -> Result<Self> {
        if start_bits < 16 {
            return Err(invalid("start precision must be at least 16 bits"));
        }
        if start_bits > max_bits {
            return Err(invalid("start precision exceeds maximum precision"));
        }
        if growth_den == 0 || growth_num <= growth_den {
            return Err(invalid("precision growth factor must exceed 1"));
        }
        Ok(PrecisionPolicy {
            start_bits,
            max_bits,
            growth_num,
            growth_den,
        })
    }

    /// A policy that evaluates at exactly one precision.
    pub fn fixed(bits: u32) -> Self {
        PrecisionPolicy {
            start_bits: bits.max(16),
            max_bits: bits.max(16),
            growth_num: 2,
            growth_den: 1,
        }
    }

    pub fn start_bits(&self) -> u32 {
        self.start_bits
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    pub fn growth(&self) -> (u32, u32) {
        (self.growth_num, self.growth_den)
    }

    /// Successive precisions, ending exactly at `max_bits`.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = vec![self.start_bits];
        let mut p = self.start_bits as u64;
        while p < self.max_bits as u64 {
            let next = (p * self.growth_num as u64).div_ceil(self.growth_den as u64);
            p = next.max(p + 1).min(self.max_bits as u64);
            out.push(p as u32);
        }
        out
    }
}

/// A verdict together with the enclosure that decided it.
#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub rhs: Interval,
    pub prec: u32,
    /// The right-hand side was a thin interval equal to the left-hand side.
    pub exact_tie: bool,
}

/// Decide `lhs < rhs` where `rhs_eval(prec)` encloses the right-hand side.
///
/// `Holds` once `lhs < rhs.lo`, `Fails` once `lhs > rhs.hi` (or when `rhs` is exactly `lhs`,
/// which violates the strict inequality), otherwise escalate.
pub fn decide<F>(lhs: &BigRational, mut rhs_eval: F, policy: &PrecisionPolicy) -> Result<Decision>
where
    F: FnMut(u32) -> Result<Interval>,
{
    let mut last = None;
    for prec in policy.schedule() {
        let rhs = rhs_eval(prec)?;
        let ord = cmp_ratio_interval(lhs, &rhs);
        let tie = ord == Ordering::Equal && rhs.is_thin();
        let verdict = match ord {
            Ordering::Less => Some(Verdict::Holds),
            Ordering::Greater => Some(Verdict::Fails),
            Ordering::Equal if tie => Some(Verdict::Fails),
            Ordering::Equal => None,
        };
        if let Some(verdict) = verdict {
            return Ok(Decision {
                verdict,
                rhs,
                prec,
                exact_tie: tie,
            });
        }
        last = Some((rhs, prec));
    }
    let (rhs, prec) = last.expect("schedule is nonempty");
    Ok(Decision {
        verdict: Verdict::Undecidable { bits_reached: prec },
        rhs,
        prec,
        exact_tie: false,
    })
}

/// Decide `lhs < rhs` when both sides are enclosures.
pub fn decide_intervals<F, G>(
    mut lhs_eval: F,
    mut rhs_eval: G,
    policy: &PrecisionPolicy,
) -> Result<(Verdict, Interval, Interval, u32)>
where
    F: FnMut(u32) -> Result<Interval>,
    G: FnMut(u32) -> Result<Interval>,
{
    let mut last = None;
    for prec in policy.schedule() {
        let lhs = lhs_eval(prec)?;
        let rhs = rhs_eval(prec)?;
        if lhs.strictly_below(&rhs) {
            return Ok((Verdict::Holds, lhs, rhs, prec));
        }
        if rhs.strictly_below(&lhs) || (lhs.is_thin() && rhs.is_thin() && lhs == rhs) {
            return Ok((Verdict::Fails, lhs, rhs, prec));
        }
        last = Some((lhs, rhs, prec));
    }
    let (lhs, rhs, prec) = last.expect("schedule is nonempty");
    Ok((Verdict::Undecidable { bits_reached: prec }, lhs, rhs, prec))
}

/// Decide `lhs < rhs` when one evaluation yields both enclosures at once.
pub fn decide_pair<F>(mut eval: F, policy: &PrecisionPolicy) -> Result<(Verdict, Interval, Interval, u32)>
where
    F: FnMut(u32) -> Result<(Interval, Interval)>,
{
    let mut last = None;
    for prec in policy.schedule() {
        let (lhs, rhs) = eval(prec)?;
        if lhs.strictly_below(&rhs) {
            return Ok((Verdict::Holds, lhs, rhs, prec));
        }
        if rhs.strictly_below(&lhs) || (lhs.is_thin() && rhs.is_thin() && lhs == rhs) {
            return Ok((Verdict::Fails, lhs, rhs, prec));
        }
        last = Some((lhs, rhs, prec));
    }
    let (lhs, rhs, prec) = last.expect("schedule is nonempty");
    Ok((Verdict::Undecidable { bits_reached: prec }, lhs, rhs, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn robin_rhs(n: i64) -> impl Fn(u32) -> Result<Interval> {
        move |p| {
            let ll = Interval::from_int(n, p + 8).ln()?.ln()?;
            Ok(constants::exp_gamma(p + 8).mul(&ll).with_prec(p))
        }
    }

    #[test]
    fn schedule_reaches_max() {
        let p = PrecisionPolicy::default();
        assert_eq!(p.schedule(), vec![64, 128, 256, 512, 1024, 2048, 4096]);
        let odd = PrecisionPolicy::new(64, 100, 3, 2).unwrap();
        assert_eq!(odd.schedule(), vec![64, 96, 100]);
        assert!(PrecisionPolicy::new(64, 32, 2, 1).is_err());
        assert!(PrecisionPolicy::new(64, 128, 1, 1).is_err());
    }

    #[test]
    fn constant_rhs() {
        let d = decide(&q(1, 1), |p| Ok(Interval::from_int(2, p)), &PrecisionPolicy::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Holds);
    }

    #[test]
    fn robin_at_5040_and_5041() {
        let pol = PrecisionPolicy::default();
        let d = decide(&q(403, 105), robin_rhs(5040), &pol).unwrap();
        assert_eq!(d.verdict, Verdict::Fails);
        let d = decide(&q(5113, 5041), robin_rhs(5041), &pol).unwrap();
        assert_eq!(d.verdict, Verdict::Holds);
    }

    #[test]
    fn exact_tie_fails_strictness() {
        let d = decide(&q(1, 1), |p| Ok(Interval::one(p)), &PrecisionPolicy::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Fails);
        assert!(d.exact_tie);
    }

    #[test]
    fn undecidable_after_max_bits() {
        // rhs straddles lhs at every precision
        let pol = PrecisionPolicy::new(32, 128, 2, 1).unwrap();
        let d = decide(
            &q(1, 1),
            |p| Ok(Interval::from_frac(1, 2, p).hull(&Interval::from_int(2, p))),
            &pol,
        )
        .unwrap();
        assert_eq!(d.verdict, Verdict::Undecidable { bits_reached: 128 });
    }

    #[test]
    fn escalation_resolves_close_values() {
        // 1/3 + 2^-100 against 1/3: needs more than 64 bits
        let lhs = q(1, 3);
        let eval = |p: u32| {
            let third = Interval::from_frac(1, 3, p);
            Ok(third.add(&Interval::point(super::super::dyadic::Dyadic::new(1.into(), -100), p)))
        };
        let d = decide(&lhs, eval, &PrecisionPolicy::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Holds);
        assert!(d.prec >= 128);
    }
}
