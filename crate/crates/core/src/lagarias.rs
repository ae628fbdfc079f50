//! Harmonic numbers, the interpolation `H(x) = psi(x+1) + gamma`, the bound lemmas on `H`,
//! and the Lagarias and Kaneko-Lagarias inequalities.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factor, run_indexed, sigma, sigma_sieve, Factorization, SieveConfig};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{
    constants, decide, decide_intervals, digamma, trigamma, Interval, PrecisionPolicy, Verdict,
};
use crate::report::{CheckpointReport, Flag, InequalityId, InequalityReport};
use crate::robin::robin_rhs;

const GUARD: u32 = 16;
/// Largest `n` for which single checks sum `H_n` exactly; beyond it `H_n` is bracketed.
pub const EXACT_H_LIMIT: u64 = 10_000;

/// `H_n` as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicValue {
    pub n: u64,
    pub value: BigRational,
}

/// Running `H_n = num / lcm(1..n)`, advanced one term at a time without gcd reductions.
#[derive(Debug, Clone)]
pub struct HarmonicSeq {
    n: u64,
    num: BigUint,
    den: BigUint,
}

impl Default for HarmonicSeq {
    fn default() -> Self {
        HarmonicSeq::new()
    }
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let f = factor(n).ok()?;
    match f.pairs() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

impl HarmonicSeq {
    /// Starts at `H_0 = 0`.
    pub fn new() -> Self {
        HarmonicSeq {
            n: 0,
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Step to `H_{n+1}`.
    pub fn advance(&mut self) {
        self.n += 1;
        if let Some(p) = prime_power_base(self.n) {
            self.den *= p;
            self.num *= p;
        }
        self.num += &self.den / self.n;
    }

    /// Advance until the current index is `n`.
    pub fn advance_to(&mut self, n: u64) {
        while self.n < n {
            self.advance();
        }
    }

    /// Unreduced `H_n`; only for enclosures and comparisons through intervals.
    fn raw(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    /// Enclosure of `H_n`; long operands are truncated to `prec + 64` bits and the
    /// quotient widened to cover the truncation.
    pub fn interval(&self, prec: u32) -> Interval {
        let keep = prec as u64 + 64;
        let bits = self.den.bits();
        if bits <= keep {
            return Interval::from_ratio(&self.raw(), prec);
        }
        let s = bits - keep;
        let (nl, dl) = (&self.num >> s, &self.den >> s);
        let (nh, dh) = (&nl + 1u32, &dl + 1u32);
        let lo = Interval::from_ratio(&BigRational::new_raw(nl.into(), dh.into()), prec);
        let hi = Interval::from_ratio(&BigRational::new_raw(nh.into(), dl.into()), prec);
        lo.hull(&hi)
    }

    /// `H_n` rounded to double precision.
    pub fn to_f64(&self) -> f64 {
        self.interval(64).mid_f64()
    }
}

/// Exact `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> Result<HarmonicValue> {
    if n == 0 {
        return Err(invalid("harmonic numbers start at n = 1"));
    }
    let mut s = HarmonicSeq::new();
    s.advance_to(n);
    Ok(HarmonicValue { n, value: s.value() })
}

/// `log n + gamma + [1/(2n+1), 1/(2n)]`, which contains `H_n` for every `n >= 1`.
pub fn harmonic_bracket(n: u64, prec: u32) -> Result<Interval> {
    if n == 0 {
        return Err(invalid("harmonic numbers start at n = 1"));
    }
    let w = prec + GUARD;
    let base = Interval::from_int(n, w).ln()?.add(&constants::gamma(w));
    let lo = base.add(&Interval::from_ratio(&BigRational::new(1.into(), (2 * n + 1).into()), w));
    let hi = base.add(&Interval::from_ratio(&BigRational::new(1.into(), (2 * n).into()), w));
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone(), prec))
}

/// Enclosure of `H_n`: exact below [`EXACT_H_LIMIT`], bracketed above. The flag tells which.
pub fn harmonic_enclosure(n: u64, prec: u32) -> Result<(Interval, bool)> {
    if n <= EXACT_H_LIMIT {
        let mut s = HarmonicSeq::new();
        s.advance_to(n);
        Ok((s.interval(prec), false))
    } else {
        Ok((harmonic_bracket(n, prec)?, true))
    }
}

/// `H(x)` and `H'(x)` at a real point.
#[derive(Debug, Clone)]
pub struct RealPoint {
    pub x: BigRational,
    pub h: Interval,
    pub hprime: Interval,
}

/// `H(x) = psi(x+1) + gamma` and `H'(x) = psi'(x+1)` for rational `x >= 1`.
pub fn h_real(x: &BigRational, prec: u32) -> Result<RealPoint> {
    if *x < BigRational::one() {
        return Err(domain("H(x) is evaluated for x >= 1"));
    }
    let w = prec + GUARD;
    let x1 = Interval::from_ratio(&(x + BigRational::one()), w);
    let h = digamma(&x1, w)?.add(&constants::gamma(w));
    let hp = trigamma(&x1, w)?;
    Ok(RealPoint {
        x: x.clone(),
        h: h.with_prec(prec),
        hprime: hp.with_prec(prec),
    })
}

fn h_of(x: &BigRational, prec: u32) -> Result<Interval> {
    Ok(h_real(x, prec)?.h)
}

/// `exp(h) log(h)`.
fn kl_rhs(h: &Interval, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let h = h.with_prec(w);
    Ok(h.exp()?.mul(&h.ln()?).with_prec(prec))
}

fn lagarias_rhs(h: &Interval, prec: u32) -> Result<Interval> {
    Ok(kl_rhs(h, prec + GUARD)?.add(h).with_prec(prec))
}

fn harmonic_check(
    n: u64,
    f: &Factorization,
    id: InequalityId,
    policy: &PrecisionPolicy,
) -> Result<InequalityReport> {
    let lhs = BigRational::from_integer(BigInt::from(sigma(f)));
    let nn = BigUint::from(n);
    if n == 1 {
        let (rhs, flag) = match id {
            InequalityId::KanekoLagarias => (Interval::zero(policy.start_bits()), Flag::DegenerateRhs),
            _ => (Interval::one(policy.start_bits()), Flag::StrictnessEdge),
        };
        return Ok(InequalityReport::new(nn, id, lhs, Some(rhs), Verdict::Fails, 0, vec![flag]));
    }
    let mut enclosed = false;
    let d = decide(
        &lhs,
        |p| {
            let (h, e) = harmonic_enclosure(n, p + GUARD)?;
            enclosed = e;
            match id {
                InequalityId::KanekoLagarias => kl_rhs(&h, p),
                _ => lagarias_rhs(&h, p),
            }
        },
        policy,
    )?;
    let flags = if enclosed { vec![Flag::HarmonicEnclosed] } else { Vec::new() };
    Ok(InequalityReport::new(nn, id, lhs, Some(d.rhs), d.verdict, d.prec, flags))
}

/// `sigma(n) < H_n + exp(H_n) log H_n`. At `n = 1` both sides equal 1 and the report is
/// `Fails` with [`Flag::StrictnessEdge`].
pub fn check_lagarias(n: u64, policy: &PrecisionPolicy) -> Result<InequalityReport> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    harmonic_check(n, &factor(n)?, InequalityId::Lagarias, policy)
}

/// `sigma(n) < exp(H_n) log H_n`. At `n = 1` the right side is 0 ([`Flag::DegenerateRhs`]).
pub fn check_kaneko_lagarias(n: u64, policy: &PrecisionPolicy) -> Result<InequalityReport> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    harmonic_check(n, &factor(n)?, InequalityId::KanekoLagarias, policy)
}

/// Kaneko-Lagarias at a number given by its factorization, with `H_n` bracketed when
/// `n` exceeds [`EXACT_H_LIMIT`].
pub fn check_kaneko_lagarias_factored(f: &Factorization, policy: &PrecisionPolicy) -> Result<InequalityReport> {
    let n = f.value();
    if let Some(small) = f.to_u64() {
        return harmonic_check(small, f, InequalityId::KanekoLagarias, policy);
    }
    let lhs = BigRational::from_integer(BigInt::from(sigma(f)));
    let d = decide(
        &lhs,
        |p| {
            let w = p + GUARD;
            let h = big_harmonic_bracket(f, w)?;
            kl_rhs(&h, p)
        },
        policy,
    )?;
    Ok(InequalityReport::new(
        n,
        InequalityId::KanekoLagarias,
        lhs,
        Some(d.rhs),
        d.verdict,
        d.prec,
        vec![Flag::HarmonicEnclosed],
    ))
}

/// [`harmonic_bracket`] for `n` beyond 64 bits.
fn big_harmonic_bracket(f: &Factorization, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let n = BigInt::from(f.value());
    let log_n = crate::robin::log_of_factorization(f, w);
    let base = log_n.add(&constants::gamma(w));
    let two_n = &n * 2;
    let lo = base.add(&Interval::from_ratio(&BigRational::new(1.into(), &two_n + 1), w));
    let hi = base.add(&Interval::from_ratio(&BigRational::new(1.into(), two_n), w));
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone(), prec))
}

/// Failures of a harmonic inequality over `[1, limit]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HarmonicScan {
    pub limit: u64,
    pub failures: Vec<u64>,
    pub undecidable: Vec<u64>,
}

const F64_SLACK: f64 = 1e-9;

fn harmonic_scan(limit: u64, id: InequalityId, policy: &PrecisionPolicy) -> Result<HarmonicScan> {
    if limit == 0 {
        return Err(invalid("limit must be positive"));
    }
    let mut out = HarmonicScan {
        limit,
        ..HarmonicScan::default()
    };
    let mut hs = HarmonicSeq::new();
    let mut hf = 0.0f64;
    for item in sigma_sieve(1, limit, SieveConfig::default())? {
        let (n, s) = item?;
        hs.advance();
        hf += 1.0 / n as f64;
        if n == 1 {
            out.failures.push(1);
            continue;
        }
        let mut rhs_f = hf.exp() * hf.ln();
        if id == InequalityId::Lagarias {
            rhs_f += hf;
        }
        if rhs_f * (1.0 - F64_SLACK) > s as f64 * (1.0 + F64_SLACK) {
            continue;
        }
        let lhs = BigRational::from_integer(BigInt::from(s));
        let d = decide(
            &lhs,
            |p| {
                let h = hs.interval(p + GUARD);
                match id {
                    InequalityId::KanekoLagarias => kl_rhs(&h, p),
                    _ => lagarias_rhs(&h, p),
                }
            },
            policy,
        )?;
        match d.verdict {
            Verdict::Holds => {}
            Verdict::Fails => out.failures.push(n),
            Verdict::Undecidable { .. } => out.undecidable.push(n),
        }
    }
    Ok(out)
}

/// Every `n <= limit` failing Lagarias' inequality (including the edge `n = 1`).
pub fn scan_lagarias(limit: u64, policy: &PrecisionPolicy) -> Result<HarmonicScan> {
    harmonic_scan(limit, InequalityId::Lagarias, policy)
}

/// Every `n <= limit` failing the Kaneko-Lagarias inequality (including `n = 1`).
pub fn scan_kaneko_lagarias(limit: u64, policy: &PrecisionPolicy) -> Result<HarmonicScan> {
    harmonic_scan(limit, InequalityId::KanekoLagarias, policy)
}

/// The bound lemmas on `H(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// `H(x) < log x + gamma + 1/(2x)`, `x >= 1`.
    L1,
    /// `H(x) < 2 log x / (1 + 6/(pi^2 x))`, `x >= 4`.
    L2,
    /// `H_{n+1} <= n / log n`, integers `n >= 2`.
    L3a,
    /// `log H(x) <= x / (2 log x)`, `x >= 4`.
    L3b,
    /// `H(x) log H(x) < x^2 / (x + 6/pi^2)`, `x >= 4`.
    L4,
    /// `H'(x) > H(x) log H(x) / x^2`, `x >= 4`.
    L5,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [LemmaId::L1, LemmaId::L2, LemmaId::L3a, LemmaId::L3b, LemmaId::L4, LemmaId::L5];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::L1 => "L1",
            LemmaId::L2 => "L2",
            LemmaId::L3a => "L3a",
            LemmaId::L3b => "L3b",
            LemmaId::L4 => "L4",
            LemmaId::L5 => "L5",
        }
    }

    /// Smallest admissible point.
    pub fn domain_min(self) -> u64 {
        match self {
            LemmaId::L1 => 1,
            LemmaId::L3a => 2,
            _ => 4,
        }
    }

    pub fn integer_only(self) -> bool {
        self == LemmaId::L3a
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("lemma {s}")))
    }
}

/// Points `min, min + 1/step_den, ...` up to `dense_hi`, then integers up to `integer_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaGrid {
    pub step_den: u64,
    pub dense_hi: u64,
    pub integer_hi: u64,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        LemmaGrid {
            step_den: 8,
            dense_hi: 1_000,
            integer_hi: 10_000,
        }
    }
}

impl LemmaGrid {
    pub fn points(&self, min: u64) -> Result<Vec<BigRational>> {
        if self.step_den == 0 {
            return Err(invalid("grid step denominator must be positive"));
        }
        let mut pts = Vec::new();
        let d = self.step_den;
        if self.dense_hi >= min {
            for i in 0..=(self.dense_hi - min) * d {
                pts.push(BigRational::new((min * d + i).into(), d.into()));
            }
        }
        for n in self.dense_hi.max(min - 1) + 1..=self.integer_hi {
            pts.push(BigRational::from_integer(n.into()));
        }
        Ok(pts)
    }
}

fn six_over_pi_sq(w: u32) -> Result<Interval> {
    Interval::from_int(6, w).div(&constants::pi_sq(w))
}

/// Both sides of the lemma's strict comparison `lhs < rhs` at `x`.
fn lemma_sides(id: LemmaId, x: &BigRational, prec: u32) -> Result<(Interval, Interval)> {
    let w = prec + GUARD;
    let xi = Interval::from_ratio(x, w);
    let lx = || xi.ln();
    let out = match id {
        LemmaId::L1 => {
            let rhs = lx()?.add(&constants::gamma(w)).add(&xi.ldexp(1).recip()?);
            (h_of(x, w)?, rhs)
        }
        LemmaId::L2 => {
            let den = Interval::one(w).add(&six_over_pi_sq(w)?.div(&xi)?);
            (h_of(x, w)?, lx()?.ldexp(1).div(&den)?)
        }
        LemmaId::L3a => unreachable!("integer lemma uses exact harmonic numbers"),
        LemmaId::L3b => (h_of(x, w)?.ln()?, xi.div(&lx()?.ldexp(1))?),
        LemmaId::L4 => {
            let h = h_of(x, w)?;
            let rhs = xi.sqr().div(&xi.add(&six_over_pi_sq(w)?))?;
            (h.mul(&h.ln()?), rhs)
        }
        LemmaId::L5 => {
            let pt = h_real(x, w)?;
            (pt.h.mul(&pt.h.ln()?).div(&xi.sqr())?, pt.hprime)
        }
    };
    Ok((out.0.with_prec(prec), out.1.with_prec(prec)))
}

/// `H(x) log H(x) / x^2 < 1/(x + c)` with `c = 6/pi^2` or, as literally displayed, `6 pi^2`.
fn l5_chain_sides(x: &BigRational, literal: bool, prec: u32) -> Result<(Interval, Interval)> {
    let w = prec + GUARD;
    let xi = Interval::from_ratio(x, w);
    let c = if literal { constants::pi_sq(w).mul_int(6) } else { six_over_pi_sq(w)? };
    let h = h_of(x, w)?;
    let lhs = h.mul(&h.ln()?).div(&xi.sqr())?;
    Ok((lhs.with_prec(prec), xi.add(&c).recip()?.with_prec(prec)))
}

/// `1/(x + 6/pi^2) < psi'(x+1)`, the cited trigamma bound.
fn trigamma_bound_sides(x: &BigRational, prec: u32) -> Result<(Interval, Interval)> {
    let w = prec + GUARD;
    let xi = Interval::from_ratio(x, w);
    let lhs = xi.add(&six_over_pi_sq(w)?).recip()?;
    Ok((lhs.with_prec(prec), h_real(x, w)?.hprime.with_prec(prec)))
}

fn pair_verdict(
    policy: &PrecisionPolicy,
    f: impl Fn(u32) -> Result<(Interval, Interval)>,
) -> Result<Verdict> {
    Ok(crate::numerics::decide_pair(f, policy)?.0)
}

/// Certifies a lemma at every grid point.
pub fn verify_h_lemma(id: LemmaId, grid: &LemmaGrid, policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    let pts = if id.integer_only() {
        (id.domain_min()..=grid.integer_hi)
            .map(|n| BigRational::from_integer(n.into()))
            .collect()
    } else {
        grid.points(id.domain_min())?
    };
    let mut r = verify_h_lemma_at(id, &pts, policy)?;
    r.param("step", format!("1/{}", grid.step_den))
        .param("dense_hi", grid.dense_hi)
        .param("integer_hi", grid.integer_hi);
    Ok(r)
}

/// Certifies a lemma at the given points, which must lie in its domain.
pub fn verify_h_lemma_at(id: LemmaId, points: &[BigRational], policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    let min = BigRational::from_integer(id.domain_min().into());
    if let Some(bad) = points.iter().find(|x| **x < min) {
        return Err(domain(format!("{bad} is outside the domain of {id}")));
    }
    if id.integer_only() && points.iter().any(|x| !x.is_integer()) {
        return Err(domain(format!("{id} is stated for integers")));
    }
    let mut r = CheckpointReport::new(id.as_str());
    r.param("points", points.len());
    let mut failed = 0usize;
    let mut l5_variant = (0usize, 0usize);
    let mut l5_literal = (0usize, None::<BigRational>);
    let mut sorted: Vec<&BigRational> = points.iter().collect();
    sorted.sort();
    let mut hs = HarmonicSeq::new();
    for x in sorted {
        let v = if id == LemmaId::L3a {
            let n = x.to_integer();
            let n64: u64 = n.try_into().map_err(|_| invalid("integer point too large"))?;
            hs.advance_to(n64 + 1);
            let q = hs.raw();
            let rhs = |p: u32| {
                let w = p + GUARD;
                let ni = Interval::from_int(n64, w);
                Ok(ni.div(&ni.ln()?)?.with_prec(p))
            };
            decide(&q, rhs, policy)?.verdict
        } else {
            pair_verdict(policy, |p| lemma_sides(id, x, p))?
        };
        if !r.require(format!("{id} at x={x}"), v) {
            failed += 1;
        }
        if id == LemmaId::L5 {
            let tb = pair_verdict(policy, |p| trigamma_bound_sides(x, p))?;
            let ch = pair_verdict(policy, |p| l5_chain_sides(x, false, p))?;
            if tb.holds() && ch.holds() {
                l5_variant.0 += 1;
            } else {
                l5_variant.1 += 1;
            }
            if pair_verdict(policy, |p| l5_chain_sides(x, true, p))?.holds() {
                l5_literal.0 += 1;
            } else if l5_literal.1.is_none() {
                l5_literal.1 = Some(x.clone());
            }
        }
    }
    if failed == 0 {
        r.witness(format!("strict comparison separated at all {} points", points.len()));
    }
    if id == LemmaId::L5 {
        let ok = l5_variant.1 == 0;
        r.finding("chain_6_over_pi_sq", if ok { "holds at every point".to_string() } else { format!("fails at {} points", l5_variant.1) });
        let lit = match &l5_literal.1 {
            None => "holds at every point".to_string(),
            Some(x) => format!("holds at {} of {} points, first failure at x={x}", l5_literal.0, points.len()),
        };
        r.finding("chain_6_pi_sq_literal", lit);
    }
    Ok(r)
}

/// `exp(h) log(h) / n`.
fn g_of(h: &Interval, n: &Interval, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    Ok(kl_rhs(&h.with_prec(w), w)?.div(&n.with_prec(w))?.with_prec(prec))
}

/// `g(n) = exp(H_n) log(H_n) / n` is strictly increasing over `1 <= n <= limit`, with a
/// spot-check of the continuous version at half-integers from 4 on.
pub fn verify_g_monotone(limit: u64, policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    if limit < 2 {
        return Err(invalid("limit must be at least 2"));
    }
    let mut r = CheckpointReport::new("G_MONOTONE");
    r.param("limit", limit);
    let p0 = policy.start_bits();
    let mut prev_seq = HarmonicSeq::new();
    prev_seq.advance();
    let mut prev_g = Interval::zero(p0);
    let mut seq = prev_seq.clone();
    for n in 1..limit {
        seq.advance();
        let g = g_of(&seq.interval(p0 + GUARD), &Interval::from_int(n + 1, p0), p0)?;
        let v = if prev_g.strictly_below(&g) {
            Verdict::Holds
        } else {
            decide_intervals(
                |p| {
                    if n == 1 {
                        return Ok(Interval::zero(p));
                    }
                    g_of(&prev_seq.interval(p + GUARD), &Interval::from_int(n, p), p)
                },
                |p| g_of(&seq.interval(p + GUARD), &Interval::from_int(n + 1, p), p),
                policy,
            )?
            .0
        };
        r.require(format!("g({n}) < g({})", n + 1), v);
        prev_g = g;
        prev_seq = seq.clone();
    }
    let g_real = |x: &BigRational, p: u32| -> Result<Interval> {
        let w = p + GUARD;
        g_of(&h_of(x, w)?, &Interval::from_ratio(x, w), p)
    };
    let mut spots = 0;
    for n in 4..limit.min(1_000) {
        let a = BigRational::from_integer(n.into());
        let m = BigRational::new((2 * n + 1).into(), 2.into());
        let b = BigRational::from_integer((n + 1).into());
        let v1 = decide_intervals(|p| g_real(&a, p), |p| g_real(&m, p), policy)?.0;
        let v2 = decide_intervals(|p| g_real(&m, p), |p| g_real(&b, p), policy)?.0;
        r.require(format!("g({n}) < g({m})"), v1);
        r.require(format!("g({m}) < g({})", n + 1), v2);
        spots += 1;
    }
    r.witness(format!("{} consecutive steps separated; {spots} half-integer spot checks", limit - 1));
    Ok(r)
}

/// For `2 <= n <= limit`: `H_n > log n + gamma + 1/(2n+1)`, and for `n >= 3`
/// `e^gamma log log n < exp(H_n) log(H_n) / n`. The range is split into one chunk per worker,
/// each starting from its own harmonic prefix.
pub fn verify_robin_implies_kl(limit: u64, policy: &PrecisionPolicy, workers: usize) -> Result<CheckpointReport> {
    if limit < 2 {
        return Err(invalid("limit must be at least 2"));
    }
    let mut r = CheckpointReport::new("ROBIN_IMPLIES_KL");
    r.param("limit", limit);
    let chunks = workers.max(1) as u64;
    let span = (limit - 1).div_ceil(chunks);
    let per_chunk = run_indexed(0, chunks - 1, workers, |c| {
        let a = 2 + c * span;
        let mut bad = Vec::new();
        if a > limit {
            return Ok(bad);
        }
        let b = (a + span - 1).min(limit);
        let mut seq = HarmonicSeq::new();
        seq.advance_to(a - 1);
        for n in a..=b {
            seq.advance();
            let lower = |p: u32| -> Result<Interval> {
                let w = p + GUARD;
                Ok(Interval::from_int(n, w)
                    .ln()?
                    .add(&constants::gamma(w))
                    .add(&Interval::from_ratio(&BigRational::new(1.into(), (2 * n + 1).into()), w))
                    .with_prec(p))
            };
            let v1 = decide_intervals(lower, |p| Ok(seq.interval(p)), policy)?.0;
            if !v1.holds() {
                bad.push((format!("H_{n} > log n + gamma + 1/(2n+1)"), v1));
            }
            if n >= 3 {
                let v2 = decide_intervals(
                    |p| robin_rhs(n, p),
                    |p| g_of(&seq.interval(p + GUARD), &Interval::from_int(n, p), p),
                    policy,
                )?
                .0;
                if !v2.holds() {
                    bad.push((format!("e^gamma log log {n} < g({n})"), v2));
                }
            }
        }
        Ok(bad)
    })?;
    for (what, v) in per_chunk.into_iter().flatten() {
        r.require(what, v);
    }
    if r.certified {
        r.witness(format!("both facts separated for every n in [2, {limit}]"));
    }
    Ok(r)
}
