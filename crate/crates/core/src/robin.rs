//! Robin's inequality `sigma(n)/n < e^gamma log log n`: single checks, sieve-backed range
//! scans, structured families and the numeric checkpoints of the prime-product argument.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith::{
    abundancy_of, factor, first_primes, map_segment_range, Factorization, SieveConfig,
};
use crate::bounds::{self, FamilyParams, InnerReading, PrimeTable};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{
    constants, decide, decide_intervals, decide_pair, Interval, PrecisionPolicy, Verdict,
};
use crate::report::{show, CheckpointReport, Flag, InequalityId, InequalityReport};

const GUARD: u32 = 16;
const EXP_GAMMA_F64: f64 = 1.781_072_417_990_198;
/// Safety margin on each side of the double-precision prefilter.
pub const PREFILTER_SLACK: f64 = 1e-6;

/// `log n` from a factorization: `sum e log p`.
pub fn log_of_factorization(f: &Factorization, prec: u32) -> Interval {
    let w = prec + GUARD;
    f.pairs()
        .iter()
        .fold(Interval::zero(w), |acc, &(p, e)| {
            acc.add(&Interval::from_int(p, w).ln().expect("p >= 2").mul_int(e as i64))
        })
        .with_prec(prec)
}

/// `e^gamma log(log_n)`.
pub fn robin_rhs_from_log(log_n: &Interval, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    Ok(constants::exp_gamma(w)
        .mul(&log_n.with_prec(w).ln()?)
        .with_prec(prec))
}

/// `e^gamma log log n` for `n >= 3`.
pub fn robin_rhs(n: u64, prec: u32) -> Result<Interval> {
    if n < 3 {
        return Err(domain("log log n requires n >= 3"));
    }
    let w = prec + GUARD;
    robin_rhs_from_log(&Interval::from_int(n, w).ln()?, prec)
}

/// Robin's inequality at `n >= 1`.
pub fn check_robin(n: u64, policy: &PrecisionPolicy) -> Result<InequalityReport> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check_robin_factored(&factor(n)?, policy)
}

/// Robin's inequality at the number with factorization `f`.
///
/// For `n <= 2` the right-hand side is undefined or negative; the report is `Fails` with
/// [`Flag::DegenerateRhs`].
pub fn check_robin_factored(f: &Factorization, policy: &PrecisionPolicy) -> Result<InequalityReport> {
    let n = f.value();
    let lhs = abundancy_of(f);
    if n <= BigUint::from(2u32) {
        return Ok(InequalityReport::new(
            n,
            InequalityId::Robin,
            lhs,
            None,
            Verdict::Fails,
            0,
            vec![Flag::DegenerateRhs],
        ));
    }
    let d = decide(
        &lhs,
        |p| robin_rhs_from_log(&log_of_factorization(f, p + GUARD), p),
        policy,
    )?;
    Ok(InequalityReport::new(
        n,
        InequalityId::Robin,
        lhs,
        Some(d.rhs),
        d.verdict,
        d.prec,
        Vec::new(),
    ))
}

/// True when double precision alone shows Robin's inequality holds with room to spare.
pub fn prefilter_clears(n: u64, sigma: u128) -> bool {
    if n < 3 {
        return false;
    }
    let nf = n as f64;
    let lhs = sigma as f64 / nf;
    let rhs = EXP_GAMMA_F64 * nf.ln().ln();
    rhs - PREFILTER_SLACK > lhs + PREFILTER_SLACK
}

/// Per-segment result of a range scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentScan {
    pub start: u64,
    pub end: u64,
    pub violators: Vec<u64>,
    pub undecidable: Vec<u64>,
    /// Entries that went through the rigorous comparison.
    pub rigorous: u64,
}

/// Result of [`scan_robin`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanOutcome {
    pub lo: u64,
    pub hi: u64,
    pub violators: Vec<u64>,
    pub undecidable: Vec<u64>,
    pub rigorous: u64,
}

impl ScanOutcome {
    pub fn merge(lo: u64, hi: u64, segments: &[SegmentScan]) -> Self {
        let mut out = ScanOutcome {
            lo,
            hi,
            ..ScanOutcome::default()
        };
        for s in segments {
            out.violators.extend_from_slice(&s.violators);
            out.undecidable.extend_from_slice(&s.undecidable);
            out.rigorous += s.rigorous;
        }
        out
    }
}

fn scan_segment(a: u64, sig: &[u128], policy: &PrecisionPolicy) -> Result<SegmentScan> {
    let mut out = SegmentScan {
        start: a,
        end: a + sig.len() as u64 - 1,
        ..SegmentScan::default()
    };
    for (i, &s) in sig.iter().enumerate() {
        let n = a + i as u64;
        match n {
            1 => continue,
            2 => {
                out.violators.push(2);
                continue;
            }
            _ => {}
        }
        if prefilter_clears(n, s) {
            continue;
        }
        out.rigorous += 1;
        let lhs = BigRational::new(BigInt::from(s), BigInt::from(n));
        match decide(&lhs, |p| robin_rhs(n, p), policy)?.verdict {
            Verdict::Holds => {}
            Verdict::Fails => out.violators.push(n),
            Verdict::Undecidable { .. } => out.undecidable.push(n),
        }
    }
    Ok(out)
}

/// All `n` in `[lo, hi]` violating Robin's inequality (`n = 1` is a non-violator, `n = 2` a
/// violator by convention).
pub fn scan_robin(lo: u64, hi: u64, policy: &PrecisionPolicy, workers: usize) -> Result<ScanOutcome> {
    scan_robin_with(lo, hi, policy, workers, SieveConfig::default())
}

pub fn scan_robin_with(
    lo: u64,
    hi: u64,
    policy: &PrecisionPolicy,
    workers: usize,
    cfg: SieveConfig,
) -> Result<ScanOutcome> {
    let segs = scan_robin_segments(lo, hi, policy, workers, cfg, 0, u64::MAX)?;
    Ok(ScanOutcome::merge(lo, hi, &segs))
}

/// Scan only segments `first..=last` of `[lo, hi]` (used for resumable scans).
pub fn scan_robin_segments(
    lo: u64,
    hi: u64,
    policy: &PrecisionPolicy,
    workers: usize,
    cfg: SieveConfig,
    first: u64,
    last: u64,
) -> Result<Vec<SegmentScan>> {
    map_segment_range(lo, hi, cfg, workers, first, last, |a, sig| {
        scan_segment(a, sig, policy)
    })
}

fn excluded_prime(j: u32) -> Result<u64> {
    FamilyParams::new(j, 3)?;
    Ok(first_primes(j as usize)[j as usize - 1])
}

/// No `n` in `(5040, limit]` coprime to `p_j` violates Robin's inequality.
pub fn verify_family_coprime(
    j: u32,
    limit: u64,
    policy: &PrecisionPolicy,
    workers: usize,
) -> Result<CheckpointReport> {
    if limit < 5041 {
        return Err(invalid("limit must be at least 5041"));
    }
    let p = excluded_prime(j)?;
    let scan = scan_robin(5041, limit, policy, workers)?;
    let mut r = CheckpointReport::new("FAMILY_COPRIME");
    r.param("j", j).param("p_j", p).param("limit", limit);
    for &v in scan.violators.iter().filter(|&&v| v % p != 0) {
        r.require(format!("Robin at {v}"), Verdict::Fails);
    }
    for &u in scan.undecidable.iter().filter(|&&u| u % p != 0) {
        r.require(format!("Robin at {u}"), Verdict::Undecidable { bits_reached: policy.max_bits() });
    }
    r.witness(format!(
        "scanned (5040, {limit}]: {} rigorous comparisons, {} violators overall",
        scan.rigorous,
        scan.violators.len()
    ));
    Ok(r)
}

/// Identifiers of the numeric checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckpointId {
    Eq7AtK,
    SmallN158,
    Theta529,
    Primorials,
    Even2N,
    Free21,
    SigmaPhiChain,
}

impl CheckpointId {
    pub const ALL: [CheckpointId; 7] = [
        CheckpointId::Eq7AtK,
        CheckpointId::SmallN158,
        CheckpointId::Theta529,
        CheckpointId::Primorials,
        CheckpointId::Even2N,
        CheckpointId::Free21,
        CheckpointId::SigmaPhiChain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckpointId::Eq7AtK => "EQ7_AT_K",
            CheckpointId::SmallN158 => "SMALL_N_15_8",
            CheckpointId::Theta529 => "THETA_529",
            CheckpointId::Primorials => "PRIMORIALS",
            CheckpointId::Even2N => "EVEN_2N",
            CheckpointId::Free21 => "FREE21",
            CheckpointId::SigmaPhiChain => "SIGMA_PHI_CHAIN",
        }
    }
}

impl fmt::Display for CheckpointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckpointId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckpointId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("checkpoint {s}")))
    }
}

/// Ranges used by the checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckpointOptions {
    pub eq7_k: u64,
    pub theta_hi: u64,
    pub primorial_max_digits: u32,
    /// Odd `n` up to this bound are checked for `2n`.
    pub even_odd_hi: u64,
    pub sigma_phi_k_max: u64,
    pub workers: usize,
}

impl Default for CheckpointOptions {
    fn default() -> Self {
        CheckpointOptions {
            eq7_k: 13042,
            theta_hi: 1_000_000,
            primorial_max_digits: 100,
            even_odd_hi: 100_001,
            sigma_phi_k_max: 13042,
            workers: 1,
        }
    }
}

pub fn verify_checkpoint(id: CheckpointId, policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    verify_checkpoint_with(id, policy, &CheckpointOptions::default())
}

pub fn verify_checkpoint_with(
    id: CheckpointId,
    policy: &PrecisionPolicy,
    opts: &CheckpointOptions,
) -> Result<CheckpointReport> {
    match id {
        CheckpointId::Eq7AtK => checkpoint_eq7(policy, opts),
        CheckpointId::SmallN158 => checkpoint_small_n(policy),
        CheckpointId::Theta529 => checkpoint_theta(policy, opts),
        CheckpointId::Primorials => checkpoint_primorials(policy, opts),
        CheckpointId::Even2N => checkpoint_even(policy, opts),
        CheckpointId::Free21 => checkpoint_free21(policy),
        CheckpointId::SigmaPhiChain => checkpoint_sigma_phi(policy, opts),
    }
}

fn reduced_verdict(k: u64, reading: InnerReading, policy: &PrecisionPolicy) -> Result<Verdict> {
    match decide_pair(|p| bounds::reduced_sides(k, reading, p), policy) {
        Ok((v, ..)) => Ok(v),
        Err(Error::Domain(_)) => Ok(Verdict::Fails),
        Err(e) => Err(e),
    }
}

/// Smallest `k` in `[lo, hi]` with `holds(k)`, assuming `holds(hi)` and monotonicity.
fn bisect_smallest(lo: u64, hi: u64, holds: impl Fn(u64) -> Result<bool>) -> Result<u64> {
    if holds(lo)? {
        return Ok(lo);
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > 1 {
        let mid = a + (b - a) / 2;
        if holds(mid)? {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(b)
}

fn checkpoint_eq7(policy: &PrecisionPolicy, opts: &CheckpointOptions) -> Result<CheckpointReport> {
    let k0 = opts.eq7_k;
    let mut r = CheckpointReport::new(CheckpointId::Eq7AtK.as_str());
    r.param("k", k0).param("inner", "(f(k) - (k+1)) log 2.51 - log 2");
    let (v, l, rhs, prec) = decide_pair(|p| bounds::reduced_sides(k0, InnerReading::DStyle, p), policy)?;
    r.witness(format!(
        "log f({k0}) in {} < K log(inner) in {} at {prec} bits",
        show(&l, 10),
        show(&rhs, 10)
    ));
    r.require(format!("reduced inequality at k={k0}"), v);
    let sample: Vec<u64> = [2u64, 10, 100, 10_000, 1_000_000].iter().map(|m| k0 * m).collect();
    for &k in &sample {
        r.require(format!("reduced inequality at k={k}"), reduced_verdict(k, InnerReading::DStyle, policy)?);
    }
    r.witness(format!("rising sample {sample:?} holds"));
    let (vc, ch, _, _) = decide_intervals(
        |p| bounds::c_hat(k0, p),
        |p| Ok(Interval::from_decimal("1.525", p)),
        policy,
    )?;
    r.require(format!("C^({k0}) < 1.525"), vc);
    r.witness(format!("C^({k0}) in {} < 1.525", show(&ch, 10)));
    let (ve, _, e1, _) = decide_intervals(|p| Ok(Interval::one(p)), |p| bounds::e_of(1, p), policy)?;
    r.require("E_1 > 1", ve);
    r.witness(format!("E_1 in {}", show(&e1, 10)));
    let kc = bounds::reduced_constant(policy.start_bits())?;
    r.finding("constant_K", show(&kc, 8));
    if v.holds() {
        let kmin = bisect_smallest(2, k0, |k| Ok(reduced_verdict(k, InnerReading::DStyle, policy)?.holds()))?;
        r.finding("smallest_certified_k", kmin);
        let gaps: Vec<u64> = (kmin..=k0)
            .filter(|&k| !matches!(reduced_verdict(k, InnerReading::DStyle, policy), Ok(Verdict::Holds)))
            .collect();
        if gaps.is_empty() {
            r.witness(format!("every k in [{kmin}, {k0}] holds"));
        } else {
            r.finding("non_monotone_points", format!("{:?}", &gaps[..gaps.len().min(10)]));
        }
    }
    let vl = reduced_verdict(k0, InnerReading::Literal, policy)?;
    r.finding("literal_reading_at_k", vl);
    if vl.holds() {
        let kl = bisect_smallest(2, k0, |k| Ok(reduced_verdict(k, InnerReading::Literal, policy)?.holds()))?;
        r.finding("literal_reading_smallest_k", kl);
    }
    Ok(r)
}

fn checkpoint_small_n(policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::SmallN158.as_str());
    let q = BigRational::new(15.into(), 8.into());
    r.param("bound", "15/8").param("n", 680);
    let d = decide(&q, |p| robin_rhs(680, p), policy)?;
    r.require("15/8 < e^gamma log log 680", d.verdict);
    r.witness(format!("e^gamma log log 680 in {}", show(&d.rhs, 10)));
    let table = PrimeTable::for_k(2);
    for k in 1..=2 {
        let f = FamilyParams::new(1, k)?;
        let ab = table.a_exact(f)? * table.b_exact(f)?;
        let v = if ab <= q { Verdict::Holds } else { Verdict::Fails };
        r.require(format!("n/phi(n) <= 15/8 at k={k}"), v);
        r.witness(format!("A({k})B({k}) = {ab} <= 15/8"));
    }
    let checkpoints = [680u64, 1_000, 10_000, 1_000_000, 1_000_000_000, 1_000_000_000_000_000_000];
    let prec = policy.start_bits();
    let mut mono = true;
    for w in checkpoints.windows(2) {
        mono &= robin_rhs(w[0], prec)?.strictly_below(&robin_rhs(w[1], prec)?);
    }
    r.require("right-hand side increasing on the sample", if mono { Verdict::Holds } else { Verdict::Fails });
    r.witness("e^gamma log log n is increasing for n > e");
    let mut smallest = None;
    for n in 3..=680u64 {
        if decide(&q, |p| robin_rhs(n, p), policy)?.verdict.holds() {
            smallest = Some(n);
            break;
        }
    }
    r.finding("stated_threshold", 680);
    if let Some(n) = smallest {
        r.finding("discovered_smallest_n", n);
    }
    Ok(r)
}

fn checkpoint_theta(policy: &PrecisionPolicy, opts: &CheckpointOptions) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::Theta529.as_str());
    r.param("x_lo", 529).param("x_hi", opts.theta_hi);
    let mut cert = None;
    for prec in policy.schedule() {
        let c = bounds::theta_certificate(529, opts.theta_hi, prec)?;
        let done = c.verdict.holds();
        cert = Some(c);
        if done {
            break;
        }
    }
    let c = cert.expect("schedule is nonempty");
    r.require(format!("theta(x) > x log 2.51 on [529, {}]", opts.theta_hi), c.verdict);
    r.witness(format!(
        "smallest gap theta(x) - x log 2.51 at x={}: {}",
        c.worst_x,
        show(&c.worst_gap, 8)
    ));
    if !c.failures.is_empty() {
        r.witness(format!("failing x: {:?}", c.failures));
    }
    let prec = policy.start_bits();
    let (l, rr) = bounds::theta_chain_step(529, prec)?;
    let step = if rr.strictly_below(&l) {
        "holds"
    } else if l.strictly_below(&rr) {
        "fails"
    } else {
        "undecided"
    };
    r.finding("chain_step_at_529", format!("x(1 - 1/(2 log x)) = {} vs x log 2.51 = {}: {step}", show(&l, 8), show(&rr, 8)));
    let mut x = 529;
    while x < 1_000_000 {
        let (l, rr) = bounds::theta_chain_step(x, prec)?;
        if rr.strictly_below(&l) {
            break;
        }
        x += 1;
    }
    r.finding("chain_step_smallest_x", x);
    Ok(r)
}

fn checkpoint_primorials(policy: &PrecisionPolicy, opts: &CheckpointOptions) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::Primorials.as_str());
    let limit = BigUint::from(10u32).pow(opts.primorial_max_digits);
    r.param("range", format!("(30, 10^{}]", opts.primorial_max_digits));
    let mut pairs = Vec::new();
    let mut checked = 0;
    let mut last = 0;
    for (i, p) in first_primes(400).into_iter().enumerate() {
        pairs.push((p, 1));
        let f = Factorization::new(pairs.clone())?;
        let n = f.value();
        if n <= BigUint::from(30u32) {
            continue;
        }
        if n > limit {
            break;
        }
        let rep = check_robin_factored(&f, policy)?;
        r.require(format!("Robin at p_{}#", i + 1), rep.verdict);
        if let Some(small) = n.to_u64().filter(|&v| v <= 30030) {
            let rhs = rep.rhs.as_ref().expect("n > 2");
            r.witness(format!(
                "{small}: sigma/n = {} < {}",
                rep.lhs,
                show(rhs, 8)
            ));
        }
        checked += 1;
        last = i + 1;
    }
    r.finding("primorials_checked", checked);
    r.finding("largest_index", last);
    Ok(r)
}

fn checkpoint_even(policy: &PrecisionPolicy, opts: &CheckpointOptions) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::Even2N.as_str());
    let hi = opts.even_odd_hi;
    r.param("odd_n_max", hi).param("stated_threshold", 620);
    let scan = scan_robin(2, 2 * hi, policy, opts.workers)?;
    let failing: Vec<u64> = scan.violators.iter().filter(|&&v| v % 4 == 2).map(|v| v / 2).collect();
    for &n in failing.iter().filter(|&&n| n >= 620) {
        r.require(format!("Robin at 2*{n}"), Verdict::Fails);
    }
    for &u in scan.undecidable.iter().filter(|&&u| u % 4 == 2) {
        r.require(format!("Robin at {u}"), Verdict::Undecidable { bits_reached: policy.max_bits() });
    }
    let discovered = failing.iter().max().map_or(1, |m| m + 2);
    r.witness(format!("Robin holds for 2n for every odd n in [{discovered}, {hi}]"));
    r.finding("failing_odd_n", format!("{failing:?}"));
    r.finding("discovered_threshold", discovered);
    let b1 = bounds::b_of(1, policy.start_bits())?;
    if let Some(v) = &b1.value {
        r.finding("b(1)", show(v, 8));
        r.finding("2b(1)", show(&v.mul_int(2), 8));
    }
    let fam = verify_2k_family(1, 6, policy)?;
    r.require("2^1 n family above b(1)", if fam.certified { Verdict::Holds } else { Verdict::Fails });
    r.witness(format!("2^1 n family: {} samples above b(1) hold", fam.witness.len()));
    Ok(r)
}

fn log_c(prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let l10 = constants::ln10(w);
    Ok(Interval::from_decimal("13.11485", w)
        .mul(&l10)
        .exp()?
        .mul(&l10)
        .with_prec(prec))
}

fn ten_pow_13_11485_times_2_3(prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    Ok(Interval::from_decimal("13.11485", w)
        .mul(&constants::ln10(w))
        .exp()?
        .mul(&Interval::from_decimal("2.3", w))
        .with_prec(prec))
}

fn checkpoint_free21(policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::Free21.as_str());
    r.param("k_max", 20).param("log C", "10^13.11485 log 10");
    for k in 1..=20 {
        let (v, ..) = decide_intervals(|p| bounds::b_tilde_of(k, p), log_c, policy)?;
        r.require(format!("log(2^{k} b~({k})) < log C"), v);
    }
    let (v1, bt, _, p1) = decide_intervals(
        |p| bounds::b_tilde_of(20, p),
        |p| Ok(Interval::from_int(600_000_000_000u64, p)),
        policy,
    )?;
    r.require("log(2^20 b~(20)) < 6e11", v1);
    r.witness(format!("log(2^20 b~(20)) in {} < 6e11 at {p1} bits", show(&bt, 10)));
    let (v2, _, mid, _) = decide_intervals(
        |p| Ok(Interval::from_int(600_000_000_000u64, p)),
        ten_pow_13_11485_times_2_3,
        policy,
    )?;
    r.require("6e11 < 2.3 * 10^13.11485", v2);
    r.witness(format!("2.3 * 10^13.11485 in {}", show(&mid, 10)));
    let (v3, _, lc, _) = decide_intervals(ten_pow_13_11485_times_2_3, log_c, policy)?;
    r.require("2.3 * 10^13.11485 < log C", v3);
    r.witness(format!("log C in {}", show(&lc, 10)));
    Ok(r)
}

/// Outcome of [`sigma_phi_sweep`].
#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub fails: Vec<u64>,
    pub undecidable: Vec<u64>,
}

/// `m/phi(m) < e^gamma log log m` for `m = p_{k+1}# / p_j` and every `k` in `[k_lo, k_hi]`.
pub fn sigma_phi_sweep(j: u32, k_lo: u64, k_hi: u64, policy: &PrecisionPolicy) -> Result<SweepOutcome> {
    if k_lo < 2 || k_lo > k_hi {
        return Err(invalid("sweep needs 2 <= k_lo <= k_hi"));
    }
    FamilyParams::new(j, k_lo)?;
    let table = PrimeTable::for_k(k_hi);
    let w = policy.start_bits() + 40;
    let eg = constants::exp_gamma(w);
    let ln_pj = Interval::from_int(table.p(j as u64), w).ln()?;
    let mut ratio = Interval::one(w);
    let mut theta = Interval::zero(w);
    let mut out = SweepOutcome::default();
    for l in 1..=k_hi + 1 {
        let p = table.p(l);
        theta = theta.add(&Interval::from_int(p, w).ln()?);
        if l != j as u64 {
            ratio = ratio.mul(&Interval::from_frac(p as i64, p as i64 - 1, w));
        }
        let k = l - 1;
        if k < k_lo {
            continue;
        }
        let log_m = theta.sub(&ln_pj);
        let rhs = eg.mul(&log_m.ln()?);
        if ratio.strictly_below(&rhs) {
            continue;
        }
        let f = FamilyParams::new(j, k)?;
        let (v, ..) = decide_intervals(
            |p| table.totient_ratio(f, p),
            |p| {
                let w = p + GUARD;
                Ok(constants::exp_gamma(w).mul(&table.log_log_m(f, w)?).with_prec(p))
            },
            policy,
        )?;
        match v {
            Verdict::Holds => {}
            Verdict::Fails => out.fails.push(k),
            Verdict::Undecidable { .. } => out.undecidable.push(k),
        }
    }
    Ok(out)
}

fn checkpoint_sigma_phi(policy: &PrecisionPolicy, opts: &CheckpointOptions) -> Result<CheckpointReport> {
    let mut r = CheckpointReport::new(CheckpointId::SigmaPhiChain.as_str());
    let kmax = opts.sigma_phi_k_max;
    r.param("j", 1).param("k_range", format!("[3, {kmax}]"));
    let s = sigma_phi_sweep(1, 3, kmax, policy)?;
    for &k in &s.fails {
        r.require(format!("chain at k={k}"), Verdict::Fails);
    }
    for &k in &s.undecidable {
        r.require(format!("chain at k={k}"), Verdict::Undecidable { bits_reached: policy.max_bits() });
    }
    r.witness(format!("m/phi(m) < e^gamma log log m for m = p_(k+1)#/2, all k in [3, {kmax}]"));
    for j in [2u32, 3] {
        let s = sigma_phi_sweep(j, 3, kmax.min(2000), policy)?;
        let from = s.fails.iter().chain(&s.undecidable).max().map_or(3, |k| k + 1);
        r.finding(&format!("j{j}_failing_k"), format!("{:?}", &s.fails[..s.fails.len().min(12)]));
        r.finding(&format!("j{j}_holds_from_k"), from);
    }
    Ok(r)
}

/// `(1 - 2^-(k+1)) (e^gamma L + 2.51/L) < e^gamma L`, the inequality behind `b(k)`.
pub fn two_k_chain(k: u64, big_l: &Interval, policy: &PrecisionPolicy) -> Result<Verdict> {
    let factor = |p: u32| Interval::one(p).sub(&Interval::one(p).ldexp(-(k as i64) - 1));
    let (v, ..) = decide_intervals(
        |p| {
            let w = p + GUARD;
            let l = big_l.with_prec(w);
            let eg = constants::exp_gamma(w);
            let inner = eg.mul(&l).add(&Interval::from_decimal("2.51", w).div(&l)?);
            Ok(factor(w).mul(&inner).with_prec(p))
        },
        |p| {
            let w = p + GUARD;
            Ok(constants::exp_gamma(w).mul(&big_l.with_prec(w)).with_prec(p))
        },
        policy,
    )?;
    Ok(v)
}

/// Largest `log b(k)` for which sampled odd `n` are checked directly.
const DIRECT_LOG_CAP: f64 = 20_000.0;

/// Robin's inequality for `2^k n` at odd `n` above `b(k)`, directly where the sample is
/// reachable and through [`two_k_chain`] always.
pub fn verify_2k_family(k: u64, odd_samples: usize, policy: &PrecisionPolicy) -> Result<CheckpointReport> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let samples = odd_samples.max(1);
    let prec = policy.start_bits();
    let b = bounds::b_of(k, prec)?;
    let mut r = CheckpointReport::new("TWO_K_FAMILY");
    r.param("k", k).param("samples", samples);
    r.finding("log b(k)", show(&b.log_b, 10));
    let mut direct: Vec<Factorization> = Vec::new();
    if let Some(bv) = b.value.as_ref().filter(|v| v.hi().to_f64() < 1e15) {
        let start = (bv.hi().ceil_int().to_u64().expect("below 1e15") + 1) | 1;
        let start = if start % 2 == 0 { start + 1 } else { start };
        let mut ns: Vec<u64> = (0..samples.div_ceil(2) as u64).map(|i| start + 2 * i).collect();
        let mut spread = start;
        while ns.len() < samples && spread < (u64::MAX / 1024) >> k {
            spread = spread * 10 + 1;
            ns.push(spread | 1);
        }
        for n in ns {
            direct.push(factor(n)?);
        }
    } else if b.log_b.hi().to_f64() < DIRECT_LOG_CAP {
        let ln3 = 3f64.ln();
        let e0 = (b.log_b.hi().to_f64() / ln3).ceil() as u32 + 1;
        for i in 0..samples as u32 {
            direct.push(Factorization::new(vec![(3, e0 + i)])?);
        }
    }
    let two_k = Factorization::new(vec![(2, k as u32)])?;
    for odd in &direct {
        let above = bounds_check_above(odd, &b.log_b, policy)?;
        r.require(format!("odd part {odd} above b({k})"), above);
        let n = two_k.mul(odd);
        let rep = check_robin_factored(&n, policy)?;
        r.require(format!("Robin at 2^{k} * ({odd})"), rep.verdict);
        let big_l = log_of_factorization(&n, prec + GUARD).ln()?;
        r.require(format!("chain at 2^{k} * ({odd})"), two_k_chain(k, &big_l, policy)?);
        r.witness(format!("2^{k} * ({odd}): Robin {} and chain holds", rep.verdict));
    }
    if direct.is_empty() {
        let w = prec + GUARD;
        let l0 = Interval::from_decimal("2.51", w)
            .mul(&Interval::from_int((BigInt::one() << (k + 1)) - 1, w))
            .div(&constants::exp_gamma(w))?
            .sqrt()?;
        for s in 1..=samples as i64 {
            let big_l = l0.mul(&Interval::one(w).add(&Interval::one(w).ldexp(-s)));
            r.require(format!("chain at L = L0 (1 + 2^-{s})"), two_k_chain(k, &big_l, policy)?);
            r.witness(format!("chain holds at L = L0 (1 + 2^-{s})"));
        }
    }
    Ok(r)
}

fn bounds_check_above(odd: &Factorization, log_b: &Interval, policy: &PrecisionPolicy) -> Result<Verdict> {
    let (v, ..) = decide_intervals(
        |p| Ok(log_b.with_prec(p)),
        |p| Ok(log_of_factorization(odd, p)),
        policy,
    )?;
    Ok(v)
}

/// One violator with its 2-adic valuation `k` and odd part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub n: u64,
    pub k: u32,
    pub odd_part: u64,
    /// `odd_part <= b(k)` (for `k >= 1`) or `odd_part <= 9` (for `k = 0`).
    pub within_bound: Verdict,
}

/// Result of [`classify_counterexamples`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub rows: Vec<ClassRow>,
    pub report: CheckpointReport,
}

/// Assigns every violator `<= limit` to `E_k`, `k` its 2-adic valuation, and checks that its
/// odd part is at most `b(k)`. Odd violators (`k = 0`) are checked against the bound 9.
pub fn classify_counterexamples(limit: u64, policy: &PrecisionPolicy, workers: usize) -> Result<Classification> {
    if limit < 2 {
        return Err(invalid("limit must be at least 2"));
    }
    let scan = scan_robin(1, limit, policy, workers)?;
    let mut r = CheckpointReport::new("CLASSIFY");
    r.param("limit", limit);
    let mut rows = Vec::new();
    for &n in &scan.violators {
        let k = n.trailing_zeros();
        let odd = n >> k;
        let within = if k == 0 {
            if odd <= 9 { Verdict::Holds } else { Verdict::Fails }
        } else {
            let log_b = |p: u32| Ok(bounds::b_of(k as u64, p)?.log_b);
            if odd == 1 {
                let (v, ..) = decide_intervals(|p| Ok(Interval::zero(p)), log_b, policy)?;
                v
            } else {
                decide_intervals(|p| Interval::from_int(odd, p).ln(), log_b, policy)?.0
            }
        };
        r.require(format!("{n} = 2^{k} * {odd} within its bound"), within);
        rows.push(ClassRow {
            n,
            k,
            odd_part: odd,
            within_bound: within,
        });
    }
    for &u in &scan.undecidable {
        r.require(format!("Robin at {u}"), Verdict::Undecidable { bits_reached: policy.max_bits() });
    }
    let odd: Vec<u64> = rows.iter().filter(|row| row.k == 0).map(|row| row.n).collect();
    r.finding("violators", rows.len());
    r.finding("odd_violators", format!("{odd:?}"));
    r.witness("each violator lies in exactly one E_k, k = its 2-adic valuation");
    Ok(Classification { rows, report: r })
}

/// `#{violators <= limit} / limit`, with the violator count.
pub fn density_estimate(limit: u64, policy: &PrecisionPolicy, workers: usize) -> Result<(BigRational, u64)> {
    if limit == 0 {
        return Err(invalid("limit must be positive"));
    }
    let scan = scan_robin(1, limit, policy, workers)?;
    if !scan.undecidable.is_empty() {
        return Err(Error::Unknown(format!("undecidable entries: {:?}", scan.undecidable)));
    }
    let v = scan.violators.len() as u64;
    Ok((BigRational::new(v.into(), limit.into()), v))
}
