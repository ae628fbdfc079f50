//! The bound functions behind the prime-product argument: `A(k)`, `B(k)`, `C(k)`, `D(k)`,
//! `E_j`, `b(k)`, `b~(k)`, the Mertens partial-sum bound and the explicit prime bounds.
//!
//! Throughout, `p_l` is the `l`-th prime and the index set of a family is
//! `{1, ..., k + 1} \ {j}`, so that `A(k) B(k) = m / phi(m)` for `m = p_{k+1}# / p_j`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{first_primes, primes_up_to};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{constants, decide, decide_intervals, Interval, PrecisionPolicy, Verdict};

/// Above this `k`, `A` and `B` are accumulated as intervals instead of exact rationals.
pub const EXACT_K_LIMIT: u64 = 1000;

/// Guard bits used internally before rounding results to the requested precision.
const GUARD: u32 = 24;

/// `(j, k)`: the excluded prime index and the prime count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    j: u32,
    k: u64,
}

impl FamilyParams {
    pub fn new(j: u32, k: u64) -> Result<Self> {
        if !(1..=3).contains(&j) {
            return Err(invalid(format!("j={j} is outside {{1, 2, 3}}")));
        }
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        Ok(FamilyParams { j, k })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

/// The first primes, shared by repeated bound evaluations.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Enough primes for every family with `k <= k_max` (that is, through `p_{k_max + 1}`).
    pub fn for_k(k_max: u64) -> Self {
        PrimeTable {
            primes: first_primes(k_max as usize + 1),
        }
    }

    /// `p_l`, 1-based.
    pub fn p(&self, l: u64) -> u64 {
        self.primes[l as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    fn ensure(&self, k: u64) -> Result<()> {
        if (k + 1) as usize > self.primes.len() {
            return Err(invalid(format!("prime table too short for k={k}")));
        }
        Ok(())
    }

    fn family(&self, f: FamilyParams) -> Result<impl Iterator<Item = u64> + '_> {
        if f.j as u64 > f.k + 1 {
            return Err(invalid(format!("j={} exceeds k+1={}", f.j, f.k + 1)));
        }
        self.ensure(f.k)?;
        Ok((1..=f.k + 1).filter(move |&l| l != f.j as u64).map(|l| self.p(l)))
    }

    /// `A(k) = prod (p + 1) / p` over the family.
    pub fn a_exact(&self, f: FamilyParams) -> Result<BigRational> {
        self.exact_product(f, |p| (BigInt::from(p) + 1, BigInt::from(p)))
    }

    /// `B(k) = prod p^2 / (p^2 - 1)` over the family.
    pub fn b_exact(&self, f: FamilyParams) -> Result<BigRational> {
        self.exact_product(f, |p| {
            let p2 = BigInt::from(p) * p;
            (p2.clone(), p2 - 1)
        })
    }

    /// Multiplies numerators and denominators separately and reduces once.
    fn exact_product(&self, f: FamilyParams, term: impl Fn(u64) -> (BigInt, BigInt)) -> Result<BigRational> {
        let (mut num, mut den) = (Vec::new(), Vec::new());
        for p in self.family(f)? {
            let (a, b) = term(p);
            num.push(a);
            den.push(b);
        }
        Ok(BigRational::new(balanced_product(num), balanced_product(den)))
    }

    fn product_interval(
        &self,
        f: FamilyParams,
        prec: u32,
        term: impl Fn(u64, u32) -> (BigInt, BigInt),
    ) -> Result<Interval> {
        let n = f.k as usize + 1;
        let w = prec + GUARD + (usize::BITS - n.leading_zeros());
        let mut acc = Interval::one(w);
        for p in self.family(f)? {
            let (num, den) = term(p, w);
            acc = acc.mul(&Interval::from_ratio(&BigRational::new(num, den), w));
        }
        Ok(acc.with_prec(prec))
    }

    /// `A(k)` as an interval with per-factor outward rounding.
    pub fn a_interval(&self, f: FamilyParams, prec: u32) -> Result<Interval> {
        self.product_interval(f, prec, |p, _| (BigInt::from(p) + 1, BigInt::from(p)))
    }

    /// `B(k)` as an interval with per-factor outward rounding.
    pub fn b_interval(&self, f: FamilyParams, prec: u32) -> Result<Interval> {
        self.product_interval(f, prec, |p, _| {
            let p2 = BigInt::from(p) * p;
            (p2.clone(), p2 - 1)
        })
    }

    /// `m / phi(m) = prod p / (p - 1)` over the family, exact for `k <= EXACT_K_LIMIT`.
    pub fn totient_ratio(&self, f: FamilyParams, prec: u32) -> Result<Interval> {
        if f.k <= EXACT_K_LIMIT {
            let q = self.a_exact(f)? * self.b_exact(f)?;
            return Ok(Interval::from_ratio(&q, prec));
        }
        self.product_interval(f, prec, |p, _| (BigInt::from(p), BigInt::from(p) - 1))
    }

    /// `log(p_{k+1}) exp(c1 - 1/p_j + 5 / log p_{k+1})`, the upper bound on `A(k)`.
    pub fn a_upper(&self, f: FamilyParams, prec: u32) -> Result<Interval> {
        self.ensure(f.k)?;
        let w = prec + GUARD;
        let lp = Interval::from_int(self.p(f.k + 1), w).ln()?;
        let pj = self.p(f.j as u64);
        let arg = constants::c1(w)
            .sub(&Interval::from_frac(1, pj as i64, w))
            .add(&Interval::from_int(5, w).div(&lp)?);
        Ok(lp.mul(&arg.exp()?).with_prec(prec))
    }

    /// Checks `sum_{l <= k+1} 1/p_l < log log p_{k+1} + c1 + 5 / log p_{k+1}`.
    pub fn mertens_upper_check(&self, k: u64, policy: &PrecisionPolicy) -> Result<MertensCheck> {
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        self.ensure(k)?;
        let top = self.p(k + 1);
        let bound = |prec: u32| -> Result<Interval> {
            let w = prec + GUARD;
            let lp = Interval::from_int(top, w).ln()?;
            Ok(lp
                .ln()?
                .add(&constants::c1(w))
                .add(&Interval::from_int(5, w).div(&lp)?)
                .with_prec(prec))
        };
        let primes = &self.primes[..=k as usize];
        let (verdict, sum, bound_iv) = if k <= EXACT_K_LIMIT {
            let sum = primes.iter().fold(BigRational::zero(), |acc, &p| {
                acc + BigRational::new(BigInt::one(), BigInt::from(p))
            });
            let d = decide(&sum, bound, policy)?;
            (d.verdict, Interval::from_ratio(&sum, d.prec), d.rhs)
        } else {
            let sum = |prec: u32| -> Result<Interval> {
                let w = prec + GUARD + 16;
                let mut acc = Interval::zero(w);
                for &p in primes {
                    acc = acc.add(&Interval::from_frac(1, p as i64, w));
                }
                Ok(acc.with_prec(prec))
            };
            let (v, s, b, _) = decide_intervals(sum, bound, policy)?;
            (v, s, b)
        };
        Ok(MertensCheck {
            k,
            verdict,
            sum,
            bound: bound_iv,
        })
    }

    /// `log log m` for `m = p_{k+1}# / p_j`, via `theta(p_{k+1}) - log p_j`.
    pub fn log_log_m(&self, f: FamilyParams, prec: u32) -> Result<Interval> {
        self.ensure(f.k)?;
        let w = prec + GUARD;
        let theta = crate::arith::theta_of_primes(&self.primes[..=f.k as usize], w);
        let log_m = theta.sub(&Interval::from_int(self.p(f.j as u64), w).ln()?);
        Ok(log_m.ln()?.with_prec(prec))
    }

    /// `D(k)`, with `log log m > D(k)` certified through theta when `k >= 99`.
    pub fn d_of(&self, f: FamilyParams, policy: &PrecisionPolicy) -> Result<DValue> {
        let prec = policy.start_bits();
        let value = match d_value(f, self.p(f.j as u64), prec) {
            Ok(v) => Some(v),
            Err(crate::Error::Domain(_)) => None,
            Err(e) => return Err(e),
        };
        let valid = f.k >= 99;
        let certified = if valid {
            let pj = self.p(f.j as u64);
            let (v, _, _, _) = decide_intervals(
                |p| d_value(f, pj, p),
                |p| self.log_log_m(f, p),
                policy,
            )?;
            Some(v)
        } else {
            None
        };
        Ok(DValue {
            value,
            valid,
            certified,
        })
    }

    /// One row of the bound table.
    pub fn row(&self, f: FamilyParams, prec: u32) -> Result<BoundRow> {
        let exact = f.k <= EXACT_K_LIMIT;
        let (a_exact, b_exact) = if exact {
            (Some(self.a_exact(f)?), Some(self.b_exact(f)?))
        } else {
            (None, None)
        };
        let a = match &a_exact {
            Some(q) => Interval::from_ratio(q, prec),
            None => self.a_interval(f, prec)?,
        };
        let b = match &b_exact {
            Some(q) => Interval::from_ratio(q, prec),
            None => self.b_interval(f, prec)?,
        };
        let c = if f.k >= 2 { Some(c_of(f, self.p(f.j as u64), prec)?) } else { None };
        let d = if f.k >= 2 { d_value(f, self.p(f.j as u64), prec).ok() } else { None };
        Ok(BoundRow {
            k: f.k,
            j: f.j,
            a_exact,
            b_exact,
            a,
            b,
            a_upper: self.a_upper(f, prec)?,
            c,
            d,
            d_valid: f.k >= 99,
            e: e_of(f.j, prec)?,
            b_log: unless_overflow(b_of(f.k, prec))?,
            b_tilde_log: unless_overflow(b_tilde_of(f.k, prec))?,
        })
    }
}

fn balanced_product(mut xs: Vec<BigInt>) -> BigInt {
    if xs.is_empty() {
        return BigInt::one();
    }
    while xs.len() > 1 {
        xs = xs
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    xs.pop().expect("nonempty")
}

fn unless_overflow<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Overflow(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Outcome of [`PrimeTable::mertens_upper_check`].
#[derive(Debug, Clone)]
pub struct MertensCheck {
    pub k: u64,
    pub verdict: Verdict,
    pub sum: Interval,
    pub bound: Interval,
}

/// `D(k)` with its validity flag and, for `k >= 99`, the theta-based certification verdict.
/// `value` is `None` when the logarithm's argument is not positive (small `k`).
#[derive(Debug, Clone)]
pub struct DValue {
    pub value: Option<Interval>,
    pub valid: bool,
    pub certified: Option<Verdict>,
}

/// Every bound at one `(j, k)`. `b_log` and `b_tilde_log` depend on `k` only.
#[derive(Debug, Clone)]
pub struct BoundRow {
    pub k: u64,
    pub j: u32,
    pub a_exact: Option<BigRational>,
    pub b_exact: Option<BigRational>,
    pub a: Interval,
    pub b: Interval,
    pub a_upper: Interval,
    pub c: Option<Interval>,
    pub d: Option<Interval>,
    pub d_valid: bool,
    pub e: Interval,
    /// `None` once `log(2^k b(k))` overflows the exponent range.
    pub b_log: Option<BValue>,
    pub b_tilde_log: Option<Interval>,
}

/// `A(k)` for a single family (builds its own prime table).
pub fn a_exact(f: FamilyParams) -> Result<BigRational> {
    PrimeTable::for_k(f.k).a_exact(f)
}

/// `B(k)` for a single family.
pub fn b_exact(f: FamilyParams) -> Result<BigRational> {
    PrimeTable::for_k(f.k).b_exact(f)
}

/// Upper bound on `A(k)` for a single family.
pub fn a_upper(f: FamilyParams, prec: u32) -> Result<Interval> {
    PrimeTable::for_k(f.k).a_upper(f, prec)
}

/// Mertens partial-sum check for a single `k`.
pub fn mertens_upper_check(k: u64, policy: &PrecisionPolicy) -> Result<MertensCheck> {
    PrimeTable::for_k(k).mertens_upper_check(k, policy)
}

/// `D(k)` for a single family.
pub fn d_of(f: FamilyParams, policy: &PrecisionPolicy) -> Result<DValue> {
    PrimeTable::for_k(f.k).d_of(f, policy)
}

/// `(k (log k + log log k - 1), k (log k + log log k))`, which bracket `p_k` for `k >= 6`.
pub fn prime_bounds(k: u64, prec: u32) -> Result<(Interval, Interval)> {
    if k < 6 {
        return Err(invalid("prime bounds require k >= 6"));
    }
    let (u, v) = log_sums(k, prec + GUARD)?;
    Ok((v.with_prec(prec), u.with_prec(prec)))
}

/// `(a (log a + log log a), a (log a + log log a - 1))` for an integer `a >= 3`.
fn log_sums(a: u64, w: u32) -> Result<(Interval, Interval)> {
    let x = Interval::from_int(a, w);
    let l = x.ln()?;
    let s = l.add(&l.ln()?);
    let u = x.mul(&s);
    let v = x.mul(&s.sub(&Interval::one(w)));
    Ok((u, v))
}

fn require_k2(k: u64) -> Result<()> {
    if k < 2 {
        return Err(domain("log log (k+1) requires k >= 2"));
    }
    Ok(())
}

/// `f(k) = (k + 1)(log(k + 1) + log log(k + 1))`.
pub fn f_of(k: u64, prec: u32) -> Result<Interval> {
    require_k2(k)?;
    Ok(log_sums(k + 1, prec + GUARD)?.0.with_prec(prec))
}

/// `C^(k) = exp(5 / log((k + 1)(log(k + 1) + log log(k + 1) - 1)))`, independent of `j`.
pub fn c_hat(k: u64, prec: u32) -> Result<Interval> {
    require_k2(k)?;
    let w = prec + GUARD;
    let (_, v) = log_sums(k + 1, w)?;
    Ok(Interval::from_int(5, w).div(&v.ln()?)?.exp()?.with_prec(prec))
}

/// `C~(k) = log((k + 1)(log(k + 1) + log log(k + 1))) C^(k)`, independent of `j`.
pub fn c_tilde(k: u64, prec: u32) -> Result<Interval> {
    require_k2(k)?;
    let w = prec + GUARD;
    let (u, _) = log_sums(k + 1, w)?;
    Ok(u.ln()?.mul(&c_hat(k, w)?).with_prec(prec))
}

fn c_of(f: FamilyParams, pj: u64, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let shift = constants::c1(w).sub(&Interval::from_frac(1, pj as i64, w));
    Ok(c_tilde(f.k, w)?.mul(&shift.exp()?).with_prec(prec))
}

/// `C(k) = e^(c1 - 1/p_j) C~(k)`.
pub fn c_full(f: FamilyParams, prec: u32) -> Result<Interval> {
    require_k2(f.k)?;
    c_of(f, first_primes(f.j as usize)[f.j as usize - 1], prec)
}

fn d_value(f: FamilyParams, pj: u64, prec: u32) -> Result<Interval> {
    require_k2(f.k)?;
    let w = prec + GUARD;
    let (_, v) = log_sums(f.k + 1, w)?;
    let inner = v
        .mul(&constants::ln_2_51(w))
        .sub(&Interval::from_int(pj, w).ln()?);
    if !inner.is_positive() {
        return Err(domain(format!("D({}) has a non-positive logarithm argument", f.k)));
    }
    Ok(inner.ln()?.with_prec(prec))
}

/// `D(k) = log((k + 1)(log(k + 1) + log log(k + 1) - 1) log 2.51 - log p_j)` without the
/// theta certification.
pub fn d_plain(f: FamilyParams, prec: u32) -> Result<Interval> {
    d_value(f, first_primes(f.j as usize)[f.j as usize - 1], prec)
}

/// `e^(gamma - c1 + 1/p_j) p_j^2 / (p_j^2 - 1)`, the coefficient of `D(k)` in the
/// rescaled `C(k) B(k) < e^gamma D(k)`.
pub fn d_coefficient(j: u32, prec: u32) -> Result<Interval> {
    FamilyParams::new(j, 3)?;
    let w = prec + GUARD;
    let p = first_primes(j as usize)[j as usize - 1] as i64;
    let expo = constants::gamma(w)
        .sub(&constants::c1(w))
        .add(&Interval::from_frac(1, p, w));
    Ok(expo
        .exp()?
        .mul(&Interval::from_frac(p * p, p * p - 1, w))
        .with_prec(prec))
}

/// `E_j = 6 p_j^2 e^(gamma - c1 + 1/p_j) / (pi^2 (p_j^2 - 1))`.
pub fn e_of(j: u32, prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    Ok(d_coefficient(j, w)?
        .mul_int(6)
        .div(&constants::pi_sq(w))?
        .with_prec(prec))
}

/// Largest `log log(2^k b(k))` (likewise for `b~`) enclosed at all; beyond it the
/// single logarithm no longer fits a working mantissa.
const LOG_LOG_CAP: i64 = 1 << 16;

fn capped_exp(s: Interval, what: &str) -> Result<Interval> {
    if s.hi() > &crate::numerics::Dyadic::from_int(LOG_LOG_CAP) {
        return Err(Error::Overflow(format!("log log of {what} exceeds 2^16")));
    }
    s.exp()
}

/// Largest `log b(k)` for which `b(k)` itself is also enclosed.
const B_VALUE_LOG_CAP: i64 = 1 << 20;

/// `b(k)` in log form: `log(2^k b(k)) = exp(sqrt(2.51 (2^(k+1) - 1) / e^gamma))`.
#[derive(Debug, Clone)]
pub struct BValue {
    pub k: u64,
    /// `log(2^k b(k))`.
    pub log_2k_b: Interval,
    /// `log b(k)`.
    pub log_b: Interval,
    /// `b(k)` itself, when small enough to enclose directly.
    pub value: Option<Interval>,
}

fn two_pow_minus_one(k: u64, w: u32) -> Result<Interval> {
    if k > 4000 {
        return Err(Error::Overflow("k too large for the 2^k family".into()));
    }
    Ok(Interval::from_int((BigInt::one() << (k + 1)) - 1, w))
}

/// `b(k) = exp(exp(sqrt(2.51 (2^(k+1) - 1) / e^gamma))) / 2^k`.
pub fn b_of(k: u64, prec: u32) -> Result<BValue> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let w = prec + GUARD;
    let s = Interval::from_decimal("2.51", w)
        .mul(&two_pow_minus_one(k, w)?)
        .div(&constants::exp_gamma(w))?
        .sqrt()?;
    let log_2k_b = capped_exp(s, "2^k b(k)")?;
    let log_b = log_2k_b.sub(&constants::ln2(w).mul_int(k as i64));
    let value = if log_b.hi() < &crate::numerics::Dyadic::from_int(B_VALUE_LOG_CAP) {
        Some(log_b.exp()?.with_prec(prec))
    } else {
        None
    };
    Ok(BValue {
        k,
        log_2k_b: log_2k_b.with_prec(prec),
        log_b: log_b.with_prec(prec),
        value,
    })
}

/// `log(2^k b~(k)) = exp((0.0168 (2^(k+1) - 1) / e^gamma)^(1/3))`.
pub fn b_tilde_of(k: u64, prec: u32) -> Result<Interval> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let w = prec + GUARD;
    let s = Interval::from_frac(168, 10_000, w)
        .mul(&two_pow_minus_one(k, w)?)
        .div(&constants::exp_gamma(w))?
        .cbrt()?;
    Ok(capped_exp(s, "2^k b~(k)")?.with_prec(prec))
}

/// Reading of the logarithm's inner argument in the reduced `log f(k) < K log(...)` step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerReading {
    /// `(f(k) - (k + 1)) log 2.51 - log 2`, which is `e^D(k)` at `j = 1`.
    DStyle,
    /// `(f(k) - 1) log 2.51 - log 2`, as displayed.
    Literal,
}

/// `8 e^(gamma - c1 + 1/2) / (pi^2 * 1.525)`.
pub fn reduced_constant(prec: u32) -> Result<Interval> {
    let w = prec + GUARD;
    let expo = constants::gamma(w)
        .sub(&constants::c1(w))
        .add(&Interval::from_frac(1, 2, w));
    Ok(expo
        .exp()?
        .mul_int(8)
        .div(&constants::pi_sq(w).mul(&Interval::from_decimal("1.525", w)))?
        .with_prec(prec))
}

/// Both sides of `log f(k) < K log(inner)` with `K` from [`reduced_constant`].
pub fn reduced_sides(k: u64, reading: InnerReading, prec: u32) -> Result<(Interval, Interval)> {
    require_k2(k)?;
    let w = prec + GUARD;
    let fk = f_of(k, w)?;
    let base = match reading {
        InnerReading::DStyle => fk.sub(&Interval::from_int(k + 1, w)),
        InnerReading::Literal => fk.sub(&Interval::one(w)),
    };
    let inner = base.mul(&constants::ln_2_51(w)).sub(&constants::ln2(w));
    let rhs = reduced_constant(w)?.mul(&inner.ln()?);
    Ok((fk.ln()?.with_prec(prec), rhs.with_prec(prec)))
}

/// Certifies `exp theta(x) >= 2.51^x`, as `theta(x) > x log 2.51`, for every integer `x` in
/// `[lo, hi]`. Returns the verdict and the smallest gap `theta(x) - x log 2.51` seen.
pub fn theta_certificate(lo: u64, hi: u64, prec: u32) -> Result<ThetaCertificate> {
    if lo < 2 || lo > hi {
        return Err(invalid("theta certificate needs 2 <= lo <= hi"));
    }
    let ps = primes_up_to(hi);
    let w = prec + GUARD + (usize::BITS - ps.len().leading_zeros());
    let l251 = constants::ln_2_51(w);
    let mut theta = Interval::zero(w);
    let mut next = 0usize;
    let mut worst: Option<(u64, Interval)> = None;
    let mut failures = Vec::new();
    for x in lo..=hi {
        while next < ps.len() && ps[next] <= x {
            theta = theta.add(&Interval::from_int(ps[next], w).ln()?);
            next += 1;
        }
        let gap = theta.sub(&l251.mul_int(x as i64));
        if !gap.is_positive() && failures.len() < 16 {
            failures.push(x);
        }
        if worst.as_ref().is_none_or(|(_, g)| gap.lo() < g.lo()) {
            worst = Some((x, gap));
        }
    }
    let (worst_x, worst_gap) = worst.expect("nonempty range");
    Ok(ThetaCertificate {
        lo,
        hi,
        verdict: if failures.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        failures,
        worst_x,
        worst_gap: worst_gap.with_prec(prec),
    })
}

/// Result of [`theta_certificate`].
#[derive(Debug, Clone)]
pub struct ThetaCertificate {
    pub lo: u64,
    pub hi: u64,
    pub verdict: Verdict,
    /// First few `x` where the gap was not certified positive.
    pub failures: Vec<u64>,
    pub worst_x: u64,
    pub worst_gap: Interval,
}

/// `x (1 - 1 / (2 log x))` versus `x log 2.51` at integer `x`: the intermediate step of the
/// prime-product bound. Returns `(lhs, rhs)`.
pub fn theta_chain_step(x: u64, prec: u32) -> Result<(Interval, Interval)> {
    if x < 2 {
        return Err(invalid("x must be at least 2"));
    }
    let w = prec + GUARD;
    let xi = Interval::from_int(x, w);
    let lhs = xi.mul(&Interval::one(w).sub(&xi.ln()?.ldexp(1).recip()?));
    let rhs = xi.mul(&constants::ln_2_51(w));
    Ok((lhs.with_prec(prec), rhs.with_prec(prec)))
}
