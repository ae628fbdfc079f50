use std::io::{self, IsTerminal, Write};
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use robinv_core::arith::{factor, phi, segment_count, sigma, SieveConfig};
use robinv_core::bounds::{self, FamilyParams, PrimeTable};
use robinv_core::lagarias::{
    check_kaneko_lagarias, check_lagarias, verify_g_monotone, verify_h_lemma, verify_robin_implies_kl,
    LemmaGrid, LemmaId,
};
use robinv_core::numerics::{Interval, PrecisionPolicy};
use robinv_core::robin::{
    check_robin, classify_counterexamples, density_estimate, scan_robin_segments, verify_2k_family,
    verify_checkpoint_with, verify_family_coprime, CheckpointId, CheckpointOptions,
};
use robinv_core::superabundant::{sa_generate_with, sa_scan, verify_kl_on_sa, verify_lli_reduction, SAEntry};
use serde_json::Value;

use crate::args::{BoundsCmd, Command, Global, LagariasCmd, RobinCmd, SaCmd, Variant};
use crate::output::{big_value, checkpoint_record, inequality_record, verdict_value, Record};
use crate::resume::{fingerprint, ResumeToken};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(robinv_core::Error),
    Io(String),
    /// A resumable scan stopped early on request; the token holds its progress.
    Halted { next_segment: u64, total: u64 },
}

impl From<robinv_core::Error> for CliError {
    fn from(e: robinv_core::Error) -> Self {
        use robinv_core::Error as E;
        match e {
            E::InvalidInput(m) | E::Domain(m) | E::Unknown(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Resolved global settings.
pub struct Ctx {
    pub global: Global,
    pub policy: PrecisionPolicy,
    pub workers: usize,
    pub sieve: SieveConfig,
}

fn parse_growth(s: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Usage(format!("bad precision growth {s:?}; expected N or N/D"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    Ok((n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?))
}

impl Ctx {
    pub fn new(global: Global) -> CliResult<Self> {
        let (num, den) = parse_growth(&global.precision_growth)?;
        let policy = PrecisionPolicy::new(global.precision_start, global.precision_max, num, den)?;
        let workers = match global.workers {
            Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
            Some(w) => w,
            None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        };
        let sieve = SieveConfig::with_segment_size(global.segment_size)?;
        Ok(Ctx {
            global,
            policy,
            workers,
            sieve,
        })
    }
}

fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Usage(format!("bad range {s:?}; expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn ratio_str(q: &num_rational::BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn run(cmd: &Command, ctx: &Ctx) -> CliResult<Vec<Record>> {
    match cmd {
        Command::Factor { n } => {
            let f = factor(*n)?;
            let pairs: Vec<Value> = f.pairs().iter().map(|&(p, e)| Value::from(vec![p, e as u64])).collect();
            Ok(vec![Record::new("factor")
                .put("n", *n)
                .put("factorization", f.to_string())
                .put("pairs", pairs)])
        }
        Command::Sigma { n } => {
            let f = factor(*n)?;
            Ok(vec![Record::new("sigma").put("n", *n).put("sigma", big_value(&sigma(&f)))])
        }
        Command::Phi { n } => {
            let f = factor(*n)?;
            Ok(vec![Record::new("phi").put("n", *n).put("phi", big_value(&phi(&f)))])
        }
        Command::Robin(c) => robin(c, ctx),
        Command::Bounds(c) => bounds_cmd(c, ctx),
        Command::Lagarias(c) => lagarias(c, ctx),
        Command::Sa(c) => sa(c, ctx),
    }
}

fn robin(cmd: &RobinCmd, ctx: &Ctx) -> CliResult<Vec<Record>> {
    let pol = &ctx.policy;
    match cmd {
        RobinCmd::Check { n } => Ok(vec![inequality_record("robin check", &check_robin(*n, pol)?)]),
        RobinCmd::Scan { lo, hi } => robin_scan(*lo, *hi, ctx),
        RobinCmd::Family { j, limit } => {
            let r = verify_family_coprime(*j, *limit, pol, ctx.workers)?;
            Ok(vec![checkpoint_record("robin family", &r)])
        }
        RobinCmd::Checkpoints {
            id,
            eq7_k,
            theta_hi,
            primorial_digits,
            even_odd_hi,
            sigma_phi_k_max,
        } => {
            let ids = match id {
                Some(s) => vec![s.parse::<CheckpointId>()?],
                None => CheckpointId::ALL.to_vec(),
            };
            let opts = CheckpointOptions {
                eq7_k: *eq7_k,
                theta_hi: *theta_hi,
                primorial_max_digits: *primorial_digits,
                even_odd_hi: *even_odd_hi,
                sigma_phi_k_max: *sigma_phi_k_max,
                workers: ctx.workers,
            };
            ids.into_iter()
                .map(|id| {
                    let started = Instant::now();
                    let r = verify_checkpoint_with(id, pol, &opts)?;
                    progress(format_args!("{id}: {:.1} s", started.elapsed().as_secs_f64()));
                    Ok(checkpoint_record("robin checkpoints", &r))
                })
                .collect()
        }
        RobinCmd::TwoK { k, samples } => {
            let r = verify_2k_family(*k, *samples, pol)?;
            Ok(vec![checkpoint_record("robin two-k", &r)])
        }
        RobinCmd::Density { limit } => {
            let (d, count) = density_estimate(*limit, pol, ctx.workers)?;
            let approx = Interval::from_ratio(&d, 64);
            Ok(vec![Record::new("robin density")
                .put("limit", *limit)
                .put("violators", count)
                .put("density", ratio_str(&d))
                .put("density_approx", approx.hi_string(12))])
        }
        RobinCmd::Classify { limit } => {
            let c = classify_counterexamples(*limit, pol, ctx.workers)?;
            let mut out: Vec<Record> = c
                .rows
                .iter()
                .map(|r| {
                    Record::new("robin classify")
                        .put("n", r.n)
                        .put("k", r.k)
                        .put("odd_part", r.odd_part)
                        .put("verdict", verdict_value(r.within_bound))
                })
                .collect();
            out.push(checkpoint_record("robin classify", &c.report));
            Ok(out)
        }
    }
}

fn progress(args: std::fmt::Arguments<'_>) {
    let _ = writeln!(io::stderr(), "robinv: {args}");
}

fn scan_fingerprint(lo: u64, hi: u64, ctx: &Ctx) -> String {
    let (num, den) = ctx.policy.growth();
    fingerprint(&[
        ("cmd", "robin scan".into()),
        ("lo", lo.to_string()),
        ("hi", hi.to_string()),
        ("precision_start", ctx.policy.start_bits().to_string()),
        ("precision_max", ctx.policy.max_bits().to_string()),
        ("precision_growth", format!("{num}/{den}")),
        ("segment_size", ctx.sieve.segment_size.to_string()),
    ])
}

fn robin_scan(lo: u64, hi: u64, ctx: &Ctx) -> CliResult<Vec<Record>> {
    let total = segment_count(lo, hi, ctx.sieve)?;
    let fp = scan_fingerprint(lo, hi, ctx);
    let token_path = ctx.global.resume.as_deref();
    let mut token = match token_path {
        Some(p) if p.exists() => ResumeToken::load(p, &fp).map_err(CliError::Usage)?,
        _ => ResumeToken::new(fp, lo, hi, total),
    };
    let batch = ctx.workers as u64;
    let started = Instant::now();
    let resumed_at = token.next_segment;
    let mut last_report = Instant::now();
    let verbose = io::stderr().is_terminal();
    while !token.is_complete() {
        if let Some(limit) = ctx.global.halt_after_segments {
            if token.next_segment - resumed_at >= limit {
                if let Some(p) = token_path {
                    token.store(p).map_err(CliError::Io)?;
                }
                return Err(CliError::Halted {
                    next_segment: token.next_segment,
                    total,
                });
            }
        }
        let first = token.next_segment;
        let mut last = (first + batch - 1).min(total - 1);
        if let Some(limit) = ctx.global.halt_after_segments {
            last = last.min(resumed_at + limit - 1);
        }
        let segs = scan_robin_segments(lo, hi, &ctx.policy, ctx.workers, ctx.sieve, first, last)?;
        for s in &segs {
            token.violators.extend_from_slice(&s.violators);
            token.undecidable.extend_from_slice(&s.undecidable);
            token.rigorous += s.rigorous;
        }
        token.next_segment = last + 1;
        token.seal();
        if let Some(p) = token_path {
            token.store(p).map_err(CliError::Io)?;
        }
        if verbose && (last_report.elapsed().as_secs() >= 1 || token.is_complete()) {
            let done = token.next_segment - resumed_at;
            let end = ctx.sieve.segment(lo, hi, last).1;
            let rate = (end - ctx.sieve.segment(lo, hi, resumed_at).0 + 1) as f64
                / started.elapsed().as_secs_f64().max(1e-9);
            progress(format_args!(
                "segment {}/{total} (n <= {end}), {done} this run, {rate:.3e} n/s",
                token.next_segment
            ));
            last_report = Instant::now();
        }
    }
    scan_records(&token, ctx)
}

fn scan_records(token: &ResumeToken, ctx: &Ctx) -> CliResult<Vec<Record>> {
    let mut out = Vec::new();
    for &n in &token.violators {
        out.push(inequality_record("robin scan", &check_robin(n, &ctx.policy)?));
    }
    for &n in &token.undecidable {
        out.push(Record::new("robin scan").put("n", n).put("inequality", "robin").put("verdict", "undecidable"));
    }
    let violators: Vec<Value> = token.violators.iter().map(|&v| Value::from(v)).collect();
    let undecidable: Vec<Value> = token.undecidable.iter().map(|&v| Value::from(v)).collect();
    out.push(
        Record::new("robin scan summary")
            .put("lo", token.lo)
            .put("hi", token.hi)
            .put("segments", token.total_segments)
            .put("rigorous", token.rigorous)
            .put("violator_count", token.violators.len())
            .put("violators", violators)
            .put("undecidable", undecidable),
    );
    Ok(out)
}

fn opt_interval(rec: Record, key: &str, x: Option<&Interval>) -> Record {
    rec.put_interval(key, x)
}

fn bounds_cmd(cmd: &BoundsCmd, ctx: &Ctx) -> CliResult<Vec<Record>> {
    let prec = ctx.policy.start_bits();
    match cmd {
        BoundsCmd::Table { j, k_range } => {
            let (a, b) = parse_range(k_range)?;
            let table = PrimeTable::for_k(b);
            let mut out = Vec::new();
            for k in a..=b {
                let f = FamilyParams::new(*j, k)?;
                let row = table.row(f, prec)?;
                let mut rec = Record::new("bounds table").put("j", row.j).put("k", row.k);
                rec = rec
                    .put("a_exact", row.a_exact.as_ref().map(ratio_str))
                    .put("b_exact", row.b_exact.as_ref().map(ratio_str))
                    .put_interval("a", Some(&row.a))
                    .put_interval("b", Some(&row.b))
                    .put_interval("a_upper", Some(&row.a_upper));
                rec = opt_interval(rec, "c", row.c.as_ref());
                rec = opt_interval(rec, "d", row.d.as_ref()).put("d_valid", row.d_valid);
                rec = rec
                    .put_interval("e", Some(&row.e))
                    .put_interval("log_b", row.b_log.as_ref().map(|b| &b.log_b))
                    .put_interval("log_2k_btilde", row.b_tilde_log.as_ref());
                out.push(rec);
            }
            Ok(out)
        }
        BoundsCmd::B { k } => {
            let b = bounds::b_of(*k, prec)?;
            let rec = Record::new("bounds b")
                .put("k", *k)
                .put_interval("log_2k_b", Some(&b.log_2k_b))
                .put_interval("log_b", Some(&b.log_b));
            Ok(vec![opt_interval(rec, "b", b.value.as_ref())])
        }
        BoundsCmd::Btilde { k } => {
            let bt = bounds::b_tilde_of(*k, prec)?;
            Ok(vec![Record::new("bounds btilde").put("k", *k).put_interval("log_2k_btilde", Some(&bt))])
        }
    }
}

fn lagarias(cmd: &LagariasCmd, ctx: &Ctx) -> CliResult<Vec<Record>> {
    let pol = &ctx.policy;
    match cmd {
        LagariasCmd::Check { n, variant } => {
            let r = match variant {
                Variant::Lagarias => check_lagarias(*n, pol)?,
                Variant::Kaneko => check_kaneko_lagarias(*n, pol)?,
            };
            Ok(vec![inequality_record("lagarias check", &r)])
        }
        LagariasCmd::Lemmas { id, grid, max, int_max } => {
            let ids = match id {
                Some(s) => vec![s.parse::<LemmaId>()?],
                None => LemmaId::ALL.to_vec(),
            };
            let g = LemmaGrid {
                step_den: *grid,
                dense_hi: *max,
                integer_hi: *int_max,
            };
            ids.into_iter()
                .map(|id| Ok(checkpoint_record("lagarias lemmas", &verify_h_lemma(id, &g, pol)?)))
                .collect()
        }
        LagariasCmd::Monotone { limit } => {
            Ok(vec![checkpoint_record("lagarias monotone", &verify_g_monotone(*limit, pol)?)])
        }
        LagariasCmd::ImpliesKl { limit } => {
            let r = verify_robin_implies_kl(*limit, pol, ctx.workers)?;
            Ok(vec![checkpoint_record("lagarias implies-kl", &r)])
        }
    }
}

fn sa_record(cmd: &str, index: usize, e: &SAEntry) -> Record {
    let n: BigUint = e.n();
    let mut r = Record::new(cmd)
        .put("index", index)
        .put("n", big_value(&n))
        .put("factorization", e.factorization.to_string())
        .put("abundancy", ratio_str(&e.abundancy));
    if let Some(v) = e.kl_verdict {
        r = r.put("inequality", "kaneko-lagarias").put("verdict", verdict_value(v));
    }
    r
}

fn sa(cmd: &SaCmd, ctx: &Ctx) -> CliResult<Vec<Record>> {
    match cmd {
        SaCmd::List { count, limit, frontier } => {
            let entries = match (count, limit) {
                (Some(c), _) => sa_generate_with(*c, *frontier)?,
                (None, Some(l)) => sa_scan(*l, ctx.workers)?,
                (None, None) => return Err(CliError::Usage("give --count or --limit".into())),
            };
            Ok(entries.iter().enumerate().map(|(i, e)| sa_record("sa list", i + 1, e)).collect())
        }
        SaCmd::VerifyKl { count } => {
            let (report, entries) = verify_kl_on_sa(*count, &ctx.policy)?;
            let mut out: Vec<Record> =
                entries.iter().enumerate().map(|(i, e)| sa_record("sa verify-kl", i + 1, e)).collect();
            out.push(checkpoint_record("sa verify-kl", &report));
            Ok(out)
        }
        SaCmd::VerifyReduction { limit } => {
            Ok(vec![checkpoint_record("sa verify-reduction", &verify_lli_reduction(*limit, &ctx.policy)?)])
        }
    }
}

pub fn write_output(path: Option<&Path>, records: &[Record], ctx: &Ctx, color: bool) -> CliResult<()> {
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    match path {
        Some(p) => {
            let mut f = io::BufWriter::new(std::fs::File::create(p).map_err(io_err)?);
            crate::output::write_records(&mut f, records, ctx.global.format, false).map_err(io_err)?;
            f.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = io::BufWriter::new(stdout.lock());
            crate::output::write_records(&mut lock, records, ctx.global.format, color).map_err(io_err)?;
            lock.flush().map_err(io_err)
        }
    }
}
