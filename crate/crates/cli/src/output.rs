use std::io::{self, IsTerminal, Write};

use num_rational_display::ratio_string;
use robinv_core::numerics::{Interval, Verdict};
use robinv_core::report::{CheckpointReport, InequalityReport};
use serde_json::{Map, Value};

use crate::args::Format;

/// One output record; keys keep insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Map<String, Value>);

impl Record {
    pub fn new(cmd: &str) -> Self {
        let mut r = Record::default();
        r.0.insert("cmd".into(), Value::String(cmd.into()));
        r
    }

    pub fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.into(), value.into());
        self
    }

    pub fn put_interval(self, key: &str, x: Option<&Interval>) -> Self {
        let (lo, hi) = match x {
            Some(x) => {
                let d = x.report_digits().min(40);
                (Value::String(x.lo_string(d)), Value::String(x.hi_string(d)))
            }
            None => (Value::Null, Value::Null),
        };
        self.put(&format!("{key}_lo"), lo).put(&format!("{key}_hi"), hi)
    }

    pub fn verdict(&self) -> Option<&str> {
        self.0.get("verdict").and_then(Value::as_str)
    }

    fn key_strings(&self) -> Vec<String> {
        let mut v = Vec::new();
        for k in ["n", "k", "id"] {
            if let Some(x) = self.0.get(k) {
                v.push(match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                });
            }
        }
        v
    }
}

mod num_rational_display {
    use num_bigint::BigInt;
    use num_rational::Ratio;

    pub fn ratio_string(q: &Ratio<BigInt>) -> String {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Number as a JSON number when it fits in 64 bits, else as a decimal string.
pub fn big_value(n: &num_bigint::BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn inequality_record(cmd: &str, r: &InequalityReport) -> Record {
    let rec = Record::new(cmd)
        .put("n", big_value(&r.n))
        .put("inequality", r.inequality.as_str())
        .put("lhs", ratio_string(&r.lhs))
        .put_interval("rhs", r.rhs.as_ref())
        .put("verdict", r.verdict.as_str())
        .put("prec_bits", r.prec_used);
    let flags: Vec<Value> = r.flags.iter().map(|f| Value::String(f.as_str().into())).collect();
    rec.put("flags", flags)
}

fn pairs(v: &[(String, String)]) -> Value {
    Value::Object(v.iter().map(|(k, x)| (k.clone(), Value::String(x.clone()))).collect())
}

pub fn checkpoint_verdict(r: &CheckpointReport) -> &'static str {
    if r.certified {
        "holds"
    } else if r.witness.iter().any(|w| w.starts_with("FAILED")) {
        "fails"
    } else {
        "undecidable"
    }
}

pub fn checkpoint_record(cmd: &str, r: &CheckpointReport) -> Record {
    Record::new(cmd)
        .put("id", r.id.as_str())
        .put("certified", r.certified)
        .put("verdict", checkpoint_verdict(r))
        .put("parameters", pairs(&r.parameters))
        .put("witness", r.witness.clone())
        .put("findings", pairs(&r.findings))
        .put("undecidable", r.undecidable.clone())
}

pub fn verdict_value(v: Verdict) -> Value {
    Value::String(v.as_str().into())
}

/// Items from `--expect-fail`.
#[derive(Debug, Clone, Default)]
pub struct Expected {
    numbers: Vec<(u64, u64)>,
    ids: Vec<String>,
}

impl Expected {
    pub fn parse(items: &[String]) -> Result<Self, String> {
        let mut e = Expected::default();
        for raw in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
            if let Some((a, b)) = raw.split_once("..") {
                let a: u64 = a.parse().map_err(|_| format!("bad range {raw}"))?;
                let b: u64 = b.parse().map_err(|_| format!("bad range {raw}"))?;
                e.numbers.push((a, b));
            } else if let Ok(n) = raw.parse::<u64>() {
                e.numbers.push((n, n));
            } else {
                e.ids.push(raw.to_ascii_uppercase());
            }
        }
        Ok(e)
    }

    fn covers(&self, rec: &Record) -> bool {
        rec.key_strings().iter().any(|key| match key.parse::<u64>() {
            Ok(n) => self.numbers.iter().any(|&(a, b)| a <= n && n <= b),
            Err(_) => self.ids.contains(&key.to_ascii_uppercase()),
        })
    }
}

/// 0 when everything holds (or failed as expected), 1 on an unexpected failure, 2 when
/// something stayed undecidable and nothing failed unexpectedly.
pub fn exit_status(records: &[Record], expected: &Expected) -> i32 {
    let mut failed = false;
    let mut undecided = false;
    for r in records {
        match r.verdict() {
            Some("fails") if !expected.covers(r) => failed = true,
            Some("undecidable") => undecided = true,
            _ => {}
        }
    }
    if failed {
        1
    } else if undecided {
        2
    } else {
        0
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_records(out: &mut dyn Write, records: &[Record], format: Format, color: bool) -> io::Result<()> {
    match format {
        Format::JsonLines => {
            for r in records {
                serde_json::to_writer(&mut *out, &r.0)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut header: Vec<String> = Vec::new();
            for r in records {
                for k in r.0.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for r in records {
                w.write_record(header.iter().map(|k| r.0.get(k).map(cell).unwrap_or_default()))?;
            }
            w.flush()?;
        }
        Format::Human => write_human(out, records, color)?,
    }
    Ok(())
}

fn paint(verdict: &str, color: bool) -> String {
    if !color {
        return verdict.to_string();
    }
    let code = match verdict {
        "holds" => "32",
        "fails" => "31",
        _ => "33",
    };
    format!("\x1b[{code}m{verdict}\x1b[0m")
}

fn write_human(out: &mut dyn Write, records: &[Record], color: bool) -> io::Result<()> {
    for r in records {
        let mut line = Vec::new();
        for (k, v) in &r.0 {
            match v {
                Value::Array(items) if !items.is_empty() && k != "flags" => {
                    writeln!(out, "{}", line.join("  "))?;
                    line.clear();
                    for it in items {
                        writeln!(out, "    {}", cell(it))?;
                    }
                }
                Value::Array(items) if items.is_empty() => {}
                Value::Object(m) => {
                    if !m.is_empty() {
                        writeln!(out, "{}", line.join("  "))?;
                        line.clear();
                        for (mk, mv) in m {
                            writeln!(out, "    {mk} = {}", cell(mv))?;
                        }
                    }
                }
                Value::Null => {}
                _ if k == "verdict" => line.push(format!("{k}={}", paint(&cell(v), color))),
                Value::Array(items) => {
                    let s: Vec<String> = items.iter().map(cell).collect();
                    line.push(format!("{k}={}", s.join(",")));
                }
                _ => line.push(format!("{k}={}", cell(v))),
            }
        }
        if !line.is_empty() {
            writeln!(out, "{}", line.join("  "))?;
        }
    }
    Ok(())
}

pub fn stdout_is_terminal() -> bool {
    io::stdout().is_terminal()
}
