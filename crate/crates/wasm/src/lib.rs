//! Browser bindings: single-number checks and two plotted curves. Every function returns a
//! JSON string.

use robinv_core::arith::{factor, sigma, sigma_sieve, SieveConfig};
use robinv_core::bounds::{FamilyParams, PrimeTable};
use robinv_core::lagarias::{check_kaneko_lagarias, check_lagarias};
use robinv_core::numerics::{Interval, PrecisionPolicy};
use robinv_core::report::InequalityReport;
use robinv_core::robin::{check_robin, scan_robin};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest range `robin_curve` accepts.
pub const MAX_CURVE_SPAN: u64 = 200_000;
pub const MAX_BOUND_K: u64 = 500;

const EXP_GAMMA: f64 = 1.781_072_417_990_198;

fn interval_json(x: Option<&Interval>) -> Value {
    match x {
        Some(x) => json!([x.lo_string(12), x.hi_string(12)]),
        None => Value::Null,
    }
}

fn report_json(r: &InequalityReport) -> Value {
    json!({
        "inequality": r.inequality.as_str(),
        "lhs": format!("{}/{}", r.lhs.numer(), r.lhs.denom()),
        "rhs": interval_json(r.rhs.as_ref()),
        "verdict": r.verdict.as_str(),
        "prec_bits": r.prec_used,
        "flags": r.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
    })
}

pub fn check_number_json(n: &str) -> Result<Value, String> {
    let n: u64 = n.trim().parse().map_err(|_| format!("not a positive integer: {n:?}"))?;
    let pol = PrecisionPolicy::default();
    let f = factor(n).map_err(|e| e.to_string())?;
    let robin = check_robin(n, &pol).map_err(|e| e.to_string())?;
    let lag = check_lagarias(n, &pol).map_err(|e| e.to_string())?;
    let kl = check_kaneko_lagarias(n, &pol).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "factorization": f.to_string(),
        "sigma": sigma(&f).to_string(),
        "checks": [report_json(&robin), report_json(&lag), report_json(&kl)],
    }))
}

pub fn robin_curve_json(lo: u64, hi: u64) -> Result<Value, String> {
    let lo = lo.max(3);
    if hi < lo || hi - lo >= MAX_CURVE_SPAN {
        return Err(format!("range must satisfy 3 <= lo <= hi < lo + {MAX_CURVE_SPAN}"));
    }
    let mut ns = Vec::new();
    let mut ratio = Vec::new();
    let mut bound = Vec::new();
    for item in sigma_sieve(lo, hi, SieveConfig::default()).map_err(|e| e.to_string())? {
        let (n, s) = item.map_err(|e| e.to_string())?;
        ns.push(n);
        ratio.push(s as f64 / n as f64);
        bound.push(EXP_GAMMA * (n as f64).ln().ln());
    }
    let scan = scan_robin(lo, hi, &PrecisionPolicy::default(), 1).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": ns,
        "abundancy": ratio,
        "bound": bound,
        "violators": scan.violators,
        "undecidable": scan.undecidable,
    }))
}

pub fn bound_curves_json(j: u32, k_max: u64) -> Result<Value, String> {
    if !(2..=MAX_BOUND_K).contains(&k_max) {
        return Err(format!("k_max must lie in [2, {MAX_BOUND_K}]"));
    }
    let table = PrimeTable::for_k(k_max);
    let (mut ks, mut a, mut b, mut a_up, mut c) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for k in (j as u64).max(2)..=k_max {
        let f = FamilyParams::new(j, k).map_err(|e| e.to_string())?;
        let row = table.row(f, 64).map_err(|e| e.to_string())?;
        ks.push(k);
        a.push(row.a.mid_f64());
        b.push(row.b.mid_f64());
        a_up.push(row.a_upper.mid_f64());
        c.push(row.c.as_ref().map(Interval::mid_f64));
    }
    Ok(json!({ "j": j, "k": ks, "a": a, "a_upper": a_up, "b": b, "c": c }))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Factorization, sigma and the three inequalities at `n` (decimal string).
#[wasm_bindgen]
pub fn check_number(n: &str) -> Result<String, JsError> {
    to_js(check_number_json(n))
}

/// `sigma(n)/n` against `e^gamma log log n` on `[lo, hi]`, with rigorous violators.
#[wasm_bindgen]
pub fn robin_curve(lo: u32, hi: u32) -> Result<String, JsError> {
    to_js(robin_curve_json(lo as u64, hi as u64))
}

/// `A(k)`, its upper bound, `B(k)` and `C(k)` for the `p_j`-free family.
#[wasm_bindgen]
pub fn bound_curves(j: u32, k_max: u32) -> Result<String, JsError> {
    to_js(bound_curves_json(j, k_max as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_number_reports_all_three() {
        let v = check_number_json("5040").unwrap();
        assert_eq!(v["sigma"], "19344");
        let verdicts: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["verdict"].as_str().unwrap()).collect();
        assert_eq!(verdicts, ["fails", "holds", "holds"]);
        assert!(check_number_json("x").is_err());
    }

    #[test]
    fn curve_marks_violators() {
        let v = robin_curve_json(3, 6000).unwrap();
        assert_eq!(v["n"].as_array().unwrap().len(), 5998);
        let last = v["violators"].as_array().unwrap().last().unwrap().as_u64();
        assert_eq!(last, Some(5040));
        assert!(robin_curve_json(10, 5).is_err());
    }

    #[test]
    fn bound_curves_shapes() {
        let v = bound_curves_json(1, 50).unwrap();
        assert_eq!(v["k"].as_array().unwrap().len(), 49);
        let a = v["a"].as_array().unwrap();
        let up = v["a_upper"].as_array().unwrap();
        assert!(a.iter().zip(up).all(|(x, y)| x.as_f64() < y.as_f64()));
    }
}
