//! JSON wire formats.
//!
//! Rationals travel as `"p/q"` strings in lowest terms (`"p"` when `q = 1`);
//! integers as JSON numbers, or decimal strings when they do not fit `i64`.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::domination::{
    CensusRecord, CheckOutcome, DominationBudget, SearchCutoffs, Target, TargetInvariants, Verdict,
};
use crate::error::{Error, Result};
use crate::homology::{H1Summary, IntegerMatrix};
use crate::seifert::{FlatBase, InvariantSummary, SeifertData, SeifertDataRaw};
use crate::torus_bundle::{AnosovMatrix, ClassPartition, Mat2, ReductionCertificate};

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse(s)?)),
        Some((p, q)) => {
            let q = parse(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(parse(p)?, q))
        }
    }
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Malformed(format!("not an integer: {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Malformed(format!("not an integer: {s:?}"))),
        other => Err(Error::Malformed(format!("not an integer: {other}"))),
    }
}

/// Accepts `"p/q"` strings or plain integers.
pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        other => int_from_json(other).map(BigRational::from_integer),
    }
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(fmt_rational(r))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Malformed(format!("missing field {key:?}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Malformed("expected a JSON object".into()))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("{what}: expected an array")))
}

/// `{"genus": g, "b": b, "fibers": [[a, b], ...]}`.
pub fn seifert_raw_from_json(v: &Value) -> Result<SeifertDataRaw> {
    let obj = object(v)?;
    let genus = field(obj, "genus")?
        .as_u64()
        .and_then(|g| u32::try_from(g).ok())
        .ok_or_else(|| Error::Malformed("genus must be a non-negative integer".into()))?;
    let b = int_from_json(field(obj, "b")?)?;
    let fibers = match obj.get("fibers") {
        None | Some(Value::Null) => Vec::new(),
        Some(list) => array(list, "fibers")?
            .iter()
            .map(|pair| match array(pair, "fiber")?.as_slice() {
                [a, bi] => Ok((int_from_json(a)?, int_from_json(bi)?)),
                _ => Err(Error::Malformed("each fiber must be a pair [a, b]".into())),
            })
            .collect::<Result<_>>()?,
    };
    Ok(SeifertDataRaw { genus, b, fibers })
}

pub fn seifert_to_json(n: &SeifertData) -> Value {
    json!({
        "genus": n.genus(),
        "b": int_to_json(n.b()),
        "fibers": n.fibers().iter().map(|(a, b)| json!([int_to_json(a), int_to_json(b)])).collect::<Vec<_>>(),
    })
}

pub fn mat2_to_json(m: &Mat2) -> Value {
    json!([
        [int_to_json(&m.a), int_to_json(&m.b)],
        [int_to_json(&m.c), int_to_json(&m.d)]
    ])
}

fn mat2_from_rows(v: &Value) -> Result<Mat2> {
    let rows = array(v, "matrix")?;
    let row = |i: usize| -> Result<(BigInt, BigInt)> {
        match rows
            .get(i)
            .map(|r| array(r, "matrix row"))
            .transpose()?
            .map(Vec::as_slice)
        {
            Some([x, y]) => Ok((int_from_json(x)?, int_from_json(y)?)),
            _ => Err(Error::Malformed("matrix must be [[a, b], [c, d]]".into())),
        }
    };
    if rows.len() != 2 {
        return Err(Error::Malformed("matrix must be [[a, b], [c, d]]".into()));
    }
    let (a, b) = row(0)?;
    let (c, d) = row(1)?;
    Ok(Mat2 { a, b, c, d })
}

/// `{"matrix": [[a, b], [c, d]]}`, unvalidated.
pub fn mat2_from_json(v: &Value) -> Result<Mat2> {
    mat2_from_rows(field(object(v)?, "matrix")?)
}

pub fn anosov_to_json(a: &AnosovMatrix) -> Value {
    json!({ "matrix": mat2_to_json(a.matrix()) })
}

/// Returns `Ok(Err(_))` for well-formed data that violates a domain rule,
/// so callers can tell malformed input from invalid manifolds.
pub fn target_from_json(v: &Value) -> Result<Result<Target>> {
    let obj = object(v)?;
    if obj.contains_key("matrix") {
        let m = mat2_from_json(v)?;
        Ok(AnosovMatrix::validate(m).map(Target::Bundle))
    } else {
        let raw = seifert_raw_from_json(v)?;
        Ok(raw.normalize().map(Target::Seifert))
    }
}

pub fn target_to_json(t: &Target) -> Value {
    match t {
        Target::Seifert(n) => seifert_to_json(n),
        Target::Bundle(a) => anosov_to_json(a),
    }
}

pub fn summary_to_json(s: &InvariantSummary) -> Value {
    json!({
        "e": fmt_rational(&s.e),
        "chi": fmt_rational(&s.chi),
        "sv": s.sv.as_ref().map(fmt_rational),
        "torsion": s.torsion_order.as_ref().map(int_to_json),
        "geometry": s.geometry.as_str(),
    })
}

pub fn h1_to_json(h: &H1Summary) -> Value {
    json!({
        "betti": h.betti,
        "elementary_divisors": h.elementary_divisors.iter().map(int_to_json).collect::<Vec<_>>(),
        "torsion": int_to_json(&h.torsion_order()),
    })
}

pub fn matrix_to_json(m: &IntegerMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<IntegerMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| {
            array(r, "matrix row")?
                .iter()
                .map(int_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Malformed("ragged matrix".into()));
    }
    Ok(IntegerMatrix::from_rows(&rows))
}

pub fn flat_base_to_json(b: &FlatBase) -> Value {
    json!({ "genus": b.genus, "cone_points": b.cone_orders })
}

pub fn certificate_to_json(c: &ReductionCertificate) -> Value {
    json!({
        "representative": anosov_to_json(&c.representative),
        "conjugator": mat2_to_json(&c.conjugator),
        "steps": c.moves.len(),
    })
}

pub fn partition_to_json(p: &ClassPartition) -> Value {
    json!({
        "base_cap": p.base_cap,
        "caps": p.caps,
        "stable_cap": p.stable_cap,
        "initial_cap_stable": p.initial_cap_stable,
        "classes": p.classes.iter().map(|c| json!({
            "matrix": mat2_to_json(c.representative.matrix()),
            "trace": c.trace,
            "members": c.members,
        })).collect::<Vec<_>>(),
    })
}

/// `{"torsion_order": int, "rank_bound": int, "sv_bound": "p/q", "norm_budget": int}`.
pub fn budget_from_json(v: &Value) -> Result<Result<DominationBudget>> {
    let obj = object(v)?;
    let torsion = int_from_json(field(obj, "torsion_order")?)?;
    let rank = int_from_json(field(obj, "rank_bound")?)?
        .to_i64()
        .ok_or_else(|| Error::Malformed("rank_bound out of range".into()))?;
    let sv = rational_from_json(field(obj, "sv_bound")?)?;
    let norm = int_from_json(field(obj, "norm_budget")?)?;
    Ok(DominationBudget::new(torsion, rank, sv, norm))
}

pub fn budget_to_json(b: &DominationBudget) -> Value {
    json!({
        "torsion_order": int_to_json(&b.torsion_order),
        "rank_bound": b.rank_bound,
        "sv_bound": fmt_rational(&b.sv_bound),
        "norm_budget": int_to_json(&b.norm_budget),
    })
}

fn check_to_json(c: &CheckOutcome) -> Value {
    json!({ "name": c.name, "value": c.value, "bound": c.bound })
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    json!({
        "passed": v.passed,
        "checks": v.checks.iter().map(|c| {
            let mut o = check_to_json(c);
            o["passed"] = Value::Bool(c.passed);
            o
        }).collect::<Vec<_>>(),
    })
}

pub fn record_to_json(r: &CensusRecord) -> Value {
    let invariants = match &r.invariants {
        TargetInvariants::Seifert(s) => json!({
            "e": fmt_rational(&s.e),
            "chi": fmt_rational(&s.chi),
            "sv": s.sv.as_ref().map(fmt_rational),
            "torsion": int_to_json(&r.torsion),
            "geometry": s.geometry.as_str(),
        }),
        TargetInvariants::Bundle { trace } => json!({
            "e": null,
            "chi": null,
            "sv": null,
            "torsion": int_to_json(&r.torsion),
            "geometry": "Sol",
            "trace": int_to_json(trace),
        }),
    };
    json!({
        "case": r.case.as_str(),
        "target": target_to_json(&r.target),
        "invariants": invariants,
        "checks": r.checks.iter().map(check_to_json).collect::<Vec<_>>(),
    })
}

pub fn cutoffs_to_json(c: &SearchCutoffs) -> Value {
    json!({
        "max_genus": c.max_genus,
        "max_fibers": c.max_fibers,
        "product_cap": int_to_json(&c.product_cap),
        "lcm_cap": int_to_json(&c.lcm_cap),
        "torsion_divisors": c.torsion_divisors.iter().map(int_to_json).collect::<Vec<_>>(),
        "traces": c.traces,
    })
}

/// One compact JSON object per line.
pub fn write_jsonl<W: Write>(records: &[CensusRecord], mut out: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, &record_to_json(r))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
