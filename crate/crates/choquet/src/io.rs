//! JSON schemas for systems, valuations, and weightings.
//!
//! System files describe the family over a labelled ground set:
//!
//! ```json
//! { "ground": ["a", "b", "c"],
//!   "family": [["a", "b"], ["c"], ["a", "b", "c"]],
//!   "order": "containment" }
//! ```
//!
//! `order` is `"trivial"`, `"containment"`, or `{"pairs": [[i, j], ...]}`
//! where a pair `[i, j]` states that family entry `i` precedes family
//! entry `j`, both counted 0-based in file order. Building reindexes the
//! family (larger members first); reports list the built order and the
//! mapping back to file positions.
//!
//! Valuation files key values by the 0-based *file* position of the set;
//! weighting files key values by ground label. Missing keys default to
//! zero:
//!
//! ```json
//! { "values": { "0": "2/3", "2": "0.25", "3": 4 } }
//! ```
//!
//! Values are exact: fractions (`"2/3"`), decimal strings (`"0.25"`, read
//! over a power-of-ten denominator), or JSON integers. Non-integer JSON
//! numbers are rejected — binary floats do not round-trip exactly, so
//! fractional values must be written as strings. Reported values carry
//! both the exact fraction and a 12-significant-digit decimal reading.

use crate::lp::LpResult;
use crate::monge::{CertifyReport, MongeOutput};
use crate::rational::{approx_decimal, format_rational, parse_rational, rat, Rational};
use crate::set_system::{
    AlgebraCheck, BuildError, Check, ElemSet, GroundSet, OrderSpec, SetSystem, StructureReport,
};
use crate::valuation::{SetFunction, Valuation, Weighting};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Significant digits in reported decimal approximations.
pub const APPROX_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("order must be \"trivial\", \"containment\", or {{\"pairs\": [[i,j],...]}}; got {0:?}")]
    BadOrder(String),
    #[error("value for key {key:?}: {detail}")]
    BadValue { key: String, detail: String },
    #[error("unknown ground label {0:?}")]
    UnknownLabel(String),
    #[error("key {key:?} does not name a family position below {m}")]
    BadPosition { key: String, m: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    ground: Vec<String>,
    family: Vec<Vec<String>>,
    order: OrderField,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderField {
    Word(String),
    Pairs { pairs: Vec<(usize, usize)> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuesFile {
    values: BTreeMap<String, Value>,
}

/// Parses and builds a system file.
pub fn parse_system(text: &str) -> Result<Arc<SetSystem>, IoError> {
    let file: SystemFile = serde_json::from_str(text)?;
    let ground = GroundSet::new(file.ground)?;
    let mut family = Vec::with_capacity(file.family.len());
    for labels in &file.family {
        let mut set = ElemSet::EMPTY;
        for label in labels {
            match ground.index_of(label) {
                Some(e) => set.insert(e),
                None => return Err(IoError::UnknownLabel(label.clone())),
            }
        }
        family.push(set);
    }
    let order = match file.order {
        OrderField::Word(w) if w == "trivial" => OrderSpec::Trivial,
        OrderField::Word(w) if w == "containment" => OrderSpec::Containment,
        OrderField::Word(w) => return Err(IoError::BadOrder(w)),
        OrderField::Pairs { pairs } => OrderSpec::Pairs(pairs),
    };
    Ok(SetSystem::build(ground, family, order)?)
}

fn value_from_json(key: &str, v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| IoError::BadValue {
            key: key.to_string(),
            detail: e.to_string(),
        }),
        Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| IoError::BadValue {
            key: key.to_string(),
            detail: "only integer JSON numbers are exact; write fractions or decimals as strings"
                .to_string(),
        }),
        other => Err(IoError::BadValue {
            key: key.to_string(),
            detail: format!("expected a string or integer, got {other}"),
        }),
    }
}

/// Parses a valuation file against a built system. Keys are 0-based file
/// positions of the family; missing positions default to zero.
pub fn parse_valuation(text: &str, sys: &Arc<SetSystem>) -> Result<Valuation, IoError> {
    let file: ValuesFile = serde_json::from_str(text)?;
    let m = sys.m();
    // Invert built index → file position into file position → built index.
    let mut built_at = vec![0usize; m];
    for b in 0..m {
        built_at[sys.input_position(b)] = b;
    }
    let mut values = vec![Rational::from_integer(0.into()); m];
    for (key, raw) in &file.values {
        let position: usize = key
            .parse()
            .ok()
            .filter(|&p| p < m)
            .ok_or_else(|| IoError::BadPosition { key: key.clone(), m })?;
        values[built_at[position]] = value_from_json(key, raw)?;
    }
    Ok(Valuation::new(Arc::clone(sys), values).expect("lengths match by construction"))
}

/// Parses a weighting file against a ground set. Keys are ground labels;
/// missing labels default to zero.
pub fn parse_weighting(text: &str, ground: &GroundSet) -> Result<Weighting, IoError> {
    let file: ValuesFile = serde_json::from_str(text)?;
    let mut values = vec![Rational::from_integer(0.into()); ground.size()];
    for (key, raw) in &file.values {
        let e = ground
            .index_of(key)
            .ok_or_else(|| IoError::UnknownLabel(key.clone()))?;
        values[e] = value_from_json(key, raw)?;
    }
    Ok(Weighting::new(values))
}

/// Exact fraction plus decimal reading, as a JSON object.
pub fn rational_json(x: &Rational) -> Value {
    json!({
        "exact": format_rational(x),
        "approx": approx_decimal(x, APPROX_DIGITS),
    })
}

pub fn vector_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational_json).collect())
}

/// The system in its own input schema, listing the family in built order.
/// Parsing the result reproduces the same built system, so this is the
/// canonical dump format for replayable instances.
pub fn system_json(sys: &SetSystem) -> Value {
    let family: Vec<Value> = (0..sys.m())
        .map(|i| Value::Array(sys.set_labels(i).into_iter().map(Value::String).collect()))
        .collect();
    let order = if sys.is_trivially_ordered() {
        json!("trivial")
    } else if sys.is_containment_ordered() {
        json!("containment")
    } else {
        let mut pairs = Vec::new();
        for i in 0..sys.m() {
            for j in 0..sys.m() {
                if i != j && sys.leq(i, j) {
                    pairs.push(json!([i, j]));
                }
            }
        }
        json!({ "pairs": pairs })
    };
    json!({
        "ground": sys.ground().labels(),
        "family": family,
        "order": order,
    })
}

/// The valuation in its own input schema, keyed by file positions of the
/// originating system dump. Paired with [`system_json`] (whose file order
/// is the built order) the keys are simply the built indices.
pub fn valuation_json(v: &Valuation) -> Value {
    let values: BTreeMap<String, Value> = v
        .values()
        .iter()
        .enumerate()
        .map(|(b, x)| (b.to_string(), Value::String(format_rational(x))))
        .collect();
    json!({ "values": values })
}

/// The weighting in its own input schema, keyed by ground label.
pub fn weighting_json(f: &Weighting, ground: &GroundSet) -> Value {
    let values: BTreeMap<String, Value> = f
        .values()
        .iter()
        .enumerate()
        .map(|(e, x)| (ground.label(e).to_string(), Value::String(format_rational(x))))
        .collect();
    json!({ "values": values })
}

fn check_json(check: &Check) -> Value {
    match check {
        Check::Holds => json!({ "holds": true }),
        Check::Fails { witness, detail } => json!({
            "holds": false,
            "witness": witness,
            "detail": detail,
        }),
    }
}

fn algebra_check_json(check: &AlgebraCheck) -> Value {
    match check {
        AlgebraCheck::Holds { atoms } => json!({ "holds": true, "atoms": atoms }),
        AlgebraCheck::Fails { witness, detail } => json!({
            "holds": false,
            "witness": witness,
            "detail": detail,
        }),
    }
}

pub fn structure_json(report: &StructureReport) -> Value {
    json!({
        "trivially_ordered": check_json(&report.trivially_ordered),
        "containment_ordered": check_json(&report.containment_ordered),
        "weakly_union_closed": check_json(&report.weakly_union_closed),
        "union_closed": check_json(&report.union_closed),
        "algebra": algebra_check_json(&report.algebra),
        "consecutive": check_json(&report.consecutive),
        "intersection_system": check_json(&report.intersection_system),
    })
}

pub fn lp_json(r: &LpResult) -> Value {
    json!({
        "status": format!("{:?}", r.status).to_lowercase(),
        "value": rational_json(&r.value),
        "primal_x": vector_json(&r.primal_x),
        "dual_y": vector_json(&r.dual_y),
    })
}

/// Full greedy trace: per-round set, picked element, amount, plus the
/// final packing vector and residual weighting.
pub fn monge_json(sys: &SetSystem, out: &MongeOutput) -> Value {
    let events: Vec<Value> = out
        .events
        .iter()
        .map(|ev| {
            json!({
                "set": ev.set,
                "set_labels": sys.set_labels(ev.set),
                "element": ev.element,
                "element_label": sys.ground().label(ev.element),
                "amount": rational_json(&ev.amount),
            })
        })
        .collect();
    json!({
        "chosen_sets": out.chosen,
        "removed_elements": out.pi,
        "y": vector_json(&out.y),
        "residual": vector_json(out.residual.values()),
        "events": events,
    })
}

pub fn certify_json(report: &CertifyReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "set": e.index,
                "monge_value": rational_json(&e.monge_value),
                "lp_value": rational_json(&e.lp_value),
                "matches": e.matches(),
            })
        })
        .collect();
    json!({ "all_match": report.all_match, "entries": entries })
}

/// Power-set table in mask order, each entry listing the subset by label.
pub fn set_function_json(vhat: &SetFunction, ground: &GroundSet) -> Value {
    let n = vhat.n();
    let rows: Vec<Value> = (0..1u64 << n)
        .map(|mask| {
            let s = ElemSet::from_bits(mask);
            let labels: Vec<&str> = s.iter().map(|e| ground.label(e)).collect();
            json!({ "set": labels, "value": rational_json(vhat.value(s)) })
        })
        .collect();
    json!({ "values": rows })
}
