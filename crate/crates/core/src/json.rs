//! JSON encodings of the library's inputs and reports.
//!
//! Rationals are written as `"p/q"` strings in lowest terms (integers as
//! `"p"`), undefined entries as `"0/0"`, reals as shortest round-trip
//! numbers. Object keys keep insertion order.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::classical::{CondProbMatrix, Measure};
use crate::decompose::{Decomposition, DecompositionKind};
use crate::logic::{intertwines, Logic, ValidationReport, Violation};
use crate::matrix::Matrix;
use crate::partition::PartitionLabeling;
use crate::scalar::{parse_rational, Scalar};
use crate::states::{DispersionlessState, SeparationReport, StateFamily};
use crate::stochastic::StochasticVerdict;
use crate::urn::EmpiricalMatrix;

pub const UNDEFINED: &str = "0/0";

pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        json!(*self)
    }
}

impl JsonScalar for f32 {
    fn to_json(&self) -> Value {
        json!(*self)
    }
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

fn optional<T: JsonScalar>(x: Option<&T>) -> Value {
    x.map_or_else(|| Value::String(UNDEFINED.into()), JsonScalar::to_json)
}

pub fn states_json(family: &StateFamily) -> Value {
    let logic = family.logic();
    let states: Vec<Value> = family
        .states()
        .iter()
        .map(|s| {
            let obj: Map<String, Value> =
                logic.atoms().iter().map(|a| (a.id.clone(), json!(u8::from(s.value(a.index))))).collect();
            Value::Object(obj)
        })
        .collect();
    json!({ "states": states })
}

pub fn separation_json(report: &SeparationReport) -> Value {
    json!({
        "separating": report.separating,
        "non_separated": report.non_separated.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn labels_json(labeling: &PartitionLabeling) -> Value {
    let labels: Map<String, Value> =
        labeling.iter().map(|(id, l)| (id.to_string(), json!(l.iter().collect::<Vec<_>>()))).collect();
    json!({ "labels": labels })
}

pub fn measure_json(measure: &Measure) -> Value {
    json!({ "weights": measure.weights().iter().map(ToString::to_string).collect::<Vec<_>>() })
}

pub fn half_state_json(state: &DispersionlessState) -> Value {
    let values: Map<String, Value> = state
        .logic()
        .atoms()
        .iter()
        .map(|a| (a.id.clone(), Value::String(state.values()[a.index].to_string())))
        .collect();
    json!({ "values": values })
}

pub fn cond_matrix_json(m: &CondProbMatrix) -> Value {
    let entries: Vec<Vec<String>> =
        m.entries.iter_rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    json!({
        "rows": m.row_context,
        "cols": m.col_context,
        "row_atoms": m.row_atoms,
        "col_atoms": m.col_atoms,
        "rule": m.rule.name(),
        "entries": entries,
    })
}

pub fn matrix_json<T: JsonScalar>(m: &Matrix<T>) -> Value {
    Value::Array(m.iter_rows().map(|r| Value::Array(r.iter().map(JsonScalar::to_json).collect())).collect())
}

pub fn partial_matrix_json<T: JsonScalar>(m: &Matrix<Option<T>>) -> Value {
    Value::Array(m.iter_rows().map(|r| Value::Array(r.iter().map(|x| optional(x.as_ref())).collect())).collect())
}

/// Born matrix between two named contexts.
pub fn real_cond_matrix_json(rows: &str, cols: &str, m: &Matrix<f64>) -> Value {
    json!({ "rows": rows, "cols": cols, "entries": matrix_json(m) })
}

pub fn decomposition_json<T: JsonScalar>(d: &Decomposition<T>) -> Value {
    let key = match d.kind {
        DecompositionKind::Permutation => "perm",
        DecompositionKind::RowVertex => "cols",
    };
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|t| {
            let mut obj = Map::new();
            obj.insert("coeff".into(), t.coeff.to_json());
            obj.insert(key.into(), json!(t.vertex));
            Value::Object(obj)
        })
        .collect();
    json!({ "kind": d.kind.name(), "terms": terms })
}

pub fn verdict_json<T: JsonScalar>(v: &StochasticVerdict<T>) -> Value {
    json!({
        "row_stochastic": v.row_stochastic,
        "doubly_stochastic": v.doubly_stochastic,
        "partial": v.partial,
        "row_sums": v.row_sums.iter().map(|s| optional(s.as_ref())).collect::<Vec<_>>(),
        "col_sums": v.col_sums.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
        "violations": v.violations,
    })
}

fn violation_json(v: &Violation) -> Value {
    json!({ "code": v.code(), "message": v.to_string() })
}

pub fn validation_json(report: &ValidationReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "violations": report.violations.iter().map(violation_json).collect::<Vec<_>>(),
        "warnings": report.warnings.iter().map(violation_json).collect::<Vec<_>>(),
    })
}

/// Validation report together with the logic's shape.
pub fn logic_report_json(logic: &Logic, report: &ValidationReport) -> Value {
    let mut obj = match validation_json(report) {
        Value::Object(obj) => obj,
        _ => unreachable!("validation_json builds an object"),
    };
    obj.insert("atoms".into(), json!(logic.atom_count()));
    obj.insert("contexts".into(), json!(logic.contexts().len()));
    obj.insert("intertwines".into(), json!(intertwines(logic)));
    Value::Object(obj)
}

/// Born matrix, optionally with the outcome probabilities of the pure
/// state along `state.0` measured in the column context.
pub fn born_json(rows: &str, cols: &str, m: &Matrix<f64>, state: Option<(&str, &[f64])>) -> Value {
    let mut value = real_cond_matrix_json(rows, cols, m);
    if let (Some((atom, probs)), Value::Object(obj)) = (state, &mut value) {
        obj.insert("state".into(), json!(atom));
        obj.insert("probabilities".into(), json!(probs));
    }
    value
}

/// Largest deviation between defined empirical and exact entries.
pub fn max_deviation(empirical: &EmpiricalMatrix, exact: &CondProbMatrix) -> f64 {
    let est = empirical.estimates();
    let mut worst: f64 = 0.0;
    for i in 0..est.rows() {
        for j in 0..est.cols() {
            if let (Some(x), Some(p)) = (est.get(i, j), exact.entry(i, j).value()) {
                worst = worst.max((x - p.to_f64()).abs());
            }
        }
    }
    worst
}

pub fn empirical_json(e: &EmpiricalMatrix, exact: Option<&CondProbMatrix>) -> Value {
    let mut obj = Map::new();
    obj.insert("rows".into(), json!(e.row_context));
    obj.insert("cols".into(), json!(e.col_context));
    obj.insert("row_atoms".into(), json!(e.row_atoms));
    obj.insert("col_atoms".into(), json!(e.col_atoms));
    obj.insert("draws".into(), json!(e.draws));
    obj.insert("seed".into(), json!(e.seed));
    obj.insert("shards".into(), json!(e.shards));
    obj.insert("generator".into(), json!("chacha8"));
    obj.insert("counts".into(), Value::Array(e.counts.iter_rows().map(|r| json!(r)).collect()));
    obj.insert("estimates".into(), partial_matrix_json(&e.estimates()));
    if let Some(exact) = exact {
        obj.insert("exact".into(), cond_matrix_json(exact)["entries"].clone());
        obj.insert("max_abs_deviation".into(), json!(max_deviation(e, exact)));
    }
    Value::Object(obj)
}

/// Simulation report: [`empirical_json`] plus the measure loaded into the urn.
pub fn simulation_json(e: &EmpiricalMatrix, exact: &CondProbMatrix, measure: &Measure) -> Value {
    let mut value = empirical_json(e, Some(exact));
    if let Value::Object(obj) = &mut value {
        obj.insert("measure".into(), measure_json(measure)["weights"].clone());
    }
    value
}

/// A matrix read from a file: exact when every entry is an integer or a
/// `"p/q"` string (`"0/0"` marks an undefined entry), real otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedMatrix {
    Rational(Matrix<Option<BigRational>>),
    Real(Matrix<f64>),
}

/// Accepts a bare array of rows or `{"entries": [...]}`.
pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let rows = match &value {
        Value::Array(rows) => rows,
        Value::Object(obj) => match obj.get("entries") {
            Some(Value::Array(rows)) => rows,
            _ => return Err("expected an \"entries\" array".into()),
        },
        _ => return Err("expected a matrix".into()),
    };
    let grid: Vec<&Vec<Value>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| "matrix rows must be arrays".to_string()))
        .collect::<Result<_, _>>()?;
    let is_real = grid.iter().flat_map(|r| r.iter()).any(|v| matches!(v, Value::Number(n) if n.is_f64()));
    if is_real {
        let rows = grid
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.as_f64().ok_or_else(|| format!("mixed real matrix entry {v}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Matrix::from_rows(rows).map(ParsedMatrix::Real).map_err(|e| e.to_string());
    }
    let rows = grid
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| match v {
                    Value::String(s) if s.trim() == UNDEFINED => Ok(None),
                    Value::String(s) => parse_rational(s).map(Some).ok_or_else(|| format!("bad entry {v}")),
                    Value::Number(n) => {
                        parse_rational(&n.to_string()).map(Some).ok_or_else(|| format!("bad entry {v}"))
                    }
                    _ => Err(format!("bad entry {v}")),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).map(ParsedMatrix::Rational).map_err(|e| e.to_string())
}
