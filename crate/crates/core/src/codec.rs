//! JSON encodings of fields, elements, families and ticket reports.
//!
//! Rationals are strings ("a" or "a/b"). An element of a depth-1 tower is an
//! array of coordinate strings; in a depth-2 tower it is an array, one entry
//! per power of the top generator, of depth-1 arrays.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{FieldElem, FieldTower};
use crate::poly::{Monomial, Poly};
use crate::scalar::{format_rational, parse_rational, FieldError, Rational};
use crate::ticket::TicketReport;
use crate::NfPoly;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{at}: {msg}")]
    Format { at: String, msg: String },
    #[error("{at}: {source}")]
    Field { at: String, source: FieldError },
}

fn format_err(at: impl Into<String>, msg: impl Into<String>) -> CodecError {
    CodecError::Format { at: at.into(), msg: msg.into() }
}

pub fn encode_rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn decode_rational(v: &Value, at: &str) -> Result<Rational, CodecError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| format_err(at, format!("invalid rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(format_err(at, "expected a rational string")),
    }
}

pub fn encode_elem(x: &FieldElem, tower: &FieldTower) -> Result<Value, FieldError> {
    let coords = x.coords_in(tower)?;
    let strings = |c: &[Rational]| Value::Array(c.iter().map(encode_rational).collect());
    Ok(match tower.level_degrees().as_slice() {
        [] => encode_rational(&coords[0]),
        [_] => strings(&coords),
        [d1, _] => Value::Array(coords.chunks(*d1).map(strings).collect()),
        _ => unreachable!("towers have depth at most two"),
    })
}

/// Decodes an element; a bare rational string is accepted at any depth.
pub fn decode_elem(v: &Value, tower: &Arc<FieldTower>, at: &str) -> Result<FieldElem, CodecError> {
    if let Value::String(_) = v {
        return Ok(FieldElem::rational(decode_rational(v, at)?));
    }
    let degrees = tower.level_degrees();
    let flat = |v: &Value, len: usize| -> Result<Vec<Rational>, CodecError> {
        let arr = v.as_array().ok_or_else(|| format_err(at, "expected an array"))?;
        if arr.len() != len {
            return Err(format_err(at, format!("expected {len} coordinates, got {}", arr.len())));
        }
        arr.iter().map(|c| decode_rational(c, at)).collect()
    };
    let coords = match degrees.as_slice() {
        [] => return Err(format_err(at, "expected a rational string")),
        [d1] => flat(v, *d1)?,
        [d1, d2] => {
            let arr = v.as_array().ok_or_else(|| format_err(at, "expected an array"))?;
            if arr.len() != *d2 {
                return Err(format_err(at, format!("expected {d2} blocks, got {}", arr.len())));
            }
            let mut out = Vec::with_capacity(d1 * d2);
            for block in arr {
                out.extend(flat(block, *d1)?);
            }
            out
        }
        _ => unreachable!("towers have depth at most two"),
    };
    FieldElem::from_coords(tower, coords).map_err(|source| CodecError::Field { at: at.into(), source })
}

/// {"cyclotomic": n} for ℚ(ζ_n), with an optional "tower" list of further
/// levels; otherwise {"tower": [...]} listing every level's minimal polynomial
/// (low to high, coefficients in the field below).
pub fn encode_tower(tower: &Arc<FieldTower>) -> Value {
    let mut levels = Vec::new();
    let first = usize::from(tower.cyclotomic_order().is_some());
    for level in first..tower.depth() {
        let below = if level == 0 { FieldTower::rationals() } else { tower.base() };
        let coeffs: Vec<Value> = tower
            .minpoly(level)
            .iter()
            .map(|c| encode_elem(c, &below).expect("minimal polynomial lives in the field below"))
            .collect();
        levels.push(Value::Array(coeffs));
    }
    match tower.cyclotomic_order() {
        Some(n) if levels.is_empty() => json!({ "cyclotomic": n }),
        Some(n) => json!({ "cyclotomic": n, "tower": levels }),
        None => json!({ "tower": levels }),
    }
}

pub fn decode_tower(v: &Value) -> Result<Arc<FieldTower>, CodecError> {
    let obj = v.as_object().ok_or_else(|| format_err("field", "expected an object"))?;
    if let Some(key) = obj.keys().find(|k| *k != "cyclotomic" && *k != "tower") {
        return Err(format_err("field", format!("unknown key {key:?}")));
    }
    let mut tower = match obj.get("cyclotomic") {
        Some(n) => {
            let n = n
                .as_u64()
                .filter(|&n| n >= 3)
                .ok_or_else(|| format_err("field.cyclotomic", "expected an integer ≥ 3"))?;
            FieldTower::cyclotomic(n)
        }
        None => FieldTower::rationals(),
    };
    if let Some(levels) = obj.get("tower") {
        let levels = levels.as_array().ok_or_else(|| format_err("field.tower", "expected an array"))?;
        for (i, level) in levels.iter().enumerate() {
            let at = format!("field.tower[{i}]");
            let coeffs = level.as_array().ok_or_else(|| format_err(&at, "expected an array of coefficients"))?;
            let minpoly = coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| decode_elem(c, &tower, &format!("{at}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            tower = FieldTower::extend(&tower, &minpoly).map_err(|source| CodecError::Field { at, source })?;
        }
    }
    Ok(tower)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coef: Value,
    pub exps: Vec<u32>,
}

/// A family: its field, the number of variables, optional variable names and
/// the members as term lists in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub field: Value,
    pub nvars: usize,
    pub polys: Vec<Vec<TermFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
}

pub fn encode_poly(p: &NfPoly, tower: &FieldTower) -> Result<Vec<TermFile>, FieldError> {
    p.terms().map(|(m, c)| Ok(TermFile { coef: encode_elem(c, tower)?, exps: m.exps().to_vec() })).collect()
}

impl FamilyFile {
    pub fn encode(tower: &Arc<FieldTower>, polys: &[NfPoly], vars: Option<Vec<String>>) -> Result<Self, FieldError> {
        let nvars = polys.first().map_or(0, Poly::nvars);
        let polys = polys.iter().map(|p| encode_poly(p, tower)).collect::<Result<_, _>>()?;
        Ok(FamilyFile { field: encode_tower(tower), nvars, polys, vars })
    }

    pub fn decode(&self) -> Result<(Arc<FieldTower>, Vec<NfPoly>), CodecError> {
        let tower = decode_tower(&self.field)?;
        if let Some(vars) = &self.vars {
            if vars.len() != self.nvars {
                return Err(format_err("vars", format!("expected {} names, got {}", self.nvars, vars.len())));
            }
        }
        let mut polys = Vec::with_capacity(self.polys.len());
        for (i, terms) in self.polys.iter().enumerate() {
            let mut p = Vec::with_capacity(terms.len());
            for (j, t) in terms.iter().enumerate() {
                let at = format!("polys[{i}][{j}]");
                if t.exps.len() != self.nvars {
                    return Err(format_err(
                        format!("{at}.exps"),
                        format!("expected {} exponents, got {}", self.nvars, t.exps.len()),
                    ));
                }
                p.push((Monomial::new(t.exps.clone()), decode_elem(&t.coef, &tower, &format!("{at}.coef"))?));
            }
            polys.push(Poly::from_terms(self.nvars, p));
        }
        Ok((tower, polys))
    }

    pub fn from_json(text: &str) -> Result<Self, CodecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WronskianFile {
    pub base_point: Vec<Value>,
    pub candidates: Vec<u64>,
    pub dehomogenized_var: usize,
    pub eval_point: Vec<Value>,
    /// Candidates confirmed by a rank computation.
    pub verified: Vec<u64>,
    /// Coefficients of W as a polynomial in m, constant term first.
    pub w: Vec<Value>,
}

/// A ticket report. Fields are declared in alphabetical order and maps are
/// keyed by exponent, so serialization is canonical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub bound_source: String,
    pub bound_used: u64,
    pub conjecture2_sum: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check_mismatch: Option<bool>,
    pub d: u32,
    pub defects: BTreeMap<u64, usize>,
    pub dysfunctional: bool,
    pub engine_version: String,
    pub field: Value,
    pub forced: Vec<u64>,
    pub homogeneous: bool,
    pub lower_portion_only: bool,
    pub method: String,
    pub n: usize,
    pub r: usize,
    pub theorem1_bound: u64,
    pub ticket: Vec<u64>,
    pub witnesses: BTreeMap<u64, Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wronskian: Option<WronskianFile>,
    pub wronskian_fallback: bool,
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

impl ReportFile {
    pub fn encode(report: &TicketReport<FieldElem>, tower: &Arc<FieldTower>) -> Result<Self, FieldError> {
        let elems = |xs: &[FieldElem]| xs.iter().map(|x| encode_elem(x, tower)).collect::<Result<Vec<_>, _>>();
        let witnesses = report
            .witnesses
            .iter()
            .map(|(&m, w)| Ok((m, elems(&w.lambda)?)))
            .collect::<Result<BTreeMap<_, _>, FieldError>>()?;
        let wronskian = match &report.wronskian {
            Some(data) => Some(WronskianFile {
                base_point: elems(&data.base_point)?,
                candidates: data.candidates.iter().copied().collect(),
                dehomogenized_var: data.dehomogenized_var,
                eval_point: elems(&data.eval_point)?,
                verified: data.candidates.intersection(&report.ticket).copied().collect(),
                w: elems(data.w.coeffs())?,
            }),
            None => None,
        };
        Ok(ReportFile {
            bound_source: report.bound_source.as_str().to_string(),
            bound_used: report.bound_used,
            conjecture2_sum: report.conjecture2_sum,
            cross_check_mismatch: report.cross_check_mismatch,
            d: report.d,
            defects: report.defects.clone(),
            dysfunctional: report.dysfunctional,
            engine_version: ENGINE_VERSION.to_string(),
            field: encode_tower(tower),
            forced: report.forced.iter().copied().collect(),
            homogeneous: report.homogeneous,
            lower_portion_only: report.lower_portion_only,
            method: report.method.as_str().to_string(),
            n: report.n,
            r: report.r,
            theorem1_bound: report.theorem1_bound,
            ticket: report.ticket.iter().copied().collect(),
            witnesses,
            wronskian,
            wronskian_fallback: report.wronskian_fallback,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CodecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

const INLINE_WIDTH: usize = 80;

/// Indented JSON in which object-free arrays that fit on a line stay on one
/// line. Keys keep their serialization order; the output ends with a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("value serializes to JSON");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let inline = (!has_object(v)).then(|| inline_array(items)).filter(|s| s.len() + 2 * indent <= INLINE_WIDTH);
            if let Some(s) = inline {
                out.push_str(&s);
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn inline_array(items: &[Value]) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|x| match x {
            Value::Array(a) if !a.is_empty() => inline_array(a),
            other => other.to_string(),
        })
        .collect();
    format!("[{}]", parts.join(", "))
}
