//! JSON encodings of the domain types.
//!
//! Integers are written as JSON numbers when they fit in the 53-bit range
//! that every JSON reader handles exactly, and as decimal strings otherwise.
//! Rationals are always strings `"p/q"`. Readers accept both forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::donaldson::SurfaceClass;
use crate::hilbert::HilbClass;
use crate::lattice::{Matrix, QuadLattice};
use crate::mukai::{MukaiElement, SurfaceModel};
use crate::scalar::{format_rational, parse_rational, Scalar};
use crate::theta::{IsometryReport, ThetaTable, OMEGA_BASIS};
use crate::walls::{Polarization, WallClass};

/// Malformed or ill-typed JSON input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("field `{0}` is missing")]
    Missing(&'static str),
    #[error("field `{field}`: {problem}")]
    Field { field: &'static str, problem: String },
    #[error(transparent)]
    Domain(#[from] crate::Error),
}

pub type JsonResult<T> = Result<T, JsonError>;

const SAFE: i64 = (1 << 53) - 1;

/// Scalars with a JSON form.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl JsonScalar for BigInt {
    fn to_json(&self) -> Value {
        match self.to_i64() {
            Some(x) if x.abs() <= SAFE => json!(x),
            _ => Value::String(self.to_string()),
        }
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    }
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            _ => BigInt::from_json(v).map(BigRational::from_integer),
        }
    }
}

pub fn int_json(x: &BigInt) -> Value {
    x.to_json()
}

pub fn rational_json(q: &BigRational) -> Value {
    q.to_json()
}

/// Parses a JSON document.
pub fn parse(text: &str) -> JsonResult<Value> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
}

fn field<'a>(obj: &'a Value, name: &'static str) -> JsonResult<&'a Value> {
    obj.get(name).ok_or(JsonError::Missing(name))
}

fn bad(field: &'static str, problem: impl Into<String>) -> JsonError {
    JsonError::Field { field, problem: problem.into() }
}

fn scalar<T: JsonScalar>(v: &Value, name: &'static str) -> JsonResult<T> {
    T::from_json(v).ok_or_else(|| bad(name, format!("expected a number, got {v}")))
}

fn vector<T: JsonScalar>(v: &Value, name: &'static str) -> JsonResult<Vec<T>> {
    v.as_array()
        .ok_or_else(|| bad(name, "expected an array"))?
        .iter()
        .map(|x| scalar(x, name))
        .collect()
}

fn opt_vector<T: JsonScalar>(obj: &Value, name: &'static str) -> JsonResult<Option<Vec<T>>> {
    match obj.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => vector(v, name).map(Some),
    }
}

fn vec_json<T: JsonScalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(T::to_json).collect())
}

fn matrix(v: &Value, name: &'static str) -> JsonResult<Matrix<BigInt>> {
    v.as_array()
        .ok_or_else(|| bad(name, "expected an array of rows"))?
        .iter()
        .map(|row| vector(row, name))
        .collect()
}

fn index(v: &Value, name: &'static str) -> JsonResult<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(name, "expected a non-negative index"))
}

/// `{"a0", "c1", "a2", "trans"?}`.
pub fn mukai_to_json<T: JsonScalar>(m: &MukaiElement<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("a0".into(), m.a0.to_json());
    obj.insert("c1".into(), vec_json(&m.c1));
    obj.insert("a2".into(), m.a2.to_json());
    if let Some(t) = &m.trans {
        obj.insert("trans".into(), vec_json(t));
    }
    Value::Object(obj)
}

pub fn mukai_from_json<T: JsonScalar>(v: &Value) -> JsonResult<MukaiElement<T>> {
    Ok(MukaiElement {
        a0: scalar(field(v, "a0")?, "a0")?,
        c1: vector(field(v, "c1")?, "c1")?,
        trans: opt_vector(v, "trans")?,
        a2: scalar(field(v, "a2")?, "a2")?,
    })
}

/// `{"pic", "t", "trans"?}`.
pub fn hilb_to_json<T: JsonScalar>(h: &HilbClass<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("pic".into(), vec_json(&h.pic));
    obj.insert("t".into(), h.t.to_json());
    if let Some(t) = &h.trans {
        obj.insert("trans".into(), vec_json(t));
    }
    Value::Object(obj)
}

pub fn hilb_from_json<T: JsonScalar>(v: &Value) -> JsonResult<HilbClass<T>> {
    Ok(HilbClass {
        pic: vector(field(v, "pic")?, "pic")?,
        trans: opt_vector(v, "trans")?,
        t: scalar(field(v, "t")?, "t")?,
    })
}

/// An H²-class, written either as `{"c1", "trans"?}` or as a Mukai element
/// whose `a0` and `a2` are zero.
pub fn surface_class_from_json<T: JsonScalar>(v: &Value) -> JsonResult<SurfaceClass<T>> {
    for name in ["a0", "a2"] {
        if let Some(x) = v.get(name) {
            let x: BigRational = scalar(x, name)?;
            if !x.is_zero() {
                return Err(bad(name, "an H²-class has no degree 0 or 4 part"));
            }
        }
    }
    Ok(SurfaceClass { pic: vector(field(v, "c1")?, "c1")?, trans: opt_vector(v, "trans")? })
}

/// `{"picard_gram", "sigma", "c", "trans_gram"?}`.
pub fn surface_to_json(s: &SurfaceModel) -> Value {
    let rows = |lat: &QuadLattice| Value::Array(lat.gram().iter().map(|r| vec_json(r)).collect());
    let mut obj = Map::new();
    obj.insert("picard_gram".into(), rows(s.picard()));
    if let (Some(si), Some(ci)) = (s.sigma_index(), s.fiber_index()) {
        obj.insert("sigma".into(), json!(si));
        obj.insert("c".into(), json!(ci));
    }
    if let Some(t) = s.transcendental() {
        obj.insert("trans_gram".into(), rows(t));
    }
    Value::Object(obj)
}

pub fn surface_from_json(v: &Value) -> JsonResult<SurfaceModel> {
    let picard = QuadLattice::new(matrix(field(v, "picard_gram")?, "picard_gram")?)?;
    let sigma = v.get("sigma").map(|x| index(x, "sigma")).transpose()?;
    let fiber = v.get("c").map(|x| index(x, "c")).transpose()?;
    let trans = match v.get("trans_gram") {
        None | Some(Value::Null) => None,
        Some(m) => Some(QuadLattice::new(matrix(m, "trans_gram")?)?),
    };
    Ok(SurfaceModel::new(picard, sigma, fiber, trans)?)
}

pub fn wall_to_json(w: &WallClass) -> Value {
    json!({ "x": w.x, "y": w.y, "l2": w.l_squared })
}

pub fn polarization_to_json(h: &Polarization) -> Value {
    json!({ "a": h.a, "b": h.b })
}

pub fn theta_table_to_json(t: &ThetaTable) -> Value {
    let mut values = Map::new();
    for (name, v) in OMEGA_BASIS.iter().zip(&t.values) {
        values.insert((*name).into(), hilb_to_json(v));
    }
    json!({
        "r": t.r,
        "n": t.n,
        "values": values,
        "xi_c1": hilb_to_json(&t.xi_c1),
        "push_c1_omega": hilb_to_json(&t.push_c1_omega),
    })
}

pub fn isometry_report_to_json(rep: &IsometryReport) -> Value {
    json!({
        "r": rep.r,
        "n": rep.n,
        "integral": rep.integral,
        "gram_preserved": rep.gram_preserved,
        "disc_vperp_omega": int_json(&rep.disc_vperp_omega),
        "disc_lambda_r": int_json(&rep.disc_lambda_r),
        "basis_spans": rep.basis_spans,
        "image_unimodular": rep.image_unimodular,
        "surjective": rep.surjective,
        "images": rep.images.iter().map(hilb_to_json).collect::<Vec<_>>(),
    })
}

/// `{"code", "message"}` for a domain error.
pub fn error_to_json(e: &crate::Error) -> Value {
    json!({ "code": e.code(), "message": e.to_string() })
}

/// True if `x` is written as a string rather than a number.
pub fn needs_string(x: &BigInt) -> bool {
    x.abs() > BigInt::from(SAFE)
}
