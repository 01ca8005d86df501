//! JSON forms of polytopes, polynomials, valuations and intervals.
//!
//! Rationals are written as strings `"p/q"` and accepted as strings or
//! integers. Parse errors name the offending field as a path such as
//! `terms[0].bodies[1].vertices[2][0]`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{LinearMap, Polytope};
use crate::interval::Interval;
use crate::polynomial::Polynomial;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::valuation::{Generator, Lowered, QValuation, Term, Valuation};
use crate::QPolytope;

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Invalid {
        path: if path.is_empty() { "$".into() } else { path.into() },
        message: message.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| invalid(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(&join(path, key), "missing field"))
}

fn optional<'a>(obj: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    obj.get(key).filter(|v| !v.is_null())
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(path, "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| invalid(path, "expected a nonnegative integer"))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        _ => None,
    };
    parsed.ok_or_else(|| invalid(path, format!("expected a rational \"p/q\", found {v}")))
}

pub fn interval_to_json(i: &Interval<Rational>) -> Value {
    let (lo, hi) = i.to_f64();
    json!({
        "lo": rational_to_json(&i.lo),
        "hi": rational_to_json(&i.hi),
        "float": [lo, hi],
        "width": i.to_float_interval().width(),
    })
}

fn point_from_json(v: &Value, dim: usize, path: &str) -> Result<Vec<Rational>> {
    let coords = array(v, path)?;
    if coords.len() != dim {
        return Err(invalid(path, format!("expected {dim} coordinates, found {}", coords.len())));
    }
    coords
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_json(c, &format!("{path}[{i}]")))
        .collect()
}

fn point_to_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational_to_json).collect())
}

/// `{"dim": n, "vertices": [[...], ...]}` with vertices in lexicographic order.
pub fn polytope_to_json(p: &QPolytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| point_to_json(v)).collect::<Vec<_>>(),
    })
}

/// Parses a polytope and reduces it to its extreme points.
pub fn polytope_from_json(v: &Value, path: &str) -> Result<QPolytope> {
    let obj = object(v, path)?;
    let dim = usize_of(field(obj, "dim", path)?, &join(path, "dim"))?;
    if dim == 0 {
        return Err(invalid(&join(path, "dim"), "dimension must be positive"));
    }
    let vpath = join(path, "vertices");
    let verts = array(field(obj, "vertices", path)?, &vpath)?;
    if verts.is_empty() {
        return Err(invalid(&vpath, "empty point set"));
    }
    let points = verts
        .iter()
        .enumerate()
        .map(|(i, p)| point_from_json(p, dim, &format!("{vpath}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Polytope::hull(points, dim)
}

/// `{"vars": n, "terms": [{"exp": [...], "coef": "p/q"}, ...]}`.
pub fn polynomial_to_json(p: &Polynomial<Rational>) -> Value {
    json!({
        "vars": p.num_vars(),
        "terms": p
            .terms()
            .map(|(e, c)| json!({"exp": e, "coef": rational_to_json(c)}))
            .collect::<Vec<_>>(),
    })
}

pub fn polynomial_from_json(v: &Value, path: &str) -> Result<Polynomial<Rational>> {
    let obj = object(v, path)?;
    let vars = usize_of(field(obj, "vars", path)?, &join(path, "vars"))?;
    let tpath = join(path, "terms");
    let terms = array(field(obj, "terms", path)?, &tpath)?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let tp = format!("{tpath}[{i}]");
            let to = object(t, &tp)?;
            let ep = join(&tp, "exp");
            let exp = array(field(to, "exp", &tp)?, &ep)?
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let p = format!("{ep}[{j}]");
                    u32::try_from(usize_of(e, &p)?).map_err(|_| invalid(&p, "exponent too large"))
                })
                .collect::<Result<Vec<u32>>>()?;
            if exp.len() != vars {
                return Err(invalid(&ep, format!("expected {vars} exponents, found {}", exp.len())));
            }
            Ok((exp, rational_from_json(field(to, "coef", &tp)?, &join(&tp, "coef"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(vars, terms)
}

fn bodies_to_json(bodies: &[QPolytope]) -> Value {
    Value::Array(bodies.iter().map(polytope_to_json).collect())
}

fn bodies_from_json(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Vec<QPolytope>> {
    let Some(v) = optional(obj, key) else {
        return Ok(Vec::new());
    };
    let bp = join(path, key);
    array(v, &bp)?
        .iter()
        .enumerate()
        .map(|(i, b)| polytope_from_json(b, &format!("{bp}[{i}]")))
        .collect()
}

fn optional_polytope(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<QPolytope>> {
    optional(obj, key)
        .map(|v| polytope_from_json(v, &join(path, key)))
        .transpose()
}

fn map_to_json(m: &LinearMap<Rational>) -> Value {
    json!({
        "source": m.source_dim(),
        "rows": m.rows().iter().map(|r| point_to_json(r)).collect::<Vec<_>>(),
    })
}

fn map_from_json(v: &Value, path: &str) -> Result<LinearMap<Rational>> {
    let obj = object(v, path)?;
    let source = usize_of(field(obj, "source", path)?, &join(path, "source"))?;
    let rp = join(path, "rows");
    let rows = array(field(obj, "rows", path)?, &rp)?
        .iter()
        .enumerate()
        .map(|(i, r)| point_from_json(r, source, &format!("{rp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    LinearMap::new(rows, source)
}

fn term_to_json(t: &Term<Rational>) -> Value {
    let mut obj = Map::new();
    let kind = match &t.generator {
        Generator::Mv { bodies } => {
            obj.insert("bodies".into(), bodies_to_json(bodies));
            "mv"
        }
        Generator::Pd { density, slack, base } => {
            obj.insert("density".into(), polynomial_to_json(density));
            obj.insert("slack".into(), bodies_to_json(slack));
            obj.insert("base".into(), base.as_ref().map_or(Value::Null, polytope_to_json));
            "pd"
        }
        Generator::Euler => "euler",
        Generator::Product { left, right } => {
            obj.insert("left".into(), valuation_to_json(left));
            obj.insert("right".into(), valuation_to_json(right));
            "product"
        }
        Generator::Linear(l) => {
            obj.insert("map".into(), map_to_json(&l.map));
            obj.insert("offset".into(), l.offset.as_ref().map_or(Value::Null, polytope_to_json));
            obj.insert("slack".into(), bodies_to_json(&l.slack));
            obj.insert("density".into(), l.density.as_ref().map_or(Value::Null, polynomial_to_json));
            "linear"
        }
        Generator::Component { inner, degree } => {
            obj.insert("inner".into(), valuation_to_json(inner));
            obj.insert("degree".into(), json!(degree));
            "component"
        }
    };
    obj.insert("kind".into(), json!(kind));
    obj.insert("coef".into(), rational_to_json(&t.coeff));
    Value::Object(obj)
}

fn term_from_json(v: &Value, path: &str) -> Result<Term<Rational>> {
    let obj = object(v, path)?;
    let kp = join(path, "kind");
    let kind = field(obj, "kind", path)?
        .as_str()
        .ok_or_else(|| invalid(&kp, "expected a string"))?;
    let coeff = match optional(obj, "coef") {
        Some(c) => rational_from_json(c, &join(path, "coef"))?,
        None => Rational::from_integer(1.into()),
    };
    let generator = match kind {
        "mv" => Generator::Mv {
            bodies: bodies_from_json(obj, "bodies", path)?,
        },
        "pd" => Generator::Pd {
            density: polynomial_from_json(field(obj, "density", path)?, &join(path, "density"))?,
            slack: bodies_from_json(obj, "slack", path)?,
            base: optional_polytope(obj, "base", path)?,
        },
        "euler" => Generator::Euler,
        "product" => Generator::Product {
            left: Box::new(valuation_from_json(field(obj, "left", path)?, &join(path, "left"))?),
            right: Box::new(valuation_from_json(field(obj, "right", path)?, &join(path, "right"))?),
        },
        "linear" => Generator::Linear(Lowered {
            map: map_from_json(field(obj, "map", path)?, &join(path, "map"))?,
            offset: optional_polytope(obj, "offset", path)?,
            slack: bodies_from_json(obj, "slack", path)?,
            density: optional(obj, "density")
                .map(|d| polynomial_from_json(d, &join(path, "density")))
                .transpose()?,
        }),
        "component" => Generator::Component {
            inner: Box::new(valuation_from_json(field(obj, "inner", path)?, &join(path, "inner"))?),
            degree: usize_of(field(obj, "degree", path)?, &join(path, "degree"))?,
        },
        other => return Err(invalid(&kp, format!("unknown kind {other:?}"))),
    };
    Ok(Term { coeff, generator })
}

/// `{"dim": n, "terms": [{"kind": ..., "coef": ..., ...}]}`.
pub fn valuation_to_json(v: &QValuation) -> Value {
    json!({
        "dim": v.dim(),
        "terms": v.terms().iter().map(term_to_json).collect::<Vec<_>>(),
    })
}

pub fn valuation_from_json(v: &Value, path: &str) -> Result<QValuation> {
    let obj = object(v, path)?;
    let dp = join(path, "dim");
    let dim = usize_of(field(obj, "dim", path)?, &dp)?;
    let tp = join(path, "terms");
    let terms = array(field(obj, "terms", path)?, &tp)?
        .iter()
        .enumerate()
        .map(|(i, t)| term_from_json(t, &format!("{tp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    // report generator validation failures against the term that caused them
    for (i, t) in terms.iter().enumerate() {
        Valuation::new(dim, vec![t.clone()]).map_err(|e| match e {
            Error::Invalid { .. } => e,
            other => invalid(&format!("{tp}[{i}]"), other.to_string()),
        })?;
    }
    Valuation::new(dim, terms).map_err(|e| invalid(&dp, e.to_string()))
}

pub fn parse_polytope(text: &str) -> Result<QPolytope> {
    polytope_from_json(&parse(text)?, "")
}

pub fn parse_valuation(text: &str) -> Result<QValuation> {
    valuation_from_json(&parse(text)?, "")
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| invalid("", format!("malformed JSON: {e}")))
}
