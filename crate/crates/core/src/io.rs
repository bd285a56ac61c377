//! JSON encodings. Integers beyond 64 bits and all rationals are strings;
//! every top-level document names its schema in a `$schema` field.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{Q, Z};
use crate::cones::{Cone, ConeComplex};
use crate::error::{Error, Result};
use crate::expansion::{Component, ExpansionDualComplex};
use crate::graphs::{CombinatorialOneComplex, Edge, EmbeddedOneComplex, Ray};
use crate::troplim::{TropicalPolynomial, WeightedOneComplex};

pub const SCHEMA_PREFIX: &str = "schemas/";
pub const SCHEMA_SUFFIX: &str = ".schema.json";

pub fn schema_ref(kind: &str) -> String {
    format!("{SCHEMA_PREFIX}{kind}{SCHEMA_SUFFIX}")
}

/// The document kind named by `$schema`.
pub fn schema_kind(doc: &Value) -> Result<String> {
    let s = doc
        .get("$schema")
        .and_then(Value::as_str)
        .ok_or_else(|| perr("missing $schema"))?;
    s.strip_prefix(SCHEMA_PREFIX)
        .and_then(|k| k.strip_suffix(SCHEMA_SUFFIX))
        .map(str::to_string)
        .ok_or_else(|| perr(&format!("unknown schema {s}")))
}

/// Adds the `$schema` field to an object.
pub fn tagged(kind: &str, mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        let mut out = Map::new();
        out.insert("$schema".into(), Value::String(schema_ref(kind)));
        out.append(m);
        return Value::Object(out);
    }
    body
}

fn perr(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| perr(&format!("missing field {key}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| perr(&format!("{what} must be an array")))
}

pub fn z_to_json(z: &Z) -> Value {
    match z.to_i64() {
        Some(x) => json!(x),
        None => Value::String(z.to_string()),
    }
}

pub fn z_from_json(v: &Value) -> Result<Z> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Z::from)
            .or_else(|| n.as_u64().map(Z::from))
            .ok_or_else(|| perr("non-integer number")),
        Value::String(s) => Z::from_str(s.trim()).map_err(|_| perr(&format!("bad integer {s}"))),
        _ => Err(perr("expected an integer")),
    }
}

pub fn q_to_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn q_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p = Z::from_str(p.trim()).map_err(|_| perr(&format!("bad rational {s}")))?;
            let q = Z::from_str(q.trim()).map_err(|_| perr(&format!("bad rational {s}")))?;
            if q == Z::from(0) {
                return Err(perr(&format!("zero denominator in {s}")));
            }
            Ok(Q::new(p, q))
        }
        Value::Number(_) => Ok(Q::from_integer(z_from_json(v)?)),
        _ => Err(perr("expected a rational")),
    }
}

pub fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr("expected a non-negative index"))
}

pub fn zvec_to_json(v: &[Z]) -> Value {
    Value::Array(v.iter().map(z_to_json).collect())
}

pub fn zvec_from_json(v: &Value) -> Result<Vec<Z>> {
    array(v, "integer vector")?
        .iter()
        .map(z_from_json)
        .collect()
}

pub fn zmat_to_json(m: &[Vec<Z>]) -> Value {
    Value::Array(m.iter().map(|r| zvec_to_json(r)).collect())
}

pub fn zmat_from_json(v: &Value) -> Result<Vec<Vec<Z>>> {
    array(v, "integer matrix")?
        .iter()
        .map(zvec_from_json)
        .collect()
}

pub fn qvec_to_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_to_json).collect())
}

pub fn qvec_from_json(v: &Value) -> Result<Vec<Q>> {
    array(v, "rational vector")?
        .iter()
        .map(q_from_json)
        .collect()
}

fn indices(v: &Value) -> Result<Vec<usize>> {
    array(v, "index list")?
        .iter()
        .map(usize_from_json)
        .collect()
}

pub fn cone_to_json(c: &Cone) -> Value {
    let mut m = Map::new();
    m.insert("rays".into(), zmat_to_json(c.rays()));
    if let Some(l) = c.explicit_lattice() {
        m.insert("lattice".into(), zmat_to_json(l));
    }
    Value::Object(m)
}

pub fn cone_from_json(n: usize, v: &Value) -> Result<Cone> {
    let rays = zmat_from_json(field(v, "rays")?)?;
    if rays.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rays.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    let c = Cone::from_integer_generators(n, &rays)?;
    match v.get("lattice") {
        Some(l) if !l.is_null() => c.with_lattice(zmat_from_json(l)?),
        _ => Ok(c),
    }
}

/// Maximal cones only; faces are implied.
pub fn fan_to_json(k: &ConeComplex) -> Value {
    let mut m = Map::new();
    m.insert("ambient_dim".into(), json!(k.ambient_dim()));
    m.insert(
        "cones".into(),
        Value::Array(k.maximal_cones().into_iter().map(cone_to_json).collect()),
    );
    if !k.ray_names().is_empty() {
        let names: Map<String, Value> = k
            .ray_names()
            .iter()
            .map(|(s, r)| (s.clone(), zvec_to_json(r)))
            .collect();
        m.insert("ray_names".into(), Value::Object(names));
    }
    Value::Object(m)
}

pub fn fan_from_json(v: &Value) -> Result<ConeComplex> {
    let n = usize_from_json(field(v, "ambient_dim")?)?;
    let cones = array(field(v, "cones")?, "cones")?
        .iter()
        .map(|c| cone_from_json(n, c))
        .collect::<Result<Vec<_>>>()?;
    let k = ConeComplex::from_cones(n, cones)?;
    match v.get("ray_names").and_then(Value::as_object) {
        Some(names) => {
            let names: BTreeMap<String, Vec<Z>> = names
                .iter()
                .map(|(s, r)| Ok((s.clone(), zvec_from_json(r)?)))
                .collect::<Result<_>>()?;
            k.with_ray_names(names)
        }
        None => Ok(k),
    }
}

fn edges_rays_to_json(g: &CombinatorialOneComplex, m: &mut Map<String, Value>) {
    m.insert(
        "edges".into(),
        Value::Array(g.edges.iter().map(|e| json!({"ends": [e.ends.0, e.ends.1], "cone": e.cone, "dir": zvec_to_json(&e.dir)})).collect()),
    );
    m.insert(
        "rays".into(),
        Value::Array(
            g.rays
                .iter()
                .map(|r| json!({"base": r.base, "cone": r.cone, "dir": zvec_to_json(&r.dir)}))
                .collect(),
        ),
    );
}

fn edges_rays_from_json(v: &Value, g: &mut CombinatorialOneComplex) -> Result<()> {
    for e in array(v.get("edges").unwrap_or(&json!([])), "edges")? {
        let ends = indices(field(e, "ends")?)?;
        if ends.len() != 2 {
            return Err(perr("an edge needs two ends"));
        }
        g.edges.push(Edge {
            ends: (ends[0], ends[1]),
            cone: usize_from_json(field(e, "cone")?)?,
            dir: zvec_from_json(field(e, "dir")?)?,
        });
    }
    for r in array(v.get("rays").unwrap_or(&json!([])), "rays")? {
        g.rays.push(Ray {
            base: usize_from_json(field(r, "base")?)?,
            cone: usize_from_json(field(r, "cone")?)?,
            dir: zvec_from_json(field(r, "dir")?)?,
        });
    }
    let nv = g.vertices.len();
    if g.edges.iter().any(|e| e.ends.0 >= nv || e.ends.1 >= nv)
        || g.rays.iter().any(|r| r.base >= nv)
    {
        return Err(Error::BadIndex(
            "an edge or ray refers to a missing vertex".into(),
        ));
    }
    Ok(())
}

pub fn combinatorial_to_json(g: &CombinatorialOneComplex) -> Value {
    let mut m = Map::new();
    m.insert(
        "vertices".into(),
        Value::Array(g.vertices.iter().map(|c| json!({"cone": c})).collect()),
    );
    edges_rays_to_json(g, &mut m);
    Value::Object(m)
}

pub fn combinatorial_from_json(v: &Value) -> Result<CombinatorialOneComplex> {
    let mut g = CombinatorialOneComplex::default();
    for x in array(field(v, "vertices")?, "vertices")? {
        g.vertices.push(usize_from_json(field(x, "cone")?)?);
    }
    edges_rays_from_json(v, &mut g)?;
    Ok(g)
}

pub fn graph_to_json(e: &EmbeddedOneComplex) -> Value {
    let mut m = Map::new();
    m.insert(
        "vertices".into(),
        Value::Array(
            e.graph
                .vertices
                .iter()
                .zip(&e.positions)
                .map(|(c, p)| json!({"cone": c, "pos": qvec_to_json(p)}))
                .collect(),
        ),
    );
    edges_rays_to_json(&e.graph, &mut m);
    Value::Object(m)
}

pub fn graph_from_json(v: &Value) -> Result<EmbeddedOneComplex> {
    let mut e = EmbeddedOneComplex::default();
    for x in array(field(v, "vertices")?, "vertices")? {
        e.graph.vertices.push(usize_from_json(field(x, "cone")?)?);
        e.positions.push(qvec_from_json(field(x, "pos")?)?);
    }
    edges_rays_from_json(v, &mut e.graph)?;
    Ok(e)
}

/// A graph document with `edge_weights` and `ray_weights` added.
pub fn curve_to_json(w: &WeightedOneComplex) -> Value {
    let mut v = graph_to_json(&w.base);
    let m = v.as_object_mut().expect("object");
    m.insert("edge_weights".into(), zvec_to_json(&w.edge_weights));
    m.insert("ray_weights".into(), zvec_to_json(&w.ray_weights));
    v
}

pub fn curve_from_json(v: &Value) -> Result<WeightedOneComplex> {
    let base = graph_from_json(v)?;
    let edge_weights = zvec_from_json(field(v, "edge_weights")?)?;
    let ray_weights = zvec_from_json(field(v, "ray_weights")?)?;
    if edge_weights.len() != base.graph.edges.len() || ray_weights.len() != base.graph.rays.len() {
        return Err(Error::ShapeMismatch(
            "weights do not match the edges and rays".into(),
        ));
    }
    Ok(WeightedOneComplex {
        base,
        edge_weights,
        ray_weights,
    })
}

pub fn polynomial_to_json(p: &TropicalPolynomial) -> Value {
    json!({
        "dim": p.ambient_dim,
        "terms": p.terms.iter().map(|(e, v)| json!({"exp": zvec_to_json(e), "val": q_to_json(v)})).collect::<Vec<_>>(),
    })
}

pub fn polynomial_from_json(v: &Value) -> Result<TropicalPolynomial> {
    let n = usize_from_json(field(v, "dim")?)?;
    let terms = array(field(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            Ok((
                zvec_from_json(field(t, "exp")?)?,
                q_from_json(field(t, "val")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    if terms.is_empty() {
        return Err(Error::InvalidInput(
            "a tropical polynomial needs at least one term".into(),
        ));
    }
    if terms.iter().any(|(e, _)| e.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: terms
                .iter()
                .map(|(e, _)| e.len())
                .find(|&l| l != n)
                .unwrap_or(n),
        });
    }
    Ok(TropicalPolynomial {
        ambient_dim: n,
        terms,
    })
}

pub fn expansion_to_json(e: &ExpansionDualComplex) -> Value {
    json!({
        "components": e.components.iter().map(|c| json!({
            "vertex": c.vertex, "cone": c.cone, "rank": c.rank, "position": qvec_to_json(&c.position),
        })).collect::<Vec<_>>(),
        "double_divisors": e.double_divisors.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "relative_divisors": e.relative_divisors.iter().map(|(a, d)| json!({"component": a, "dir": zvec_to_json(d)})).collect::<Vec<_>>(),
        "tube_flags": e.tube_flags.iter().collect::<Vec<_>>(),
    })
}

pub fn expansion_from_json(v: &Value) -> Result<ExpansionDualComplex> {
    let components = array(field(v, "components")?, "components")?
        .iter()
        .map(|c| {
            Ok(Component {
                vertex: usize_from_json(field(c, "vertex")?)?,
                cone: usize_from_json(field(c, "cone")?)?,
                rank: usize_from_json(field(c, "rank")?)?,
                position: qvec_from_json(field(c, "position")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let double_divisors = array(field(v, "double_divisors")?, "double_divisors")?
        .iter()
        .map(|p| {
            let ab = indices(p)?;
            (ab.len() == 2)
                .then(|| (ab[0], ab[1]))
                .ok_or_else(|| perr("a double divisor joins two components"))
        })
        .collect::<Result<Vec<_>>>()?;
    let relative_divisors = array(field(v, "relative_divisors")?, "relative_divisors")?
        .iter()
        .map(|r| {
            Ok((
                usize_from_json(field(r, "component")?)?,
                zvec_from_json(field(r, "dir")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let tube_flags: BTreeSet<usize> = indices(v.get("tube_flags").unwrap_or(&json!([])))?
        .into_iter()
        .collect();
    let nc = components.len();
    if double_divisors.iter().any(|(a, b)| *a >= nc || *b >= nc)
        || relative_divisors.iter().any(|(a, _)| *a >= nc)
        || tube_flags.iter().any(|&t| t >= nc)
    {
        return Err(Error::BadIndex(
            "a divisor or flag refers to a missing component".into(),
        ));
    }
    Ok(ExpansionDualComplex {
        components,
        double_divisors,
        relative_divisors,
        tube_flags,
    })
}

pub fn read_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(&e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn write_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
