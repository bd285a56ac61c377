//! Self-contained output documents. Each embeds the inputs it was computed
//! from, so `validate` can recompute it and compare.

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use tropex::cones::{common_refinement, star_of_ray, ConeComplex};
use tropex::expansion::dual_of_graph;
use tropex::graphs::{
    cone_over, minimal_dilation, minimal_structure, validate_embedded, CombinatorialOneComplex,
    EmbeddedOneComplex,
};
use tropex::io::*;
use tropex::moduli::{
    assemble_fragment, default_subdivisions, enumerate_surjections, tropical_line_family,
    ConeSpaceFragment, Step, SurjectionEnumeration, XGCone,
};
use tropex::secondary::{
    dual_curve, enumerate_secondary_fan, projective_plane_fan, secondary_cone,
    subdivision_from_heights, SecondaryFanReport,
};
use tropex::troplim::{
    check_balancing, limit_expansion, tropicalize_hypersurface, TropicalPolynomial,
    WeightedOneComplex,
};

pub fn refine(a: &ConeComplex, b: &ConeComplex) -> Result<Value> {
    Ok(tagged("fan", fan_to_json(&common_refinement(a, b)?)))
}

pub fn star(fan: &ConeComplex, ray: usize) -> Result<Value> {
    Ok(tagged("fan", fan_to_json(&star_of_ray(fan, ray)?)))
}

fn checked(g: &EmbeddedOneComplex, fan: &ConeComplex) -> Result<()> {
    let v = validate_embedded(g, fan);
    if !v.is_empty() {
        let list: Vec<String> = v.iter().map(ToString::to_string).collect();
        return Err(tropex::Error::InvalidInput(list.join("; ")).into());
    }
    Ok(())
}

pub fn minimize(g: &EmbeddedOneComplex, fan: &ConeComplex) -> Result<Value> {
    checked(g, fan)?;
    let m = minimal_structure(g, fan)?;
    let mut doc = tagged("graph", graph_to_json(&m));
    doc["fan"] = fan_to_json(fan);
    Ok(doc)
}

pub fn conify(g: &EmbeddedOneComplex, fan: &ConeComplex) -> Result<Value> {
    checked(g, fan)?;
    Ok(tagged(
        "fan",
        fan_to_json(&cone_over(g, fan.ambient_dim())?),
    ))
}

pub fn dilation(g: &EmbeddedOneComplex) -> Result<Value> {
    Ok(tagged(
        "dilation",
        json!({"graph": graph_to_json(g), "b": z_to_json(&minimal_dilation(g))}),
    ))
}

pub fn tropicalize(p: &TropicalPolynomial, fan: &ConeComplex) -> Result<Value> {
    let w = tropicalize_hypersurface(p, fan)?;
    let mut doc = tagged("curve", curve_to_json(&w));
    doc["polynomial"] = polynomial_to_json(p);
    doc["fan"] = fan_to_json(fan);
    Ok(doc)
}

pub fn balance(w: &WeightedOneComplex) -> Value {
    let r = check_balancing(w);
    tagged(
        "balance",
        json!({
            "curve": curve_to_json(w),
            "balanced": r.is_balanced(),
            "defects": r.defects().iter().map(|(v, s)| json!({"vertex": v, "sum": zvec_to_json(s)})).collect::<Vec<_>>(),
        }),
    )
}

pub fn limit(g: &EmbeddedOneComplex, fan: &ConeComplex) -> Result<Value> {
    checked(g, fan)?;
    let r = limit_expansion(g, fan)?;
    Ok(tagged(
        "limit",
        json!({
            "fan": fan_to_json(fan),
            "input": graph_to_json(g),
            "minimal_complex": graph_to_json(&r.minimal_complex),
            "base_change_order": z_to_json(&r.base_change_order),
            "dilated": graph_to_json(&r.dilated),
            "cone": fan_to_json(&r.cone),
            "expansion": expansion_to_json(&r.expansion),
        }),
    ))
}

pub fn expand(g: &EmbeddedOneComplex, fan: &ConeComplex) -> Result<Value> {
    checked(g, fan)?;
    let mut doc = tagged("expansion", expansion_to_json(&dual_of_graph(g, fan)));
    doc["graph"] = graph_to_json(g);
    doc["fan"] = fan_to_json(fan);
    Ok(doc)
}

fn xg_json(x: &XGCone) -> Value {
    json!({
        "n": x.n,
        "rays": zmat_to_json(x.cone.rays()),
        "inequalities": zmat_to_json(x.cone.inequalities()),
        "equations": zmat_to_json(x.cone.equations()),
    })
}

pub fn xg(g: &CombinatorialOneComplex, fan: &ConeComplex) -> Result<Value> {
    let x = tropex::moduli::build_xg(g, fan)?;
    Ok(tagged(
        "xg",
        json!({"graph": combinatorial_to_json(g), "fan": fan_to_json(fan), "cone": xg_json(&x)}),
    ))
}

fn steps(p: &[Step]) -> Value {
    Value::Array(
        p.iter()
            .map(|s| json!({"edge": s.edge, "forward": s.forward}))
            .collect(),
    )
}

fn enumeration_json(en: &SurjectionEnumeration) -> Value {
    Value::Array(
        en.types
            .iter()
            .map(|t| {
                let s = t.surjection();
                json!({
                    "image": graph_to_json(&t.sample.image),
                    "vertex_map": s.vertex_map,
                    "edge_paths": s.edge_paths.iter().map(|p| steps(p)).collect::<Vec<_>>(),
                    "ray_paths": s.ray_paths.iter().map(|(p, r)| json!({"path": steps(p), "ray": r})).collect::<Vec<_>>(),
                    "sub_cone": zmat_to_json(t.sub_cone.rays()),
                    "interior": t.interior,
                })
            })
            .collect(),
    )
}

pub fn surjections(g: &CombinatorialOneComplex, fan: &ConeComplex, budget: usize) -> Result<Value> {
    let en = enumerate_surjections(g, fan, budget)?.certified()?;
    Ok(tagged(
        "surjections",
        json!({
            "graph": combinatorial_to_json(g),
            "fan": fan_to_json(fan),
            "budget": budget,
            "cells": en.cells,
            "types": enumeration_json(&en),
        }),
    ))
}

pub struct FamilyInput {
    pub graphs: Vec<CombinatorialOneComplex>,
    pub subdivisions: Option<Vec<ConeComplex>>,
}

pub fn family_from_json(v: &Value) -> Result<FamilyInput> {
    let graphs = v["graphs"]
        .as_array()
        .context("family needs a graphs array")?
        .iter()
        .map(combinatorial_from_json)
        .collect::<tropex::Result<Vec<_>>>()?;
    let subdivisions = match v.get("subdivisions") {
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(fan_from_json)
                .collect::<tropex::Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    Ok(FamilyInput {
        graphs,
        subdivisions,
    })
}

pub fn line_family(fan: &ConeComplex, radius: i64) -> Result<FamilyInput> {
    Ok(FamilyInput {
        graphs: tropical_line_family(fan, radius)?,
        subdivisions: None,
    })
}

fn fragment_json(f: &ConeSpaceFragment) -> Value {
    tagged(
        "fragment",
        json!({
            "sigma": fan_to_json(&f.sigma),
            "family": f.family.iter().map(combinatorial_to_json).collect::<Vec<_>>(),
            "subdivisions": f.subdivisions.iter().map(fan_to_json).collect::<Vec<_>>(),
            "cones": f.cones.iter().map(|c| json!({
                "graph": c.graph,
                "rays": zmat_to_json(c.cone.rays()),
                "tube_vertices": c.tube_vertices,
            })).collect::<Vec<_>>(),
            "morphisms": f.morphisms.iter().map(|m| json!({"child": m.child, "parent": m.parent, "map": zmat_to_json(&m.map)})).collect::<Vec<_>>(),
        }),
    )
}

pub fn modspace(fan: &ConeComplex, fam: FamilyInput) -> Result<(Value, ConeSpaceFragment)> {
    let subs = match fam.subdivisions {
        Some(s) => s,
        None => default_subdivisions(fan, &fam.graphs)?,
    };
    let f = assemble_fragment(fan, &fam.graphs, &subs)?;
    f.space()?;
    Ok((fragment_json(&f), f))
}

fn report_json(r: &SecondaryFanReport) -> Value {
    tagged(
        "secondary",
        json!({
            "d": r.d,
            "support": zmat_to_json(r.support.inequalities()),
            "maximal_cones": r.cones.iter().map(|c| json!({
                "cells": c.subdivision.cells,
                "rays": zmat_to_json(c.cone.rays()),
            })).collect::<Vec<_>>(),
            "count": r.cones.len(),
            "covers": r.covers,
            "is_fan": r.is_fan,
            "all_triangulations": r.all_triangulations,
            "all_unimodular": r.all_unimodular,
        }),
    )
}

pub fn secondary(d: usize, budget: usize) -> Result<(Value, bool)> {
    let r = enumerate_secondary_fan(d, budget)?;
    Ok((report_json(&r), r.ok()))
}

pub fn subdivision(d: usize, heights: &[tropex::arith::Q]) -> Result<Value> {
    let s = subdivision_from_heights(d, heights)?;
    let sc = secondary_cone(&s)?;
    let curve = dual_curve(&s, heights)?;
    Ok(tagged(
        "subdivision",
        json!({
            "d": d,
            "heights": qvec_to_json(heights),
            "cells": s.cells,
            "triangulation": s.is_triangulation(),
            "unimodular": s.is_unimodular(),
            "secondary_cone": zmat_to_json(sc.cone.rays()),
            "dual_curve": curve_to_json(&curve),
        }),
    ))
}

/// Recomputes a document from the inputs it embeds.
pub fn recompute(kind: &str, doc: &Value, fan_hint: Option<&ConeComplex>) -> Result<Value> {
    let fan_of = |key: &str| -> Result<ConeComplex> {
        match doc.get(key) {
            Some(f) => Ok(fan_from_json(f)?),
            None => fan_hint
                .cloned()
                .context("this document needs --fan to be validated"),
        }
    };
    Ok(match kind {
        "fan" => tagged("fan", fan_to_json(&fan_from_json(doc)?)),
        "graph" => {
            let g = graph_from_json(doc)?;
            let fan = fan_of("fan")?;
            checked(&g, &fan)?;
            let mut out = tagged("graph", graph_to_json(&g));
            if doc.get("fan").is_some() {
                out["fan"] = fan_to_json(&fan);
            }
            out
        }
        "dilation" => dilation(&graph_from_json(&doc["graph"])?)?,
        "curve" => tropicalize(&polynomial_from_json(&doc["polynomial"])?, &fan_of("fan")?)?,
        "polynomial" => tagged(
            "polynomial",
            polynomial_to_json(&polynomial_from_json(doc)?),
        ),
        "balance" => balance(&curve_from_json(&doc["curve"])?),
        "limit" => limit(&graph_from_json(&doc["input"])?, &fan_of("fan")?)?,
        "expansion" => expand(&graph_from_json(&doc["graph"])?, &fan_of("fan")?)?,
        "xg" => xg(&combinatorial_from_json(&doc["graph"])?, &fan_of("fan")?)?,
        "surjections" => {
            let budget = doc["budget"]
                .as_u64()
                .context("surjections need a budget")? as usize;
            surjections(
                &combinatorial_from_json(&doc["graph"])?,
                &fan_of("fan")?,
                budget,
            )?
        }
        "fragment" => {
            let fam = FamilyInput {
                graphs: doc["family"]
                    .as_array()
                    .context("fragment needs a family")?
                    .iter()
                    .map(combinatorial_from_json)
                    .collect::<tropex::Result<_>>()?,
                subdivisions: Some(
                    doc["subdivisions"]
                        .as_array()
                        .context("fragment needs subdivisions")?
                        .iter()
                        .map(fan_from_json)
                        .collect::<tropex::Result<_>>()?,
                ),
            };
            modspace(&fan_of("sigma")?, fam)?.0
        }
        "secondary" => {
            secondary(
                doc["d"].as_u64().context("report needs d")? as usize,
                usize::MAX,
            )?
            .0
        }
        "subdivision" => subdivision(
            doc["d"].as_u64().context("subdivision needs d")? as usize,
            &qvec_from_json(&doc["heights"])?,
        )?,
        other => bail!(tropex::Error::Parse(format!(
            "cannot validate documents of kind {other}"
        ))),
    })
}

/// Content checks beyond recomputation.
pub fn semantic_problems(kind: &str, doc: &Value) -> Vec<String> {
    let mut out = Vec::new();
    match kind {
        "balance" if doc["balanced"] != json!(true) => out.push("the curve is not balanced".into()),
        "secondary" => {
            for k in ["covers", "is_fan", "all_triangulations", "all_unimodular"] {
                if doc[k] != json!(true) {
                    out.push(format!("{k} is false"));
                }
            }
        }
        "curve" => {
            if let Ok(w) = curve_from_json(doc) {
                if !check_balancing(&w).is_balanced() {
                    out.push("the curve is not balanced".into());
                }
            }
        }
        _ => {}
    }
    out
}

pub fn default_fan(path_given: Option<ConeComplex>) -> ConeComplex {
    path_given.unwrap_or_else(projective_plane_fan)
}
