//! Browser bindings for the demo page. Each export takes an instance
//! document as JSON text and returns a JSON object with the result and an
//! SVG drawing; errors come back as the message text.

mod svg;

use comprehend::cat_scheme::DiagramScheme;
use comprehend::galois::pi1;
use comprehend::scheme::{factorise, Scheme};
use comprehend::{Functor, Variance, DEFAULT_BUDGET};
use comprehend_cli::dot::unique_lifts;
use comprehend_cli::format::{document, group_doc, load, parse_document, Loaded};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn variance(name: &str) -> Result<Variance, String> {
    match name {
        "copresheaf" => Ok(Variance::Covariant),
        "presheaf" => Ok(Variance::Contravariant),
        _ => Err(format!("unknown scheme {name}")),
    }
}

fn loaded(text: &str) -> Result<Loaded, String> {
    let doc = parse_document(text).map_err(|e| e.to_string())?;
    load(&doc.instance).map_err(|e| e.to_string())
}

fn value(x: Loaded) -> Value {
    serde_json::to_value(document(&x)).expect("documents serialise")
}

fn drawing(p: &Functor) -> String {
    svg::functor(p, &unique_lifts(p))
}

/// Comprehensive factorisation of a functor; the drawing shows the covering
/// part over the codomain.
pub fn factorise_json(text: &str, scheme: &str) -> Result<String, String> {
    let s = DiagramScheme {
        variance: variance(scheme)?,
    };
    let Loaded::Functor(f) = loaded(text)? else {
        return Err("expected a functor".into());
    };
    let fac = factorise(&s, &f).map_err(|e| e.to_string())?;
    let out = json!({
        "middle_objects": fac.middle.num_objects(),
        "middle_morphisms": fac.middle.num_morphisms(),
        "left": value(Loaded::Functor(fac.left.clone())),
        "right": value(Loaded::Functor(fac.right.clone())),
        "classifier": value(Loaded::Diagram(fac.classifier)),
        "svg": drawing(&fac.right),
    });
    Ok(out.to_string())
}

/// Fundamental group at the base object of a based category, with its
/// universal cover drawn.
pub fn fundamental_group_json(text: &str, scheme: &str) -> Result<String, String> {
    let Loaded::Based(c, a) = loaded(text)? else {
        return Err("expected a based category".into());
    };
    let pi = pi1(&c, a, variance(scheme)?, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let cover = &pi.universal.cover.map;
    let loops: Vec<&str> = pi.loops.iter().map(|&g| c.mor_name(g)).collect();
    let out = json!({
        "base": c.obj_name(a),
        "order": pi.group.order(),
        "abelian": pi.group.is_abelian(),
        "group": serde_json::to_value(group_doc(&pi.group)).expect("groups serialise"),
        "loops": loops,
        "svg": drawing(cover),
    });
    Ok(out.to_string())
}

/// Category of elements of a diagram and its projection.
pub fn elements_json(text: &str) -> Result<String, String> {
    let Loaded::Diagram(x) = loaded(text)? else {
        return Err("expected a diagram".into());
    };
    let s = DiagramScheme {
        variance: x.variance(),
    };
    let p = s.elements(&x).map_err(|e| e.to_string())?;
    let out = json!({
        "objects": p.dom().num_objects(),
        "morphisms": p.dom().num_morphisms(),
        "projection": value(Loaded::Functor(p.clone())),
        "svg": drawing(&p),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn factorise_functor(text: &str, scheme: &str) -> Result<String, JsValue> {
    factorise_json(text, scheme).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fundamental_group(text: &str, scheme: &str) -> Result<String, JsValue> {
    fundamental_group_json(text, scheme).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn elements(text: &str) -> Result<String, JsValue> {
    elements_json(text).map_err(|e| JsValue::from_str(&e))
}
