//! Deterministic emitters for `CoeffExpr`: LaTeX and a versioned JSON
//! serialization with an exact round-trip parser.

use serde_json::{json, Map, Value};

use crate::expand::tree::{CoeffExpr, HypTag, LeafData, SetDescriptor, ShiftSlot, SpaceRef};
use crate::liealg::Covec;
use crate::ratlin::{rat_parse, rat_str, Rat, Subspace};
use crate::{Error, Result};

pub const SCHEMA: &str = "coeffexpr-1";

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

/// Render the expression as a single LaTeX formula. The automorphic
/// argument accumulates left translations, so `Translate(["w","v"], leaf)`
/// renders the leaf applied at `w\,v\,g`.
pub fn emit_latex(e: &CoeffExpr) -> String {
    latex_at(e, "g")
}

fn latex_at(e: &CoeffExpr, arg: &str) -> String {
    match e {
        CoeffExpr::Leaf(d) => leaf_latex(d, arg),
        CoeffExpr::SumRational { set, body } => {
            format!("\\sum_{{{}}} {}", set.label, latex_at(body, arg))
        }
        CoeffExpr::IntCompact { space, body } => {
            format!("\\int_{{[{}]}} {} \\,d\\mu", space.label, latex_at(body, arg))
        }
        CoeffExpr::IntAdelic { space, body } => {
            format!("\\int_{{{}}} {} \\,d\\mu", space.label, latex_at(body, arg))
        }
        CoeffExpr::Translate { word, body } => {
            let mut inner = word.join("\\,");
            inner.push_str("\\,");
            inner.push_str(arg);
            latex_at(body, &inner)
        }
        CoeffExpr::Combine(parts) => {
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.iter().map(|p| latex_at(p, arg)).collect::<Vec<_>>().join(" + ")
            }
        }
    }
}

fn leaf_latex(d: &LeafData, arg: &str) -> String {
    let core = match &d.note {
        Some(n) => n.clone(),
        None => {
            let mut sub = String::from("S,\\varphi");
            if d.phi_prime.is_some() {
                sub.push_str(",\\varphi'");
            }
            let sup = if d.r_space.is_some() { "^{R}" } else { "" };
            format!("\\mathcal{{F}}{sup}_{{{sub}}}")
        }
    };
    format!("{core}[\\eta]({arg})")
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

fn rat_json(r: &Rat) -> Value {
    Value::String(rat_str(r))
}

fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn covec_json(c: &Covec) -> Value {
    vec_json(&c.0)
}

fn subspace_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient(),
        "basis": s.basis().iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
    })
}

fn opt<T, F: Fn(&T) -> Value>(x: &Option<T>, f: F) -> Value {
    match x {
        Some(v) => f(v),
        None => Value::Null,
    }
}

/// The JSON value of the bare expression (no schema envelope). Keys are
/// emitted in sorted order, so the string form is canonical.
pub fn emit_json_value(e: &CoeffExpr) -> Value {
    match e {
        CoeffExpr::Leaf(d) => json!({
            "node": "leaf",
            "s": vec_json(&d.s),
            "phi": covec_json(&d.phi),
            "phi_prime": opt(&d.phi_prime, covec_json),
            "r_space": opt(&d.r_space, subspace_json),
            "tags": d.tags.iter().map(|t| Value::String(t.as_str().into())).collect::<Vec<_>>(),
            "note": opt(&d.note, |n| Value::String(n.clone())),
        }),
        CoeffExpr::SumRational { set, body } => json!({
            "node": "sum",
            "set": {
                "label": set.label,
                "space": opt(&set.space, subspace_json),
                "modulo": opt(&set.modulo, subspace_json),
                "punctured": set.punctured,
                "shifts": opt(&set.shifts, |s| Value::String(s.as_str().into())),
            },
            "body": emit_json_value(body),
        }),
        CoeffExpr::IntCompact { space, body } => json!({
            "node": "int-compact",
            "space": space_ref_json(space),
            "body": emit_json_value(body),
        }),
        CoeffExpr::IntAdelic { space, body } => json!({
            "node": "int-adelic",
            "space": space_ref_json(space),
            "body": emit_json_value(body),
        }),
        CoeffExpr::Translate { word, body } => json!({
            "node": "translate",
            "word": word,
            "body": emit_json_value(body),
        }),
        CoeffExpr::Combine(parts) => json!({
            "node": "combine",
            "parts": parts.iter().map(emit_json_value).collect::<Vec<_>>(),
        }),
    }
}

fn space_ref_json(s: &SpaceRef) -> Value {
    json!({
        "label": s.label,
        "space": subspace_json(&s.space),
        "modulo": opt(&s.modulo, subspace_json),
    })
}

/// Serialize with the schema envelope, pretty-printed.
pub fn emit_json(e: &CoeffExpr) -> String {
    let v = json!({ "schema": SCHEMA, "expr": emit_json_value(e) });
    serde_json::to_string_pretty(&v).expect("serialization cannot fail")
}

// ---------------------------------------------------------------------------
// JSON parsing (exact inverse of the emitter)
// ---------------------------------------------------------------------------

fn bad(msg: &str) -> Error {
    Error::Io(format!("malformed coeffexpr JSON: {msg}"))
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(&format!("{what} is not an object")))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| bad(&format!("missing field `{key}`")))
}

fn parse_rat_v(v: &Value) -> Result<Rat> {
    let s = v.as_str().ok_or_else(|| bad("rational is not a string"))?;
    rat_parse(s)
}

fn parse_vec(v: &Value) -> Result<Vec<Rat>> {
    let arr = v.as_array().ok_or_else(|| bad("vector is not an array"))?;
    arr.iter().map(parse_rat_v).collect()
}

fn parse_subspace(v: &Value) -> Result<Subspace> {
    let m = as_obj(v, "subspace")?;
    let ambient = get(m, "ambient")?
        .as_u64()
        .ok_or_else(|| bad("ambient is not an integer"))? as usize;
    let basis = get(m, "basis")?
        .as_array()
        .ok_or_else(|| bad("basis is not an array"))?
        .iter()
        .map(parse_vec)
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows(ambient, basis))
}

fn parse_opt<T, F: Fn(&Value) -> Result<T>>(v: &Value, f: F) -> Result<Option<T>> {
    if v.is_null() {
        Ok(None)
    } else {
        Ok(Some(f(v)?))
    }
}

fn parse_expr(v: &Value) -> Result<CoeffExpr> {
    let m = as_obj(v, "expression")?;
    let node = get(m, "node")?.as_str().ok_or_else(|| bad("node is not a string"))?;
    match node {
        "leaf" => {
            let s = parse_vec(get(m, "s")?)?;
            let phi = Covec(parse_vec(get(m, "phi")?)?);
            let phi_prime = parse_opt(get(m, "phi_prime")?, |v| Ok(Covec(parse_vec(v)?)))?;
            let r_space = parse_opt(get(m, "r_space")?, parse_subspace)?;
            let tags = get(m, "tags")?
                .as_array()
                .ok_or_else(|| bad("tags is not an array"))?
                .iter()
                .map(|t| {
                    t.as_str()
                        .and_then(HypTag::parse)
                        .ok_or_else(|| bad("unknown hypothesis tag"))
                })
                .collect::<Result<_>>()?;
            let note = parse_opt(get(m, "note")?, |v| {
                v.as_str().map(String::from).ok_or_else(|| bad("note is not a string"))
            })?;
            Ok(CoeffExpr::Leaf(LeafData { s, phi, phi_prime, r_space, tags, note }))
        }
        "sum" => {
            let sm = as_obj(get(m, "set")?, "set descriptor")?;
            let set = SetDescriptor {
                label: get(sm, "label")?
                    .as_str()
                    .ok_or_else(|| bad("label is not a string"))?
                    .to_string(),
                space: parse_opt(get(sm, "space")?, parse_subspace)?,
                modulo: parse_opt(get(sm, "modulo")?, parse_subspace)?,
                punctured: get(sm, "punctured")?
                    .as_bool()
                    .ok_or_else(|| bad("punctured is not a bool"))?,
                shifts: parse_opt(get(sm, "shifts")?, |v| {
                    v.as_str()
                        .and_then(ShiftSlot::parse)
                        .ok_or_else(|| bad("unknown shift slot"))
                })?,
            };
            Ok(CoeffExpr::SumRational { set, body: Box::new(parse_expr(get(m, "body")?)?) })
        }
        "int-compact" | "int-adelic" => {
            let sm = as_obj(get(m, "space")?, "space reference")?;
            let space = SpaceRef {
                label: get(sm, "label")?
                    .as_str()
                    .ok_or_else(|| bad("label is not a string"))?
                    .to_string(),
                space: parse_subspace(get(sm, "space")?)?,
                modulo: parse_opt(get(sm, "modulo")?, parse_subspace)?,
            };
            let body = Box::new(parse_expr(get(m, "body")?)?);
            Ok(if node == "int-compact" {
                CoeffExpr::IntCompact { space, body }
            } else {
                CoeffExpr::IntAdelic { space, body }
            })
        }
        "translate" => {
            let word = get(m, "word")?
                .as_array()
                .ok_or_else(|| bad("word is not an array"))?
                .iter()
                .map(|w| {
                    w.as_str().map(String::from).ok_or_else(|| bad("word entry is not a string"))
                })
                .collect::<Result<_>>()?;
            Ok(CoeffExpr::Translate { word, body: Box::new(parse_expr(get(m, "body")?)?) })
        }
        "combine" => {
            let parts = get(m, "parts")?
                .as_array()
                .ok_or_else(|| bad("parts is not an array"))?
                .iter()
                .map(parse_expr)
                .collect::<Result<_>>()?;
            Ok(CoeffExpr::Combine(parts))
        }
        other => Err(bad(&format!("unknown node kind `{other}`"))),
    }
}

/// Parse a serialized expression, checking the schema version.
pub fn parse_json(s: &str) -> Result<CoeffExpr> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(&e.to_string()))?;
    let m = as_obj(&v, "document")?;
    let schema = get(m, "schema")?.as_str().ok_or_else(|| bad("schema is not a string"))?;
    if schema != SCHEMA {
        return Err(bad(&format!("unsupported schema `{schema}` (expected `{SCHEMA}`)")));
    }
    parse_expr(get(m, "expr")?)
}
