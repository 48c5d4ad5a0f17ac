//! Stable JSON formats for modules, subgroups, pairs and class vectors.
//!
//! Class vectors are 0-based over `Z/r`: slot `i` of `a` counts `L₁ⁱ`, slot `i`
//! of `b` counts `L₂ⁱ` (so `Φ(F_p) = L₁⁰ ⊕ L₂¹` is `a = [1,0,…], b = [0,1,…]`).

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::chainring::{ChainMatrix, RingCtx};
use crate::error::{Error, Result};
use crate::group::{Family, GroupModel, MetacyclicParams, Subgroup};
use crate::lambda::LambdaModule;
use crate::lattice::{ClassVector, PeClassVector};

fn matrix_rows(m: &ChainMatrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

pub fn module_to_json(m: &LambdaModule) -> Result<Value> {
    let st = *m.group().require_structure()?;
    let mut action = Map::new();
    for (name, a) in st.family.generator_names().iter().zip(m.actions()) {
        action.insert((*name).to_string(), json!(matrix_rows(a)));
    }
    Ok(json!({
        "p": st.params.p,
        "r": st.params.r,
        "s": st.params.s,
        "k": m.precision(),
        "group": st.family.name(),
        "rank": m.rank(),
        "relations": matrix_rows(m.relations()),
        "action": action,
    }))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::schema(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::schema(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn u64_list(v: &Value, path: &str) -> Result<Vec<u64>> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| as_u64(x, &format!("{path}[{i}]"))).collect()
}

/// Row-major integer matrix with `rows` rows; entries may be negative and are reduced.
fn parse_matrix(v: &Value, path: &str, ctx: RingCtx, rows: usize, cols: Option<usize>) -> Result<ChainMatrix> {
    let arr = as_array(v, path)?;
    if arr.is_empty() && cols == Some(0) || arr.is_empty() && cols.is_none() && rows > 0 {
        return Ok(ChainMatrix::zeros(ctx, rows, 0));
    }
    if arr.len() != rows {
        return Err(Error::schema(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data: Vec<Vec<u64>> = Vec::with_capacity(rows);
    for (i, row) in arr.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = as_array(row, &rp)?;
        let want = cols.unwrap_or_else(|| data.first().map_or(row.len(), |r| r.len()));
        if row.len() != want {
            return Err(Error::schema(rp, format!("expected {want} entries, found {}", row.len())));
        }
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let x = x.as_i64().ok_or_else(|| Error::schema(format!("{rp}[{j}]"), "expected an integer"))?;
            out.push(ctx.reduce_i64(x));
        }
        data.push(out);
    }
    let c = data.first().map_or(0, |r| r.len());
    Ok(ChainMatrix::from_fn(ctx, rows, c, |i, j| data[i][j]))
}

fn params_from(obj: &Map<String, Value>, path: &str) -> Result<MetacyclicParams> {
    let p = as_u64(field(obj, path, "p")?, &join(path, "p"))?;
    let r = as_u64(field(obj, path, "r")?, &join(path, "r"))?;
    match obj.get("s") {
        Some(s) => MetacyclicParams::new(p, r, as_u64(s, &join(path, "s"))?),
        None => MetacyclicParams::with_default_s(p, r),
    }
}

pub fn module_from_json(text: &str) -> Result<LambdaModule> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
    module_from_value(&v)
}

pub fn module_from_value(v: &Value) -> Result<LambdaModule> {
    let obj = as_object(v, "$")?;
    let params = params_from(obj, "")?;
    let k = as_u64(field(obj, "", "k")?, "k")?;
    let k = u32::try_from(k).map_err(|_| Error::schema("k", "too large"))?;
    let ctx = RingCtx::new(params.p, k)?;
    let name = field(obj, "", "group")?.as_str().ok_or_else(|| Error::schema("group", "expected a string"))?;
    let family = Family::parse(name).ok_or_else(|| Error::schema("group", format!("unknown group {name:?}")))?;
    let rank = as_u64(field(obj, "", "rank")?, "rank")? as usize;
    let relations = parse_matrix(field(obj, "", "relations")?, "relations", ctx, rank, None)?;
    let action = as_object(field(obj, "", "action")?, "action")?;
    let mut actions = Vec::new();
    for name in family.generator_names() {
        let path = format!("action.{name}");
        let m = action.get(*name).ok_or_else(|| Error::schema(&path, "missing field"))?;
        actions.push(parse_matrix(m, &path, ctx, rank, Some(rank))?);
    }
    if let Some(extra) = action.keys().find(|k| !family.generator_names().contains(&k.as_str())) {
        return Err(Error::schema(format!("action.{extra}"), format!("not a generator of {}", family.name())));
    }
    LambdaModule::new(Arc::new(GroupModel::make(family, params)), relations, actions)
}

pub fn subgroup_to_json(g: &GroupModel, h: &Subgroup) -> Result<Value> {
    let st = *g.require_structure()?;
    let elements: Vec<[u64; 3]> = h
        .elements()
        .iter()
        .map(|&x| {
            let (a, b, c) = st.label(x);
            [a, b, c]
        })
        .collect();
    Ok(json!({ "p": st.params.p, "r": st.params.r, "s": st.params.s, "elements": elements }))
}

fn subgroup_from_value(g: &GroupModel, v: &Value, path: &str) -> Result<Subgroup> {
    let obj = as_object(v, path)?;
    let params = params_from(obj, path)?;
    if Some(params) != g.params() {
        return Err(Error::schema(path, "parameters differ from the first subgroup"));
    }
    let els = as_array(field(obj, path, "elements")?, &join(path, "elements"))?;
    let mut idx = Vec::with_capacity(els.len());
    for (i, e) in els.iter().enumerate() {
        let ep = format!("{}[{i}]", join(path, "elements"));
        let abc = u64_list(e, &ep)?;
        if abc.len() != 3 {
            return Err(Error::schema(ep, "expected [a, b, c]"));
        }
        idx.push(g.element(abc[0], abc[1], abc[2])?);
    }
    Subgroup::from_elements(g, &idx).map_err(|e| Error::schema(path, e.to_string()))
}

/// Pairs file: `[{"D": subgroup, "I": subgroup}, …]`, all inside `Γ × ⟨j⟩`.
pub fn pairs_from_json(text: &str) -> Result<(GroupModel, Vec<(Subgroup, Subgroup)>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
    let arr = as_array(&v, "$")?;
    let first = arr.first().ok_or_else(|| Error::schema("$", "no pairs given"))?;
    let d0 = as_object(field(as_object(first, "[0]")?, "[0]", "D")?, "[0].D")?;
    let g = GroupModel::make(Family::G, params_from(d0, "[0].D")?);
    let mut out = Vec::new();
    for (i, item) in arr.iter().enumerate() {
        let path = format!("[{i}]");
        let obj = as_object(item, &path)?;
        let d = subgroup_from_value(&g, field(obj, &path, "D")?, &join(&path, "D"))?;
        let ii = subgroup_from_value(&g, field(obj, &path, "I")?, &join(&path, "I"))?;
        out.push((d, ii));
    }
    Ok((g, out))
}

pub fn pairs_to_json(g: &GroupModel, pairs: &[(Subgroup, Subgroup)]) -> Result<Value> {
    pairs
        .iter()
        .map(|(d, i)| Ok(json!({ "D": subgroup_to_json(g, d)?, "I": subgroup_to_json(g, i)? })))
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

pub fn class_vector_to_json(v: &ClassVector) -> Value {
    json!({ "r": v.r, "a": v.a, "b": v.b, "c": v.c })
}

pub fn pe_vector_to_json(v: &PeClassVector) -> Value {
    json!({ "r": v.r, "a": v.a, "b": v.b })
}

/// Reads `{"r", "a", "b"}`; a `c` field is accepted and dropped.
pub fn pe_vector_from_json(text: &str) -> Result<PeClassVector> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
    let obj = as_object(&v, "$")?;
    let r = as_u64(field(obj, "", "r")?, "r")? as usize;
    let a = u64_list(field(obj, "", "a")?, "a")?;
    let b = u64_list(field(obj, "", "b")?, "b")?;
    for (name, xs) in [("a", &a), ("b", &b)] {
        if xs.len() != r {
            return Err(Error::schema(name, format!("expected {r} entries, found {}", xs.len())));
        }
    }
    let conv = |xs: Vec<u64>| xs.into_iter().map(|x| x as usize).collect();
    PeClassVector::new(conv(a), conv(b))
}
