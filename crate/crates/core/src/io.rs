//! JSON file formats for algebras, modules, linear and bilinear maps.
//!
//! Rationals are written as `"n/d"` strings (plain `"n"` for integers) and
//! residues as JSON integers. Reading accepts either form for both fields.
//! Parse errors name the offending entry, e.g. `table[1][0][2]`.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::JordanAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::maps::{BilinearMap, LinearMap};
use crate::module::JModule;

/// A catalog entry recorded in an algebra file, used for claim annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogTag {
    pub name: String,
    pub params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: JordanAlgebra,
    pub catalog: Option<CatalogTag>,
}

fn perr(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Fp(r) => json!(r.value()),
        Scalar::Q(_) => Value::String(x.to_string()),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn field_to_json(field: FieldSpec) -> Value {
    match field.modulus() {
        None => json!({ "kind": "rational" }),
        Some(p) => json!({ "kind": "prime", "p": p }),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

fn object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(loc, "expected an object"))
}

fn member<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(join(loc, key), "missing"))
}

fn join(loc: &str, key: &str) -> String {
    if loc.is_empty() {
        key.to_string()
    } else {
        format!("{loc}.{key}")
    }
}

fn array<'a>(v: &'a Value, loc: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| perr(loc, "expected an array"))?;
    match len {
        Some(n) if a.len() != n => Err(perr(loc, format!("expected {n} entries, found {}", a.len()))),
        _ => Ok(a),
    }
}

fn count(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| perr(loc, "expected a non-negative integer"))
}

pub fn parse_field(v: &Value, loc: &str) -> Result<FieldSpec> {
    let obj = object(v, loc)?;
    let kind = member(obj, "kind", loc)?;
    match kind.as_str() {
        Some("rational") => Ok(FieldSpec::rational()),
        Some("prime") => {
            let ploc = join(loc, "p");
            let p = member(obj, "p", loc)?
                .as_u64()
                .ok_or_else(|| perr(&ploc, "expected a positive integer"))?;
            FieldSpec::prime(p).map_err(|e| perr(ploc, e.to_string()))
        }
        _ => Err(perr(join(loc, "kind"), "expected \"rational\" or \"prime\"")),
    }
}

fn parse_scalar(field: FieldSpec, v: &Value, loc: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(perr(loc, "expected an integer or a \"n/d\" string")),
    };
    field.parse_scalar(&text).map_err(|e| perr(loc, e.to_string()))
}

fn parse_vector(field: FieldSpec, v: &Value, loc: &str, len: usize) -> Result<Vec<Scalar>> {
    array(v, loc, Some(len))?
        .iter()
        .enumerate()
        .map(|(k, x)| parse_scalar(field, x, &format!("{loc}[{k}]")))
        .collect()
}

/// A `rows x cols` array of length-`len` vectors.
fn parse_tensor(field: FieldSpec, v: &Value, loc: &str, rows: usize, cols: usize, len: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
    array(v, loc, Some(rows))?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rloc = format!("{loc}[{i}]");
            array(row, &rloc, Some(cols))?
                .iter()
                .enumerate()
                .map(|(j, x)| parse_vector(field, x, &format!("{rloc}[{j}]"), len))
                .collect()
        })
        .collect()
}

fn tensor_to_json(t: &[Vec<Vec<Scalar>>]) -> Value {
    Value::Array(
        t.iter()
            .map(|row| Value::Array(row.iter().map(|v| vector_to_json(v)).collect()))
            .collect(),
    )
}

/// Reads an algebra file without requiring commutativity, so the verifier
/// can report on any table.
pub fn parse_algebra_unchecked(text: &str) -> Result<AlgebraFile> {
    let root = parse_json(text)?;
    let obj = object(&root, "")?;
    let field = parse_field(member(obj, "field", "")?, "field")?;
    let dim = count(member(obj, "dim", "")?, "dim")?;
    let labels = array(member(obj, "basis", "")?, "basis", Some(dim))?
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| perr(format!("basis[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = parse_tensor(field, member(obj, "table", "")?, "table", dim, dim, dim)?;
    let catalog = match obj.get("catalog") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let cobj = object(c, "catalog")?;
            let name = member(cobj, "name", "catalog")?
                .as_str()
                .ok_or_else(|| perr("catalog.name", "expected a string"))?
                .to_string();
            let params = match cobj.get("params") {
                None => Vec::new(),
                Some(p) => array(p, "catalog.params", None)?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        _ => Err(perr(format!("catalog.params[{i}]"), "expected a string or number")),
                    })
                    .collect::<Result<_>>()?,
            };
            Some(CatalogTag { name, params })
        }
    };
    Ok(AlgebraFile {
        algebra: JordanAlgebra::from_raw(field, labels, table)?,
        catalog,
    })
}

/// Reads an algebra file, rejecting tables that are not commutative.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let file = parse_algebra_unchecked(text)?;
    if let Some((i, j, k)) = file.algebra.commutativity_defect() {
        return Err(Error::NotCommutative { i, j, k });
    }
    Ok(file)
}

pub fn algebra_to_json(j: &JordanAlgebra, catalog: Option<&CatalogTag>) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(j.field()));
    obj.insert("dim".into(), json!(j.dim()));
    obj.insert("basis".into(), json!(j.labels()));
    obj.insert("table".into(), tensor_to_json(&j.table()));
    if let Some(c) = catalog {
        obj.insert("catalog".into(), json!({ "name": c.name, "params": c.params }));
    }
    Value::Object(obj)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `{field, source_dim, target_dim, matrix}` where row `i` of `matrix` is
/// the image of basis vector `i`.
pub fn parse_linear_map(text: &str) -> Result<LinearMap> {
    let root = parse_json(text)?;
    let obj = object(&root, "")?;
    let field = parse_field(member(obj, "field", "")?, "field")?;
    let n = count(member(obj, "source_dim", "")?, "source_dim")?;
    let m = count(member(obj, "target_dim", "")?, "target_dim")?;
    let images = array(member(obj, "matrix", "")?, "matrix", Some(n))?
        .iter()
        .enumerate()
        .map(|(i, row)| parse_vector(field, row, &format!("matrix[{i}]"), m))
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_images(field, n, m, images)
}

pub fn linear_map_to_json(f: &LinearMap) -> Value {
    json!({
        "field": field_to_json(f.field()),
        "source_dim": f.source_dim(),
        "target_dim": f.target_dim(),
        "matrix": f.images().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
    })
}

/// `{field, dim, codim, table}` with `table[i][j]` the coordinates of
/// `d(e_i, e_j)`.
pub fn parse_bilinear_map(text: &str) -> Result<BilinearMap> {
    let root = parse_json(text)?;
    let obj = object(&root, "")?;
    let field = parse_field(member(obj, "field", "")?, "field")?;
    let n = count(member(obj, "dim", "")?, "dim")?;
    let m = count(member(obj, "codim", "")?, "codim")?;
    let table = parse_tensor(field, member(obj, "table", "")?, "table", n, n, m)?;
    BilinearMap::from_table(field, n, m, table)
}

pub fn bilinear_map_to_json(d: &BilinearMap) -> Value {
    json!({
        "field": field_to_json(d.field()),
        "dim": d.dim(),
        "codim": d.codim(),
        "table": tensor_to_json(&d.table()),
    })
}

/// `{field, algebra_dim, dim, action}` with `action[a][x]` the coordinates
/// of `e_a . v_x`.
pub fn parse_module(text: &str) -> Result<JModule> {
    let root = parse_json(text)?;
    let obj = object(&root, "")?;
    let field = parse_field(member(obj, "field", "")?, "field")?;
    let n = count(member(obj, "algebra_dim", "")?, "algebra_dim")?;
    let m = count(member(obj, "dim", "")?, "dim")?;
    let table = parse_tensor(field, member(obj, "action", "")?, "action", n, m, m)?;
    JModule::new(field, n, m, table)
}

pub fn module_to_json(m: &JModule) -> Value {
    json!({
        "field": field_to_json(m.field()),
        "algebra_dim": m.algebra_dim(),
        "dim": m.dim(),
        "action": tensor_to_json(&m.table()),
    })
}

/// Reads a file and runs `parse` on it, prefixing parse locations with the
/// path.
pub fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}
