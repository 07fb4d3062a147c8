use thiserror::Error;

use super::{CabinetModel, ParamValue, PrimitiveInstance};
use crate::catalog::{ParamKind, PrimitiveCatalog};
use crate::yaml;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("a cabinet model needs at least one primitive instance")]
    EmptyModel,
}

/// Renders a value on the 0.1 grid with minimal digits: `300`, `1500.5`,
/// `-0.5`. Never uses exponent notation.
pub fn format_decimal(v: f64) -> String {
    let tenths = (v * 10.0).round();
    if tenths.abs() >= 9.0e15 {
        // beyond exact integer range; no fractional digit can survive anyway
        return format!("{:.0}", v);
    }
    let tenths = tenths as i64;
    let sign = if tenths < 0 { "-" } else { "" };
    let abs = tenths.unsigned_abs();
    let (whole, frac) = (abs / 10, abs % 10);
    if frac == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Reals of keys the catalog does not know keep a decimal point, so they
/// parse back as reals instead of integers.
fn format_real(v: f64, known_length: bool) -> String {
    let s = format_decimal(v);
    if known_length || s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

fn python_string(s: &str) -> String {
    // the Python and YAML double-quoted escapes used here coincide
    yaml::double_quoted(s)
}

fn is_python_bare(token: &str) -> bool {
    let mut chars = token.chars();
    let ident = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    ident || token_is_integer(token)
}

fn token_is_integer(token: &str) -> bool {
    matches!(super::parse_number(token), Some(super::Literal::Int(i)) if i.to_string() == token)
}

fn is_length(catalog: &PrimitiveCatalog, inst: &PrimitiveInstance, key: &str) -> bool {
    catalog
        .get(&inst.model_id)
        .and_then(|s| s.param(key))
        .is_some_and(|p| p.kind == ParamKind::LengthMm)
}

fn python_value(value: &ParamValue, known_length: bool) -> String {
    match value {
        ParamValue::Int(i) => i.to_string(),
        ParamValue::Real(r) => format_real(*r, known_length),
        ParamValue::Enum(t) if is_python_bare(t) => t.clone(),
        ParamValue::Enum(t) | ParamValue::Text(t) => python_string(t),
    }
}

fn yaml_value(value: &ParamValue, known_length: bool) -> String {
    match value {
        ParamValue::Int(i) => i.to_string(),
        ParamValue::Real(r) => format_real(*r, known_length),
        ParamValue::Enum(t) if token_is_integer(t) => t.clone(),
        ParamValue::Enum(t) => yaml::string_scalar(t),
        ParamValue::Text(t) => yaml::double_quoted(t),
    }
}

fn triple(v: [f64; 3]) -> [String; 3] {
    v.map(format_decimal)
}

/// Python-style program: two statements per primitive,
///
/// ```text
/// box_0 = Box(position=(300, 200, 1000), size=(600, 400, 2000), rotation=0)
/// model_0 = Model(id="M-BB01", box=box_0, N=2, NKA=298, NKB=298, DBXX=1)
/// ```
pub fn emit_python(model: &CabinetModel, catalog: &PrimitiveCatalog) -> Result<String, EmitError> {
    if model.is_empty() {
        return Err(EmitError::EmptyModel);
    }
    let mut out = String::new();
    for (k, inst) in model.instances.iter().enumerate() {
        let [x, y, z] = triple(inst.bbox.position());
        let [sx, sy, sz] = triple(inst.bbox.size());
        let r = format_decimal(inst.bbox.rotation_deg());
        out.push_str(&format!(
            "box_{k} = Box(position=({x}, {y}, {z}), size=({sx}, {sy}, {sz}), rotation={r})\n"
        ));
        out.push_str(&format!("model_{k} = Model(id={}", python_string(&inst.model_id)));
        if let Some(name) = &inst.name {
            out.push_str(&format!(", name={}", python_string(name)));
        }
        out.push_str(&format!(", box=box_{k}"));
        for (key, value) in inst.params.iter() {
            out.push_str(&format!(", {key}={}", python_value(value, is_length(catalog, inst, key))));
        }
        out.push_str(")\n");
    }
    Ok(out)
}

/// YAML program with fixed field order `id, name, position, size, rotation,
/// params`; vectors are block sequences.
pub fn emit_yaml(model: &CabinetModel, catalog: &PrimitiveCatalog) -> Result<String, EmitError> {
    if model.is_empty() {
        return Err(EmitError::EmptyModel);
    }
    let mut out = String::from("cabinet:\n");
    for inst in &model.instances {
        out.push_str(&format!("  - id: {}\n", yaml::string_scalar(&inst.model_id)));
        if let Some(name) = &inst.name {
            out.push_str(&format!("    name: {}\n", yaml::string_scalar(name)));
        }
        for (label, v) in [("position", inst.bbox.position()), ("size", inst.bbox.size())] {
            out.push_str(&format!("    {label}:\n"));
            for c in triple(v) {
                out.push_str(&format!("      - {c}\n"));
            }
        }
        out.push_str(&format!("    rotation: {}\n", format_decimal(inst.bbox.rotation_deg())));
        if !inst.params.is_empty() {
            out.push_str("    params:\n");
            for (key, value) in inst.params.iter() {
                out.push_str(&format!("      {key}: {}\n", yaml_value(value, is_length(catalog, inst, key))));
            }
        }
    }
    Ok(out)
}
