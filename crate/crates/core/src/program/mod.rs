//! Shape-program model and its two text syntaxes.
//!
//! Lengths are millimeters and live on a 0.1 mm grid; rotations are degrees
//! about the vertical axis, on a 0.1 degree grid and canonicalized to
//! `[0, 360)`. Keeping every value on that grid is what lets emission use at
//! most one decimal place while parse(emit(m)) stays field-exact.

mod emit;
mod python;
mod validate;
mod yaml_format;

use std::fmt;

use thiserror::Error;

use crate::catalog::{ParamKind, ParamSchema, PrimitiveCatalog};
use crate::diag::{Code, Diagnostic, Diagnostics, SourceSpan};
use crate::geometry;
use crate::yaml::Scalar;

pub use emit::{emit_python, emit_yaml, format_decimal, EmitError};
pub use python::parse_python;
pub use validate::{validate, OCTANT_EPSILON_MM};
pub use yaml_format::parse_yaml;

/// Rounds to the 0.1 grid shared by all lengths and angles.
pub fn snap_tenth(v: f64) -> f64 {
    let r = (v * 10.0).round() / 10.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Canonical angle in `[0, 360)` on the 0.1 degree grid.
pub fn canonical_degrees(deg: f64) -> f64 {
    let r = snap_tenth(snap_tenth(deg).rem_euclid(360.0));
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxError {
    #[error("box values must be finite")]
    NonFinite,
    #[error("box size along {axis} must be > 0 (got {value})")]
    NonPositiveSize { axis: char, value: f64 },
}

/// Box of a primitive instance: center, extents along the local axes and a
/// rotation about the world z axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedBox {
    position: [f64; 3],
    size: [f64; 3],
    rotation_deg: f64,
}

impl OrientedBox {
    pub fn new(position: [f64; 3], size: [f64; 3], rotation_deg: f64) -> Result<Self, BoxError> {
        if position.iter().chain(size.iter()).any(|v| !v.is_finite()) || !rotation_deg.is_finite() {
            return Err(BoxError::NonFinite);
        }
        let position = position.map(snap_tenth);
        let size = size.map(snap_tenth);
        for (axis, value) in ['x', 'y', 'z'].into_iter().zip(size) {
            if value <= 0.0 {
                return Err(BoxError::NonPositiveSize { axis, value });
            }
        }
        Ok(OrientedBox {
            position,
            size,
            rotation_deg: canonical_degrees(rotation_deg),
        })
    }

    /// Axis-aligned box spanning `min..max`.
    pub fn from_min_max(min: [f64; 3], max: [f64; 3]) -> Result<Self, BoxError> {
        let position = [0, 1, 2].map(|i| (min[i] + max[i]) / 2.0);
        let size = [0, 1, 2].map(|i| max[i] - min[i]);
        Self::new(position, size, 0.0)
    }

    pub fn position(&self) -> [f64; 3] {
        self.position
    }

    pub fn size(&self) -> [f64; 3] {
        self.size
    }

    pub fn rotation_deg(&self) -> f64 {
        self.rotation_deg
    }

    pub fn volume(&self) -> f64 {
        self.size.iter().product()
    }

    pub fn translated(&self, v: [f64; 3]) -> Result<Self, BoxError> {
        Self::new([0, 1, 2].map(|i| self.position[i] + v[i]), self.size, self.rotation_deg)
    }
}

/// Value of one model-specific parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    /// Real number, millimeters for length parameters, on the 0.1 grid.
    Real(f64),
    /// Enumeration token; must belong to the schema's declared members.
    Enum(String),
    Text(String),
}

impl ParamValue {
    pub fn real(v: f64) -> Self {
        ParamValue::Real(snap_tenth(v))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ParamValue::Int(_) => "integer",
            ParamValue::Real(_) => "real",
            ParamValue::Enum(_) => "enumeration",
            ParamValue::Text(_) => "text",
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ParamValue::Int(i) => Some(*i as f64),
            ParamValue::Real(r) => Some(*r),
            _ => None,
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Real(r) => f.write_str(&format_decimal(*r)),
            ParamValue::Enum(t) => f.write_str(t),
            ParamValue::Text(t) => write!(f, "{t:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("duplicate parameter key `{0}`")]
pub struct DuplicateKey(pub String);

/// Ordered, key-unique parameter map. Equality is order-sensitive.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn insert(&mut self, key: impl Into<String>, value: ParamValue) -> Result<(), DuplicateKey> {
        let key = key.into();
        if self.get(&key).is_some() {
            return Err(DuplicateKey(key));
        }
        self.0.push((key, value));
        Ok(())
    }

    /// Replaces an existing value or appends a new key.
    pub fn set(&mut self, key: &str, value: ParamValue) {
        match self.0.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.0.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn remove(&mut self, key: &str) -> Option<ParamValue> {
        let i = self.0.iter().position(|(k, _)| k == key)?;
        Some(self.0.remove(i).1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, ParamValue)> for Params {
    /// Later duplicates overwrite earlier values in place.
    fn from_iter<T: IntoIterator<Item = (String, ParamValue)>>(iter: T) -> Self {
        let mut params = Params::new();
        for (k, v) in iter {
            params.set(&k, v);
        }
        params
    }
}

/// One catalog model placed in space.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveInstance {
    pub model_id: String,
    pub name: Option<String>,
    pub bbox: OrientedBox,
    pub params: Params,
}

impl PrimitiveInstance {
    pub fn new(model_id: impl Into<String>, bbox: OrientedBox) -> Self {
        PrimitiveInstance {
            model_id: model_id.into(),
            name: None,
            bbox,
            params: Params::new(),
        }
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }
}

/// Ordered list of primitive instances: the unit of parsing, rendering and
/// evaluation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CabinetModel {
    pub instances: Vec<PrimitiveInstance>,
}

impl CabinetModel {
    pub fn new(instances: Vec<PrimitiveInstance>) -> Self {
        CabinetModel { instances }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// World-frame axis-aligned bounds; `None` for an empty model.
    pub fn aabb(&self) -> Option<([f64; 3], [f64; 3])> {
        geometry::model_aabb(self)
    }
}

/// Result of a successful parse: the model plus non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub model: CabinetModel,
    pub warnings: Vec<Diagnostic>,
}

/// Parse failure: every error found, plus warnings.
pub type ParseResult = Result<Parsed, Diagnostics>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syntax {
    Python,
    Yaml,
}

impl Syntax {
    /// Guesses the syntax from a file extension.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "py" | "prf" => Some(Syntax::Python),
            "yaml" | "yml" => Some(Syntax::Yaml),
            _ => None,
        }
    }

    /// Guesses from content: YAML programs start with a `cabinet:` key.
    pub fn sniff(text: &str) -> Self {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && *l != "---");
        match first {
            Some(l) if l.starts_with("cabinet:") => Syntax::Yaml,
            _ => Syntax::Python,
        }
    }
}

pub fn parse(text: &str, syntax: Syntax, catalog: &PrimitiveCatalog, strict: bool) -> ParseResult {
    match syntax {
        Syntax::Python => parse_python(text, catalog, strict),
        Syntax::Yaml => parse_yaml(text, catalog, strict),
    }
}

pub fn emit(model: &CabinetModel, syntax: Syntax, catalog: &PrimitiveCatalog) -> Result<String, EmitError> {
    match syntax {
        Syntax::Python => emit_python(model, catalog),
        Syntax::Yaml => emit_yaml(model, catalog),
    }
}

/// Literal as written in either syntax, before schema-directed typing.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Literal {
    Int(i64),
    /// Decimal literal and its count of fractional digits.
    Decimal(f64, usize),
    /// Bare token (identifier in Python, unquoted non-numeric YAML scalar).
    Bare(String),
    Str(String),
}

impl Literal {
    fn describe(&self) -> &'static str {
        match self {
            Literal::Int(_) => "integer literal",
            Literal::Decimal(..) => "decimal literal",
            Literal::Bare(_) => "bare token",
            Literal::Str(_) => "string literal",
        }
    }

    pub(crate) fn as_number(&self) -> Option<(f64, usize)> {
        match self {
            Literal::Int(i) => Some((*i as f64, 0)),
            Literal::Decimal(v, d) => Some((*v, *d)),
            _ => None,
        }
    }
}

/// Classifies an unquoted numeric token: `-?\d+` or `-?\d+\.\d+`.
pub(crate) fn parse_number(text: &str) -> Option<Literal> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    let (int_part, frac) = match digits.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (digits, None),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match frac {
        None => match text.parse::<i64>() {
            Ok(i) => Some(Literal::Int(i)),
            Err(_) => {
                let v: f64 = text.parse().ok()?;
                v.is_finite().then_some(Literal::Decimal(v, 0))
            }
        },
        Some(f) if !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()) => {
            let v: f64 = text.parse().ok()?;
            v.is_finite().then_some(Literal::Decimal(v, f.len()))
        }
        Some(_) => None,
    }
}

pub(crate) fn parse_number_f64(text: &str) -> Option<f64> {
    parse_number(text).and_then(|l| l.as_number()).map(|(v, _)| v)
}

pub(crate) fn literal_from_scalar(s: &Scalar) -> Literal {
    if s.is_quoted() {
        Literal::Str(s.text.clone())
    } else {
        parse_number(&s.text).unwrap_or_else(|| Literal::Bare(s.text.clone()))
    }
}

/// Types a literal without schema guidance.
fn untyped_value(lit: &Literal) -> ParamValue {
    match lit {
        Literal::Int(i) => ParamValue::Int(*i),
        Literal::Decimal(v, _) => ParamValue::real(*v),
        Literal::Bare(t) => ParamValue::Enum(t.clone()),
        Literal::Str(s) => ParamValue::Text(s.clone()),
    }
}

/// Types a literal as directed by its schema; `None` means the literal cannot
/// represent that kind.
pub(crate) fn typed_value(kind: ParamKind, lit: &Literal) -> Option<ParamValue> {
    match (kind, lit) {
        (ParamKind::Integer, Literal::Int(i)) => Some(ParamValue::Int(*i)),
        (ParamKind::LengthMm, Literal::Int(i)) => Some(ParamValue::real(*i as f64)),
        (ParamKind::LengthMm, Literal::Decimal(v, _)) => Some(ParamValue::real(*v)),
        (ParamKind::Enumeration, Literal::Int(i)) => Some(ParamValue::Enum(i.to_string())),
        (ParamKind::Enumeration, Literal::Bare(t) | Literal::Str(t)) => Some(ParamValue::Enum(t.clone())),
        (ParamKind::Text, Literal::Str(s)) => Some(ParamValue::Text(s.clone())),
        _ => None,
    }
}

/// Diagnostic sink that downgrades schema violations to warnings in lenient
/// mode.
pub(crate) struct Sink<'a> {
    pub text: &'a str,
    pub strict: bool,
    pub errors: Vec<Diagnostic>,
    pub warnings: Vec<Diagnostic>,
}

impl<'a> Sink<'a> {
    pub fn new(text: &'a str, strict: bool) -> Self {
        Sink {
            text,
            strict,
            errors: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn span(&self, offset: usize, len: usize) -> SourceSpan {
        SourceSpan::locate(self.text, offset, len)
    }

    pub fn error(&mut self, d: Diagnostic) {
        self.errors.push(d);
    }

    pub fn warn(&mut self, d: Diagnostic) {
        self.warnings.push(Diagnostic {
            severity: crate::diag::Severity::Warning,
            ..d
        });
    }

    /// Error in strict mode, warning otherwise.
    pub fn schema(&mut self, d: Diagnostic) {
        if self.strict {
            self.error(d)
        } else {
            self.warn(d)
        }
    }

    pub fn finish(self, instances: Vec<PrimitiveInstance>) -> ParseResult {
        if self.errors.is_empty() {
            Ok(Parsed {
                model: CabinetModel::new(instances),
                warnings: self.warnings,
            })
        } else {
            let mut all = self.errors;
            all.extend(self.warnings);
            Err(Diagnostics(all))
        }
    }
}

/// A parameter as it appeared in source.
pub(crate) struct RawParam {
    pub key: String,
    pub key_span: SourceSpan,
    pub value: Literal,
    pub value_span: SourceSpan,
}

/// Box values as they appeared in source.
pub(crate) struct RawBox {
    pub position: [(f64, usize); 3],
    pub size: [(f64, usize); 3],
    pub rotation: (f64, usize),
    pub span: SourceSpan,
}

pub(crate) fn build_box(raw: &RawBox, sink: &mut Sink<'_>) -> Option<OrientedBox> {
    let precise = raw
        .position
        .iter()
        .chain(raw.size.iter())
        .chain(std::iter::once(&raw.rotation))
        .all(|(_, digits)| *digits <= 1);
    if !precise {
        sink.warn(
            Diagnostic::warning(Code::Precision, "values are rounded to 0.1 mm / 0.1 degree").with_span(raw.span),
        );
    }
    match OrientedBox::new(raw.position.map(|p| p.0), raw.size.map(|s| s.0), raw.rotation.0) {
        Ok(b) => Some(b),
        Err(e) => {
            let code = match e {
                BoxError::NonFinite => Code::NonFinite,
                BoxError::NonPositiveSize { .. } => Code::NonPositiveSize,
            };
            sink.error(Diagnostic::error(code, e.to_string()).with_span(raw.span));
            None
        }
    }
}

/// Types and checks the parameters of one instance against the catalog.
pub(crate) fn build_params(
    model_id: &str,
    id_span: SourceSpan,
    raw: Vec<RawParam>,
    catalog: &PrimitiveCatalog,
    sink: &mut Sink<'_>,
) -> Params {
    let schema = catalog.get(model_id);
    if schema.is_none() {
        sink.schema(
            Diagnostic::error(Code::UnknownModel, format!("unknown model id `{model_id}`")).with_span(id_span),
        );
    }
    let mut params = Params::new();
    let mut spans: Vec<(String, SourceSpan)> = Vec::new();
    for p in raw {
        let param_schema: Option<&ParamSchema> = schema.and_then(|s| s.param(&p.key));
        let value = match param_schema {
            Some(ps) => match typed_value(ps.kind, &p.value) {
                Some(v) => v,
                None => {
                    sink.schema(
                        Diagnostic::error(
                            Code::ParamType,
                            format!("parameter `{}` expects {}, found {}", p.key, ps.kind, p.value.describe()),
                        )
                        .with_span(p.value_span),
                    );
                    untyped_value(&p.value)
                }
            },
            None => untyped_value(&p.value),
        };
        if params.insert(p.key.clone(), value).is_err() {
            sink.error(
                Diagnostic::error(Code::DuplicateParam, format!("duplicate parameter key `{}`", p.key))
                    .with_span(p.key_span),
            );
        } else {
            spans.push((p.key, p.value_span));
        }
    }
    if let Some(schema) = schema {
        for (key, d) in crate::catalog::param_issues(schema, &params) {
            // type mismatches were already reported against the literal
            if d.code == Code::ParamType {
                continue;
            }
            let span = key
                .and_then(|k| spans.iter().find(|(s, _)| *s == k).map(|(_, span)| *span))
                .unwrap_or(id_span);
            sink.schema(d.with_span(span));
        }
    }
    params
}
