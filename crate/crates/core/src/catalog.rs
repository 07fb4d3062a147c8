//! Primitive model registry and typed model-specific parameter schemas.
//!
//! Catalogs are data files in the restricted YAML subset (see
//! `data/mini_catalog.yaml` for the shipped example):
//!
//! ```text
//! version: <string>
//! divider_thickness: <mm, optional, default 18>
//! catalog:
//!   - id: <model id>
//!     name: <display name>
//!     role: base_box | door | drawer | fixed_shelf | adjustable_shelf | side_panel | other
//!     division:              # optional: divided-space rule
//!       count: <count key>
//!       width_prefix: <width key prefix>
//!     params:                # optional, at most 8 entries
//!       - key: <[A-Z][A-Z0-9]*>
//!         kind: integer | length_mm | enumeration | text
//!         members: [..]      # enumeration domain
//!         range: [min, max]  # numeric domain, inclusive
//!         default: <value>   # optional
//!         description: <text>
//! ```

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diag::{Code, Diagnostic, Diagnostics, SourceSpan};
use crate::program::{format_decimal, literal_from_scalar, typed_value, ParamValue, Params};
use crate::yaml::{self, Node};
use crate::MAX_PARAMS_PER_PRIMITIVE;

pub const DEFAULT_DIVIDER_THICKNESS_MM: f64 = 18.0;

const BUILTIN: &str = include_str!("../data/mini_catalog.yaml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    Integer,
    LengthMm,
    Enumeration,
    Text,
}

impl ParamKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "integer" => ParamKind::Integer,
            "length_mm" => ParamKind::LengthMm,
            "enumeration" => ParamKind::Enumeration,
            "text" => ParamKind::Text,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParamKind::Integer => "integer",
            ParamKind::LengthMm => "length_mm",
            ParamKind::Enumeration => "enumeration",
            ParamKind::Text => "text",
        }
    }
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Members(Vec<String>),
    /// Inclusive numeric range.
    Range { min: f64, max: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSchema {
    pub key: String,
    pub kind: ParamKind,
    pub domain: Option<Domain>,
    pub default: Option<ParamValue>,
    pub description: String,
}

/// What a primitive is, as far as synthesis and annotation care.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    BaseBox,
    Door,
    Drawer,
    FixedShelf,
    AdjustableShelf,
    SidePanel,
    Other,
}

impl Role {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "base_box" => Role::BaseBox,
            "door" => Role::Door,
            "drawer" => Role::Drawer,
            "fixed_shelf" => Role::FixedShelf,
            "adjustable_shelf" => Role::AdjustableShelf,
            "side_panel" => Role::SidePanel,
            "other" => Role::Other,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::BaseBox => "base_box",
            Role::Door => "door",
            Role::Drawer => "drawer",
            Role::FixedShelf => "fixed_shelf",
            Role::AdjustableShelf => "adjustable_shelf",
            Role::SidePanel => "side_panel",
            Role::Other => "other",
        }
    }
}

/// Divided-space rule: the count parameter says how many spaces there are and
/// the widths are `<prefix>A`, `<prefix>B`, ... Widths are either all omitted
/// or exactly the first `count` of them are given.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionRule {
    pub count_key: String,
    pub width_prefix: String,
}

impl DivisionRule {
    pub fn width_key(&self, i: usize) -> String {
        format!("{}{}", self.width_prefix, (b'A' + i as u8) as char)
    }

    /// Index of a width key (`NKC` -> 2), if `key` is one.
    pub fn width_index(&self, key: &str) -> Option<usize> {
        let rest = key.strip_prefix(&self.width_prefix)?;
        let mut chars = rest.chars();
        let c = chars.next()?;
        (chars.next().is_none() && c.is_ascii_uppercase()).then(|| (c as u8 - b'A') as usize)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveSchema {
    pub model_id: String,
    pub name: String,
    pub role: Role,
    pub params: Vec<ParamSchema>,
    pub division: Option<DivisionRule>,
}

impl PrimitiveSchema {
    pub fn param(&self, key: &str) -> Option<&ParamSchema> {
        self.params.iter().find(|p| p.key == key)
    }

    /// Parameters that have defaults, in schema order.
    pub fn defaults(&self) -> Params {
        self.params
            .iter()
            .filter_map(|p| p.default.clone().map(|v| (p.key.clone(), v)))
            .collect()
    }

    fn governed_by_division(&self, key: &str) -> bool {
        self.division.as_ref().is_some_and(|d| d.width_index(key).is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("catalog syntax error:\n{0}")]
    Syntax(Diagnostics),
    #[error("{}:{}: {message}", span.line, span.column)]
    Structure { message: String, span: SourceSpan },
    #[error("duplicate model id `{0}`")]
    DuplicateModelId(String),
    #[error("model `{model_id}` declares {count} parameters (at most {MAX_PARAMS_PER_PRIMITIVE})")]
    TooManyParams { model_id: String, count: usize },
    #[error("model `{model_id}`: default of `{key}` is outside its domain")]
    DefaultOutOfDomain { model_id: String, key: String },
    #[error("model `{model_id}`: invalid parameter key `{key}`")]
    InvalidKey { model_id: String, key: String },
    #[error("model `{model_id}`: duplicate parameter key `{key}`")]
    DuplicateParamKey { model_id: String, key: String },
    #[error("model `{model_id}`: division rule refers to missing or ill-typed parameters")]
    InvalidDivision { model_id: String },
    #[error("catalog declares no primitives")]
    Empty,
}

/// Registry of primitive schemas keyed by model id. Declaration order is
/// kept; the codec uses it as the model slot index.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveCatalog {
    pub version: String,
    pub divider_thickness_mm: f64,
    schemas: Vec<PrimitiveSchema>,
    index: HashMap<String, usize>,
}

impl PrimitiveCatalog {
    pub fn new(version: impl Into<String>, divider_thickness_mm: f64, schemas: Vec<PrimitiveSchema>) -> Result<Self, CatalogError> {
        if schemas.is_empty() {
            return Err(CatalogError::Empty);
        }
        let mut index = HashMap::new();
        for (i, s) in schemas.iter().enumerate() {
            check_schema(s)?;
            if index.insert(s.model_id.clone(), i).is_some() {
                return Err(CatalogError::DuplicateModelId(s.model_id.clone()));
            }
        }
        Ok(PrimitiveCatalog {
            version: version.into(),
            divider_thickness_mm,
            schemas,
            index,
        })
    }

    pub fn get(&self, model_id: &str) -> Option<&PrimitiveSchema> {
        self.index.get(model_id).map(|&i| &self.schemas[i])
    }

    pub fn index_of(&self, model_id: &str) -> Option<usize> {
        self.index.get(model_id).copied()
    }

    pub fn by_index(&self, i: usize) -> Option<&PrimitiveSchema> {
        self.schemas.get(i)
    }

    pub fn schemas(&self) -> &[PrimitiveSchema] {
        &self.schemas
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    /// First schema with the given role.
    pub fn with_role(&self, role: Role) -> Option<&PrimitiveSchema> {
        self.schemas.iter().find(|s| s.role == role)
    }

    pub fn role_of(&self, model_id: &str) -> Role {
        self.get(model_id).map_or(Role::Other, |s| s.role)
    }
}

fn valid_key(key: &str) -> bool {
    let mut chars = key.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
}

fn check_schema(s: &PrimitiveSchema) -> Result<(), CatalogError> {
    if s.params.len() > MAX_PARAMS_PER_PRIMITIVE {
        return Err(CatalogError::TooManyParams {
            model_id: s.model_id.clone(),
            count: s.params.len(),
        });
    }
    for (i, p) in s.params.iter().enumerate() {
        if !valid_key(&p.key) {
            return Err(CatalogError::InvalidKey {
                model_id: s.model_id.clone(),
                key: p.key.clone(),
            });
        }
        if s.params[..i].iter().any(|q| q.key == p.key) {
            return Err(CatalogError::DuplicateParamKey {
                model_id: s.model_id.clone(),
                key: p.key.clone(),
            });
        }
        if let Some(default) = &p.default {
            if value_issue(p, default).is_some() {
                return Err(CatalogError::DefaultOutOfDomain {
                    model_id: s.model_id.clone(),
                    key: p.key.clone(),
                });
            }
        }
    }
    if let Some(rule) = &s.division {
        let count_ok = s.param(&rule.count_key).is_some_and(|p| p.kind == ParamKind::Integer);
        let widths_ok = s
            .params
            .iter()
            .filter(|p| rule.width_index(&p.key).is_some())
            .all(|p| p.kind == ParamKind::LengthMm && p.default.is_none());
        if !count_ok || !widths_ok || rule.width_index(&rule.count_key).is_some() {
            return Err(CatalogError::InvalidDivision {
                model_id: s.model_id.clone(),
            });
        }
    }
    Ok(())
}

/// Type or domain problem of a single value, if any.
fn value_issue(schema: &ParamSchema, value: &ParamValue) -> Option<Diagnostic> {
    let type_ok = matches!(
        (schema.kind, value),
        (ParamKind::Integer, ParamValue::Int(_))
            | (ParamKind::LengthMm, ParamValue::Real(_) | ParamValue::Int(_))
            | (ParamKind::Enumeration, ParamValue::Enum(_))
            | (ParamKind::Text, ParamValue::Text(_))
    );
    if !type_ok {
        return Some(Diagnostic::error(
            Code::ParamType,
            format!("parameter `{}` expects {}, found {}", schema.key, schema.kind, value.kind_name()),
        ));
    }
    let in_domain = match (&schema.domain, value) {
        (None, _) => true,
        (Some(Domain::Members(members)), ParamValue::Enum(token)) => members.iter().any(|m| m == token),
        (Some(Domain::Range { min, max }), v) => v.as_f64().is_none_or(|x| *min <= x && x <= *max),
        (Some(Domain::Members(_)), _) => true,
    };
    if !in_domain {
        let domain = match schema.domain.as_ref() {
            Some(Domain::Members(m)) => format!("{{{}}}", m.join(", ")),
            Some(Domain::Range { min, max }) => format!("[{}, {}]", format_decimal(*min), format_decimal(*max)),
            None => String::new(),
        };
        return Some(Diagnostic::error(
            Code::ParamDomain,
            format!("parameter `{}` = {} is outside its domain {}", schema.key, value, domain),
        ));
    }
    None
}

/// Checks a parameter map against its schema: unknown keys, missing keys
/// without defaults, types, domains and the divided-space rule.
pub fn validate_params(schema: &PrimitiveSchema, params: &Params) -> Vec<Diagnostic> {
    param_issues(schema, params).into_iter().map(|(_, d)| d).collect()
}

/// Like [`validate_params`], tagging each diagnostic with the key it is about.
pub(crate) fn param_issues(schema: &PrimitiveSchema, params: &Params) -> Vec<(Option<String>, Diagnostic)> {
    let mut out = Vec::new();
    for (key, value) in params.iter() {
        match schema.param(key) {
            None => out.push((
                Some(key.to_string()),
                Diagnostic::error(
                    Code::UnknownParam,
                    format!("model `{}` has no parameter `{key}`", schema.model_id),
                ),
            )),
            Some(ps) => {
                if let Some(d) = value_issue(ps, value) {
                    out.push((Some(key.to_string()), d));
                }
            }
        }
    }
    for ps in &schema.params {
        if ps.default.is_none() && !schema.governed_by_division(&ps.key) && params.get(&ps.key).is_none() {
            out.push((
                None,
                Diagnostic::error(
                    Code::MissingParam,
                    format!("missing parameter `{}` of model `{}`", ps.key, schema.model_id),
                ),
            ));
        }
    }
    if let Some(rule) = &schema.division {
        let count = match params.get(&rule.count_key) {
            Some(ParamValue::Int(n)) => Some(*n),
            Some(_) => None,
            None => match schema.param(&rule.count_key).and_then(|p| p.default.as_ref()) {
                Some(ParamValue::Int(n)) => Some(*n),
                _ => None,
            },
        };
        let given: Vec<usize> = params.keys().filter_map(|k| rule.width_index(k)).collect();
        if let (Some(n), false) = (count, given.is_empty()) {
            let n = n.max(0) as usize;
            for i in 0..n {
                if !given.contains(&i) {
                    out.push((
                        None,
                        Diagnostic::error(
                            Code::MissingParam,
                            format!(
                                "missing parameter `{}`: {} = {n} requires widths {}..{}",
                                rule.width_key(i),
                                rule.count_key,
                                rule.width_key(0),
                                rule.width_key(n.saturating_sub(1))
                            ),
                        ),
                    ));
                }
            }
            for &i in given.iter().filter(|&&i| i >= n) {
                let key = rule.width_key(i);
                out.push((
                    Some(key.clone()),
                    Diagnostic::error(
                        Code::DivisionCount,
                        format!("width `{key}` given but {} = {n}", rule.count_key),
                    ),
                ));
            }
        }
    }
    out
}

/// Loads a catalog document.
pub fn load_catalog(text: &str) -> Result<PrimitiveCatalog, CatalogError> {
    let root = yaml::parse(text).map_err(|d| CatalogError::Syntax(Diagnostics(d)))?;
    let structure = |node: &Node, message: String| CatalogError::Structure {
        message,
        span: node.span(),
    };
    if root.as_map().is_none() {
        return Err(structure(&root, "catalog document must be a mapping".into()));
    }
    let version = match root.get("version") {
        Some(n) => scalar_text(n).ok_or_else(|| structure(n, "`version` must be a scalar".into()))?,
        None => String::new(),
    };
    let divider = match root.get("divider_thickness") {
        Some(n) => number(n).ok_or_else(|| structure(n, "`divider_thickness` must be a number".into()))?,
        None => DEFAULT_DIVIDER_THICKNESS_MM,
    };
    for (key, _) in root.as_map().unwrap_or_default() {
        if !matches!(key.text.as_str(), "version" | "divider_thickness" | "catalog") {
            return Err(CatalogError::Structure {
                message: format!("unknown top-level key `{}`", key.text),
                span: key.span,
            });
        }
    }
    let list = root.get("catalog").ok_or_else(|| structure(&root, "missing `catalog` list".into()))?;
    let Some(entries) = list.as_seq() else {
        if list.as_scalar().is_some_and(|s| s.is_null()) {
            return Err(CatalogError::Empty);
        }
        return Err(structure(list, "`catalog` must be a sequence".into()));
    };
    let schemas = entries.iter().map(load_schema).collect::<Result<Vec<_>, _>>()?;
    PrimitiveCatalog::new(version, divider, schemas)
}

fn scalar_text(node: &Node) -> Option<String> {
    node.as_scalar().map(|s| s.text.clone())
}

fn number(node: &Node) -> Option<f64> {
    let s = node.as_scalar().filter(|s| !s.is_quoted())?;
    crate::program::parse_number_f64(&s.text)
}

fn load_schema(node: &Node) -> Result<PrimitiveSchema, CatalogError> {
    let err = |n: &Node, message: &str| CatalogError::Structure {
        message: message.to_string(),
        span: n.span(),
    };
    if node.as_map().is_none() {
        return Err(err(node, "catalog entry must be a mapping"));
    }
    for (key, _) in node.as_map().unwrap_or_default() {
        if !matches!(key.text.as_str(), "id" | "name" | "role" | "division" | "params") {
            return Err(CatalogError::Structure {
                message: format!("unknown catalog entry key `{}`", key.text),
                span: key.span,
            });
        }
    }
    let id_node = node.get("id").ok_or_else(|| err(node, "catalog entry needs an `id`"))?;
    let model_id = scalar_text(id_node).filter(|s| !s.is_empty()).ok_or_else(|| err(id_node, "`id` must be a non-empty scalar"))?;
    let name = match node.get("name") {
        Some(n) => scalar_text(n).ok_or_else(|| err(n, "`name` must be a scalar"))?,
        None => model_id.clone(),
    };
    let role = match node.get("role") {
        Some(n) => scalar_text(n).and_then(|s| Role::parse(&s)).ok_or_else(|| err(n, "unknown role"))?,
        None => Role::Other,
    };
    let division = match node.get("division") {
        Some(n) => {
            let count_key = n.get("count").and_then(scalar_text).ok_or_else(|| err(n, "division needs `count`"))?;
            let width_prefix = n
                .get("width_prefix")
                .and_then(scalar_text)
                .ok_or_else(|| err(n, "division needs `width_prefix`"))?;
            Some(DivisionRule { count_key, width_prefix })
        }
        None => None,
    };
    let params = match node.get("params") {
        None => Vec::new(),
        Some(n) if n.as_scalar().is_some_and(|s| s.is_null()) => Vec::new(),
        Some(n) => {
            let items = n.as_seq().ok_or_else(|| err(n, "`params` must be a sequence"))?;
            items.iter().map(load_param).collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(PrimitiveSchema {
        model_id,
        name,
        role,
        params,
        division,
    })
}

fn load_param(node: &Node) -> Result<ParamSchema, CatalogError> {
    let err = |n: &Node, message: String| CatalogError::Structure { message, span: n.span() };
    if node.as_map().is_none() {
        return Err(err(node, "parameter entry must be a mapping".into()));
    }
    for (key, _) in node.as_map().unwrap_or_default() {
        if !matches!(key.text.as_str(), "key" | "kind" | "members" | "range" | "default" | "description") {
            return Err(CatalogError::Structure {
                message: format!("unknown parameter entry key `{}`", key.text),
                span: key.span,
            });
        }
    }
    let key_node = node.get("key").ok_or_else(|| err(node, "parameter needs a `key`".into()))?;
    let key = scalar_text(key_node).ok_or_else(|| err(key_node, "`key` must be a scalar".into()))?;
    let kind_node = node.get("kind").ok_or_else(|| err(node, format!("parameter `{key}` needs a `kind`")))?;
    let kind = scalar_text(kind_node)
        .and_then(|s| ParamKind::parse(&s))
        .ok_or_else(|| err(kind_node, format!("parameter `{key}` has an unknown kind")))?;
    let domain = match (node.get("members"), node.get("range")) {
        (Some(_), Some(r)) => return Err(err(r, format!("parameter `{key}` declares both members and range"))),
        (Some(m), None) => {
            let items = m.as_seq().ok_or_else(|| err(m, "`members` must be a sequence".into()))?;
            let members = items
                .iter()
                .map(|i| scalar_text(i).ok_or_else(|| err(i, "members must be scalars".into())))
                .collect::<Result<Vec<_>, _>>()?;
            if kind != ParamKind::Enumeration || members.is_empty() {
                return Err(err(m, format!("`members` of `{key}` requires a non-empty enumeration")));
            }
            Some(Domain::Members(members))
        }
        (None, Some(r)) => {
            let bounds = r
                .as_seq()
                .filter(|s| s.len() == 2)
                .and_then(|s| Some((number(&s[0])?, number(&s[1])?)))
                .ok_or_else(|| err(r, "`range` must be [min, max]".into()))?;
            if !matches!(kind, ParamKind::Integer | ParamKind::LengthMm) || bounds.0 > bounds.1 {
                return Err(err(r, format!("invalid `range` for `{key}`")));
            }
            Some(Domain::Range {
                min: bounds.0,
                max: bounds.1,
            })
        }
        (None, None) => None,
    };
    let default = match node.get("default") {
        None => None,
        Some(d) => {
            let s = d.as_scalar().ok_or_else(|| err(d, "`default` must be a scalar".into()))?;
            let lit = literal_from_scalar(s);
            Some(typed_value(kind, &lit).ok_or_else(|| err(d, format!("default of `{key}` does not match kind {kind}")))?)
        }
    };
    let description = match node.get("description") {
        Some(n) => scalar_text(n).ok_or_else(|| err(n, "`description` must be a scalar".into()))?,
        None => String::new(),
    };
    Ok(ParamSchema {
        key,
        kind,
        domain,
        default,
        description,
    })
}

fn token_scalar(token: &str) -> String {
    if crate::program::parse_number_f64(token).is_some() {
        token.to_string()
    } else {
        yaml::string_scalar(token)
    }
}

/// Serializes a catalog in the format read by [`load_catalog`].
pub fn save_catalog(catalog: &PrimitiveCatalog) -> String {
    let mut out = String::new();
    out.push_str(&format!("version: {}\n", yaml::string_scalar(&catalog.version)));
    out.push_str(&format!("divider_thickness: {}\n", format_decimal(catalog.divider_thickness_mm)));
    out.push_str("catalog:\n");
    for s in &catalog.schemas {
        out.push_str(&format!("  - id: {}\n", yaml::string_scalar(&s.model_id)));
        out.push_str(&format!("    name: {}\n", yaml::string_scalar(&s.name)));
        out.push_str(&format!("    role: {}\n", s.role.as_str()));
        if let Some(rule) = &s.division {
            out.push_str("    division:\n");
            out.push_str(&format!("      count: {}\n", yaml::string_scalar(&rule.count_key)));
            out.push_str(&format!("      width_prefix: {}\n", yaml::string_scalar(&rule.width_prefix)));
        }
        if s.params.is_empty() {
            continue;
        }
        out.push_str("    params:\n");
        for p in &s.params {
            out.push_str(&format!("      - key: {}\n", p.key));
            out.push_str(&format!("        kind: {}\n", p.kind));
            match &p.domain {
                Some(Domain::Members(m)) => {
                    let items: Vec<String> = m.iter().map(|t| token_scalar(t)).collect();
                    out.push_str(&format!("        members: [{}]\n", items.join(", ")));
                }
                Some(Domain::Range { min, max }) => {
                    out.push_str(&format!("        range: [{}, {}]\n", format_decimal(*min), format_decimal(*max)));
                }
                None => {}
            }
            if let Some(d) = &p.default {
                let text = match d {
                    ParamValue::Int(i) => i.to_string(),
                    ParamValue::Real(r) => format_decimal(*r),
                    ParamValue::Enum(t) => token_scalar(t),
                    ParamValue::Text(t) => yaml::double_quoted(t),
                };
                out.push_str(&format!("        default: {text}\n"));
            }
            if !p.description.is_empty() {
                out.push_str(&format!("        description: {}\n", yaml::string_scalar(&p.description)));
            }
        }
    }
    out
}

/// The shipped six-primitive catalog.
pub fn builtin_catalog() -> PrimitiveCatalog {
    load_catalog(BUILTIN).expect("shipped catalog is valid")
}
