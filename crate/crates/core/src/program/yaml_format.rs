//! YAML shape programs:
//!
//! ```text
//! cabinet:
//!   - id: M-BB01
//!     name: Base box          # optional
//!     position: [300, 200, 1000]
//!     size: [600, 400, 2000]
//!     rotation: 0             # optional, default 0
//!     params:                 # optional
//!       N: 2
//! ```

use super::{build_box, build_params, literal_from_scalar, parse_number, Literal, ParseResult, PrimitiveInstance, RawBox, RawParam, Sink};
use crate::catalog::PrimitiveCatalog;
use crate::diag::{Code, Diagnostic};
use crate::yaml::{self, Node};

const ENTRY_KEYS: [&str; 6] = ["id", "name", "position", "size", "rotation", "params"];

fn number(node: &Node, what: &str, sink: &mut Sink<'_>) -> Option<(f64, usize)> {
    let found = node
        .as_scalar()
        .filter(|s| !s.is_quoted())
        .and_then(|s| parse_number(&s.text))
        .and_then(|l| l.as_number());
    if found.is_none() {
        sink.error(Diagnostic::error(Code::Syntax, format!("`{what}` must be a number")).with_span(node.span()));
    }
    found
}

fn vec3(node: &Node, what: &str, sink: &mut Sink<'_>) -> Option<[(f64, usize); 3]> {
    match node.as_seq() {
        Some(items) if items.len() == 3 => {
            let a = number(&items[0], what, sink);
            let b = number(&items[1], what, sink);
            let c = number(&items[2], what, sink);
            Some([a?, b?, c?])
        }
        Some(items) => {
            sink.error(
                Diagnostic::error(Code::Arity, format!("`{what}` needs 3 components, found {}", items.len())).with_span(node.span()),
            );
            None
        }
        None => {
            sink.error(Diagnostic::error(Code::Syntax, format!("`{what}` must be a sequence of 3 numbers")).with_span(node.span()));
            None
        }
    }
}

fn entry(node: &Node, catalog: &PrimitiveCatalog, sink: &mut Sink<'_>) -> Option<PrimitiveInstance> {
    let Some(map) = node.as_map() else {
        sink.error(Diagnostic::error(Code::Syntax, "cabinet entries must be mappings").with_span(node.span()));
        return None;
    };
    for (key, _) in map {
        if !ENTRY_KEYS.contains(&key.text.as_str()) {
            sink.error(Diagnostic::error(Code::Syntax, format!("unknown entry key `{}`", key.text)).with_span(key.span));
        }
    }
    let id = match node.get("id").map(|n| (n, n.as_scalar())) {
        Some((_, Some(s))) if !s.text.is_empty() => Some((s.text.clone(), s.span)),
        Some((n, _)) => {
            sink.error(Diagnostic::error(Code::Syntax, "`id` must be a non-empty scalar").with_span(n.span()));
            None
        }
        None => {
            sink.error(Diagnostic::error(Code::MissingArgument, "entry needs `id`").with_span(node.span()));
            None
        }
    };
    let name = match node.get("name") {
        Some(n) => match n.as_scalar() {
            Some(s) => Some(s.text.clone()),
            None => {
                sink.error(Diagnostic::error(Code::Syntax, "`name` must be a scalar").with_span(n.span()));
                None
            }
        },
        None => None,
    };
    let mut fields = [None, None];
    for (slot, key) in fields.iter_mut().zip(["position", "size"]) {
        match node.get(key) {
            Some(n) => *slot = vec3(n, key, sink),
            None => sink.error(Diagnostic::error(Code::MissingArgument, format!("entry needs `{key}`")).with_span(node.span())),
        }
    }
    let rotation = match node.get("rotation") {
        Some(n) => number(n, "rotation", sink),
        None => Some((0.0, 0)),
    };
    let mut raw_params = Vec::new();
    match node.get("params") {
        None => {}
        Some(n) if n.as_scalar().is_some_and(|s| s.is_null()) => {}
        Some(n) => match n.as_map() {
            Some(entries) => {
                for (key, value) in entries {
                    let Some(s) = value.as_scalar() else {
                        sink.error(
                            Diagnostic::error(Code::Syntax, format!("parameter `{}` must be a scalar", key.text)).with_span(value.span()),
                        );
                        continue;
                    };
                    if !is_param_key(&key.text) {
                        sink.error(Diagnostic::error(Code::Syntax, format!("invalid parameter key `{}`", key.text)).with_span(key.span));
                        continue;
                    }
                    let value: Literal = literal_from_scalar(s);
                    raw_params.push(RawParam {
                        key: key.text.clone(),
                        key_span: key.span,
                        value,
                        value_span: s.span,
                    });
                }
            }
            None => sink.error(Diagnostic::error(Code::Syntax, "`params` must be a mapping").with_span(n.span())),
        },
    }
    let (model_id, id_span) = id?;
    let params = build_params(&model_id, id_span, raw_params, catalog, sink);
    let raw = RawBox {
        position: fields[0]?,
        size: fields[1]?,
        rotation: rotation?,
        span: node.span(),
    };
    let bbox = build_box(&raw, sink)?;
    Some(PrimitiveInstance { model_id, name, bbox, params })
}

fn is_param_key(key: &str) -> bool {
    let mut chars = key.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
}

/// Parses a YAML shape program.
pub fn parse_yaml(text: &str, catalog: &PrimitiveCatalog, strict: bool) -> ParseResult {
    let mut sink = Sink::new(text, strict);
    let root = match yaml::parse(text) {
        Ok(root) => root,
        Err(diags) => {
            for d in diags {
                sink.error(d);
            }
            return sink.finish(Vec::new());
        }
    };
    let Some(list) = root.get("cabinet") else {
        sink.error(Diagnostic::error(Code::Syntax, "document needs a top-level `cabinet:` key").with_span(root.span()));
        return sink.finish(Vec::new());
    };
    if let Some(map) = root.as_map() {
        for (key, _) in map.iter().filter(|(k, _)| k.text != "cabinet") {
            sink.error(Diagnostic::error(Code::Syntax, format!("unknown top-level key `{}`", key.text)).with_span(key.span));
        }
    }
    let items = match list {
        Node::Seq(items, _) => items.as_slice(),
        Node::Scalar(s) if s.is_null() => &[],
        other => {
            sink.error(Diagnostic::error(Code::Syntax, "`cabinet` must be a sequence").with_span(other.span()));
            return sink.finish(Vec::new());
        }
    };
    let instances: Vec<_> = items.iter().filter_map(|n| entry(n, catalog, &mut sink)).collect();
    if sink.errors.is_empty() && instances.is_empty() {
        sink.error(Diagnostic::error(Code::EmptyModel, "`cabinet` lists no primitives").with_span(list.span()));
    }
    sink.finish(instances)
}
