//! SVG 1.1 serialization.
//!
//! Geometry and annotation go into top-level groups `geometry` and
//! `annotation`. The annotation group is written as one contiguous block
//! after the geometry group, so cutting it out of a full render yields the
//! geometry-only render byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use super::{AnnotationEntity, DimensionSet, Orientation, PlacedView, Sheet, Symbol, SymbolKind};
use crate::yaml::{self, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub geometry: bool,
    pub annotation: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers {
            geometry: true,
            annotation: true,
        }
    }
}

/// Visual constants, in pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub layers: Layers,
    pub geometry_stroke: f64,
    pub dimension_stroke: f64,
    pub arrow_size: f64,
    pub font_size: f64,
    pub symbol_stroke: f64,
    pub symbol_radius: f64,
    pub symbol_color: String,
    pub line_color: String,
    pub background: Option<String>,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            layers: Layers::default(),
            geometry_stroke: 1.0,
            dimension_stroke: 0.5,
            arrow_size: 6.0,
            font_size: 10.0,
            symbol_stroke: 1.0,
            symbol_radius: 6.0,
            symbol_color: "#ff0000".into(),
            line_color: "#000000".into(),
            background: Some("#ffffff".into()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StyleError {
    #[error("{0}")]
    Syntax(String),
    #[error("line {line}: {message}")]
    Field { line: usize, message: String },
}

fn valid_color(s: &str) -> bool {
    let hex = s.strip_prefix('#').is_some_and(|h| (h.len() == 6 || h.len() == 3) && h.chars().all(|c| c.is_ascii_hexdigit()));
    hex || (!s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase()))
}

impl Style {
    /// Reads a style file. Every key is optional; unknown keys are errors.
    ///
    /// ```yaml
    /// layers: [geometry, annotation]
    /// geometry_stroke: 1
    /// dimension_stroke: 0.5
    /// arrow_size: 6
    /// font_size: 10
    /// symbol_stroke: 1
    /// symbol_radius: 6
    /// symbol_color: "#ff0000"
    /// line_color: "#000000"
    /// background: "#ffffff"   # or null for none
    /// ```
    pub fn from_yaml(text: &str) -> Result<Style, StyleError> {
        let root = yaml::parse(text).map_err(|d| StyleError::Syntax(d.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n")))?;
        let mut style = Style::default();
        let Some(entries) = root.as_map() else {
            if root.as_scalar().is_some_and(|s| s.is_null()) {
                return Ok(style);
            }
            return Err(StyleError::Field {
                line: root.span().line,
                message: "expected a mapping".into(),
            });
        };
        for (key, node) in entries {
            let err = |message: &str| StyleError::Field {
                line: node.span().line,
                message: format!("{}: {message}", key.text),
            };
            let number = |n: &Node| -> Result<f64, StyleError> {
                n.as_scalar()
                    .filter(|s| !s.is_quoted())
                    .and_then(|s| s.text.parse::<f64>().ok())
                    .filter(|v| v.is_finite() && *v >= 0.0)
                    .ok_or_else(|| err("expected a non-negative number"))
            };
            let color = |n: &Node| -> Result<String, StyleError> {
                n.as_scalar()
                    .map(|s| s.text.clone())
                    .filter(|s| valid_color(s))
                    .ok_or_else(|| err("expected a color like \"#rrggbb\""))
            };
            match key.text.as_str() {
                "layers" => {
                    let items = node.as_seq().ok_or_else(|| err("expected a list"))?;
                    let mut layers = Layers {
                        geometry: false,
                        annotation: false,
                    };
                    for item in items {
                        match item.as_scalar().map(|s| s.text.as_str()) {
                            Some("geometry") => layers.geometry = true,
                            Some("annotation") => layers.annotation = true,
                            _ => return Err(err("layers are geometry and annotation")),
                        }
                    }
                    style.layers = layers;
                }
                "geometry_stroke" => style.geometry_stroke = number(node)?,
                "dimension_stroke" => style.dimension_stroke = number(node)?,
                "arrow_size" => style.arrow_size = number(node)?,
                "font_size" => style.font_size = number(node)?,
                "symbol_stroke" => style.symbol_stroke = number(node)?,
                "symbol_radius" => style.symbol_radius = number(node)?,
                "symbol_color" => style.symbol_color = color(node)?,
                "line_color" => style.line_color = color(node)?,
                "background" => {
                    style.background = match node.as_scalar() {
                        Some(s) if s.is_null() => None,
                        _ => Some(color(node)?),
                    }
                }
                _ => return Err(err("unknown style key")),
            }
        }
        Ok(style)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn line(out: &mut String, a: [f64; 2], b: [f64; 2]) {
    let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", num(a[0]), num(a[1]), num(b[0]), num(b[1]));
}

fn polygon(out: &mut String, pts: &[[f64; 2]], attrs: &str) {
    let p: Vec<String> = pts.iter().map(|p| format!("{},{}", num(p[0]), num(p[1]))).collect();
    let _ = writeln!(out, "<polygon points=\"{}\"{attrs}/>", p.join(" "));
}

fn arrow(out: &mut String, tip: [f64; 2], from: [f64; 2], size: f64) {
    let (dx, dy) = (tip[0] - from[0], tip[1] - from[1]);
    let len = dx.hypot(dy);
    if len == 0.0 || size == 0.0 {
        return;
    }
    let (ux, uy) = (dx / len, dy / len);
    let base = [tip[0] - ux * size, tip[1] - uy * size];
    let w = size / 3.0;
    polygon(out, &[tip, [base[0] - uy * w, base[1] + ux * w], [base[0] + uy * w, base[1] - ux * w]], "");
}

fn dimension(out: &mut String, sheet: &Sheet, pv: &PlacedView, d: &DimensionSet, style: &Style) {
    let px = |p| sheet.to_px(pv, p);
    let _ = writeln!(out, "<g class=\"dimension\">");
    for e in &d.extensions {
        line(out, px(e.a), px(e.b));
    }
    let (a, b) = (px(d.line.a), px(d.line.b));
    line(out, a, b);
    arrow(out, a, b, style.arrow_size);
    arrow(out, b, a, style.arrow_size);
    let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let label = escape(&d.label);
    match d.orientation {
        Orientation::Horizontal => {
            let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{label}</text>", num(mid[0]), num(mid[1] - 2.0));
        }
        Orientation::Vertical => {
            let (x, y) = (num(mid[0] - 2.0), num(mid[1]));
            let _ = writeln!(out, "<text x=\"{x}\" y=\"{y}\" transform=\"rotate(-90 {x} {y})\">{label}</text>");
        }
    }
    let _ = writeln!(out, "</g>");
}

fn symbol(out: &mut String, sheet: &Sheet, pv: &PlacedView, s: &Symbol, style: &Style) {
    let c = sheet.to_px(pv, s.anchor);
    match s.kind {
        SymbolKind::AdjustableShelfCircle => {
            let _ = writeln!(
                out,
                "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                s.kind.as_str(),
                num(c[0]),
                num(c[1]),
                num(style.symbol_radius)
            );
        }
        SymbolKind::DoorOpeningTriangle => {
            let hw = s.extent[0] * sheet.scale * 0.4;
            let hh = s.extent[1] * sheet.scale * 0.4;
            let pts = [[c[0] - hw, c[1] - hh], [c[0] - hw, c[1] + hh], [c[0] + hw, c[1]]];
            polygon(out, &pts, &format!(" class=\"{}\"", s.kind.as_str()));
        }
    }
}

/// Deterministic SVG for a laid-out sheet. The viewBox equals the canvas.
pub fn to_svg(sheet: &Sheet, style: &Style) -> String {
    let c = sheet.canvas;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">"
    );
    if let Some(bg) = &style.background {
        let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{c}\" height=\"{c}\" fill=\"{bg}\"/>");
    }
    if style.layers.geometry {
        let _ = writeln!(
            out,
            "<g id=\"geometry\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\">",
            style.line_color,
            num(style.geometry_stroke)
        );
        for pv in &sheet.views {
            let _ = writeln!(out, "<g class=\"{}\">", pv.drawing.view.as_str());
            for s in &pv.drawing.segments {
                line(&mut out, sheet.to_px(pv, s.a), sheet.to_px(pv, s.b));
            }
            out.push_str("</g>\n");
        }
        out.push_str("</g>\n");
    }
    if style.layers.annotation {
        let _ = writeln!(
            out,
            "<g id=\"annotation\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\">",
            num(style.font_size)
        );
        for pv in &sheet.views {
            let _ = writeln!(out, "<g class=\"{}\">", pv.drawing.view.as_str());
            let _ = writeln!(
                out,
                "<g class=\"dimensions\" stroke=\"{0}\" stroke-width=\"{1}\" fill=\"{0}\">",
                style.line_color,
                num(style.dimension_stroke)
            );
            for a in &pv.drawing.annotations {
                if let AnnotationEntity::Dimension(d) = a {
                    dimension(&mut out, sheet, pv, d, style);
                }
            }
            out.push_str("</g>\n");
            let _ = writeln!(
                out,
                "<g class=\"symbols\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">",
                style.symbol_color,
                num(style.symbol_stroke)
            );
            for a in &pv.drawing.annotations {
                if let AnnotationEntity::Symbol(s) = a {
                    symbol(&mut out, sheet, pv, s, style);
                }
            }
            out.push_str("</g>\n</g>\n");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Byte range of the top-level `<g id="...">` block, trailing newline
/// included.
fn group_range(svg: &str, id: &str) -> Option<(usize, usize)> {
    let open = format!("<g id=\"{id}\"");
    let start = svg.find(&open)?;
    let mut depth = 0usize;
    let mut i = start;
    while i < svg.len() {
        let rest = &svg[i..];
        if rest.starts_with("<g ") || rest.starts_with("<g>") {
            depth += 1;
        } else if rest.starts_with("</g>") {
            depth -= 1;
            if depth == 0 {
                let mut end = i + 4;
                if svg[end..].starts_with('\n') {
                    end += 1;
                }
                return Some((start, end));
            }
        }
        i += rest.chars().next().map_or(1, char::len_utf8);
    }
    None
}

/// The `<g id="...">` block with its contents.
pub fn extract_group<'a>(svg: &'a str, id: &str) -> Option<&'a str> {
    group_range(svg, id).map(|(a, b)| &svg[a..b])
}

/// `svg` with the named group cut out.
pub fn remove_group(svg: &str, id: &str) -> Option<String> {
    group_range(svg, id).map(|(a, b)| format!("{}{}", &svg[..a], &svg[b..]))
}
