//! Orthographic drawings of cabinet models.
//!
//! The pipeline is `render_views` (geometry layer), `annotate` (dimension sets
//! and symbols), optionally `inject_noise`, then `layout_sheet` and `to_svg`.
//! Everything before layout works in millimeters in view-plane coordinates;
//! the sheet maps them to pixels with one uniform scale.

mod layout;
mod noise;
mod svg;

pub use layout::{layout_sheet, PlacedView, Sheet, DEFAULT_CANVAS_PX, DEFAULT_GAP_PX, DEFAULT_MARGIN_PX};
pub use noise::{inject_noise, NoiseError, NoiseSpec};
pub use svg::{extract_group, remove_group, to_svg, Layers, Style, StyleError};

use crate::catalog::Role;
use crate::geometry::{box_aabb, box_edges_2d, merge_segments, Segment2, View};
use crate::program::CabinetModel;
use crate::PrimitiveCatalog;

/// Instances with a smaller projected extent get no dimension set.
pub const DEFAULT_MIN_DIMENSION_MM: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A measured span: the two endpoints, the offset dimension line, extension
/// lines from the endpoints to that line, and the integer-mm label.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionSet {
    pub orientation: Orientation,
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub line: Segment2,
    pub extensions: Vec<Segment2>,
    pub label: String,
}

impl DimensionSet {
    pub fn measured(&self) -> f64 {
        Segment2::new(self.from, self.to).length()
    }

    fn new(orientation: Orientation, from: [f64; 2], to: [f64; 2], offset: f64) -> Self {
        let (line, extensions) = match orientation {
            Orientation::Horizontal => {
                let y = from[1] + offset;
                let line = Segment2::new([from[0], y], [to[0], y]);
                let ext = if offset == 0.0 {
                    Vec::new()
                } else {
                    vec![Segment2::new(from, [from[0], y]), Segment2::new(to, [to[0], y])]
                };
                (line, ext)
            }
            Orientation::Vertical => {
                let x = from[0] + offset;
                let line = Segment2::new([x, from[1]], [x, to[1]]);
                let ext = if offset == 0.0 {
                    Vec::new()
                } else {
                    vec![Segment2::new(from, [x, from[1]]), Segment2::new(to, [x, to[1]])]
                };
                (line, ext)
            }
        };
        let mut d = DimensionSet {
            orientation,
            from,
            to,
            line,
            extensions,
            label: String::new(),
        };
        d.label = format!("{}", d.measured().round() as i64);
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    AdjustableShelfCircle,
    DoorOpeningTriangle,
}

impl SymbolKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymbolKind::AdjustableShelfCircle => "adjustable_shelf_circle",
            SymbolKind::DoorOpeningTriangle => "door_opening_triangle",
        }
    }
}

/// A functional symbol anchored at the projected center of an instance.
/// `extent` is the projected instance size, used to draw the door triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub anchor: [f64; 2],
    pub extent: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnnotationEntity {
    Dimension(DimensionSet),
    Symbol(Symbol),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViewDrawing {
    pub view: View,
    pub segments: Vec<Segment2>,
    pub annotations: Vec<AnnotationEntity>,
}

/// Axis-aligned 2D bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds2 {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Bounds2 {
    pub fn empty() -> Self {
        Bounds2 {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.min[0] > self.max[0]
    }

    pub fn add(&mut self, p: [f64; 2]) {
        for (i, v) in p.into_iter().enumerate() {
            self.min[i] = self.min[i].min(v);
            self.max[i] = self.max[i].max(v);
        }
    }

    pub fn add_segment(&mut self, s: &Segment2) {
        self.add(s.a);
        self.add(s.b);
    }

    pub fn width(&self) -> f64 {
        self.max[0] - self.min[0]
    }

    pub fn height(&self) -> f64 {
        self.max[1] - self.min[1]
    }
}

impl ViewDrawing {
    pub fn geometry_bounds(&self) -> Bounds2 {
        let mut b = Bounds2::empty();
        self.segments.iter().for_each(|s| b.add_segment(s));
        b
    }

    /// Bounds of geometry and annotation entities together.
    pub fn bounds(&self) -> Bounds2 {
        let mut b = self.geometry_bounds();
        for a in &self.annotations {
            match a {
                AnnotationEntity::Dimension(d) => {
                    b.add_segment(&d.line);
                    d.extensions.iter().for_each(|s| b.add_segment(s));
                }
                AnnotationEntity::Symbol(s) => b.add(s.anchor),
            }
        }
        b
    }

    pub fn dimensions(&self) -> impl Iterator<Item = &DimensionSet> {
        self.annotations.iter().filter_map(|a| match a {
            AnnotationEntity::Dimension(d) => Some(d),
            _ => None,
        })
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.annotations.iter().filter_map(|a| match a {
            AnnotationEntity::Symbol(s) => Some(s),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RenderOptions {
    /// Section views show instances whose y-center lies behind (greater than)
    /// this plane. Defaults to the middle of the model's y-range.
    pub section_cut_y: Option<f64>,
}

/// Indices of the instances that appear in `view`.
fn visible(model: &CabinetModel, view: View, opts: &RenderOptions) -> Vec<usize> {
    if view != View::Section {
        return (0..model.len()).collect();
    }
    let cut = opts.section_cut_y.unwrap_or_else(|| model.aabb().map_or(0.0, |(lo, hi)| (lo[1] + hi[1]) / 2.0));
    (0..model.len())
        .filter(|&i| model.instances[i].bbox.position()[1] > cut)
        .collect()
}

/// Geometry layer of each requested view: all box edges projected and merged.
pub fn render_views(model: &CabinetModel, views: &[View]) -> Vec<ViewDrawing> {
    render_views_with(model, views, &RenderOptions::default())
}

pub fn render_views_with(model: &CabinetModel, views: &[View], opts: &RenderOptions) -> Vec<ViewDrawing> {
    views
        .iter()
        .map(|&view| {
            let edges = visible(model, view, opts)
                .into_iter()
                .flat_map(|i| box_edges_2d(&model.instances[i].bbox, view))
                .collect();
            ViewDrawing {
                view,
                segments: merge_segments(edges),
                annotations: Vec::new(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnotateOptions {
    pub enabled: bool,
    pub min_extent_mm: f64,
    /// Distance of overall dimension lines from the silhouette, as a fraction
    /// of the view's larger extent.
    pub offset_fraction: f64,
    pub symbols: bool,
    pub section_cut_y: Option<f64>,
}

impl Default for AnnotateOptions {
    fn default() -> Self {
        AnnotateOptions {
            enabled: true,
            min_extent_mm: DEFAULT_MIN_DIMENSION_MM,
            offset_fraction: 0.08,
            symbols: true,
            section_cut_y: None,
        }
    }
}

fn projected_bounds(b: &crate::OrientedBox, view: View) -> Bounds2 {
    let (lo, hi) = box_aabb(b);
    let mut out = Bounds2::empty();
    out.add(view.project(lo));
    out.add(view.project(hi));
    out
}

/// Adds overall width/height dimensions outside the silhouette, per-instance
/// size dimensions for instances at least `min_extent_mm` wide or tall, and
/// adjustable-shelf and door symbols in the front view.
pub fn annotate(views: Vec<ViewDrawing>, model: &CabinetModel, catalog: &PrimitiveCatalog, opts: &AnnotateOptions) -> Vec<ViewDrawing> {
    if !opts.enabled {
        return views;
    }
    let render_opts = RenderOptions {
        section_cut_y: opts.section_cut_y,
    };
    views
        .into_iter()
        .map(|mut v| {
            let shown = visible(model, v.view, &render_opts);
            let mut overall = Bounds2::empty();
            for &i in &shown {
                let b = projected_bounds(&model.instances[i].bbox, v.view);
                overall.add(b.min);
                overall.add(b.max);
            }
            if overall.is_empty() {
                return v;
            }
            let mut dims: Vec<DimensionSet> = Vec::new();
            let mut push = |d: DimensionSet| {
                let same = |e: &DimensionSet| e.orientation == d.orientation && e.from == d.from && e.to == d.to;
                if d.measured() > 0.0 && !dims.iter().any(same) {
                    dims.push(d);
                }
            };
            let off = opts.offset_fraction * overall.width().max(overall.height());
            push(DimensionSet::new(
                Orientation::Horizontal,
                overall.min,
                [overall.max[0], overall.min[1]],
                -off,
            ));
            push(DimensionSet::new(
                Orientation::Vertical,
                [overall.max[0], overall.min[1]],
                overall.max,
                off,
            ));
            for &i in &shown {
                let b = projected_bounds(&model.instances[i].bbox, v.view);
                let c = [(b.min[0] + b.max[0]) / 2.0, (b.min[1] + b.max[1]) / 2.0];
                if b.width() >= opts.min_extent_mm {
                    push(DimensionSet::new(Orientation::Horizontal, [b.min[0], c[1]], [b.max[0], c[1]], 0.0));
                }
                if b.height() >= opts.min_extent_mm {
                    push(DimensionSet::new(Orientation::Vertical, [c[0], b.min[1]], [c[0], b.max[1]], 0.0));
                }
            }
            v.annotations.extend(dims.into_iter().map(AnnotationEntity::Dimension));
            if opts.symbols && v.view == View::Front {
                for &i in &shown {
                    let inst = &model.instances[i];
                    let kind = match catalog.role_of(&inst.model_id) {
                        Role::AdjustableShelf => SymbolKind::AdjustableShelfCircle,
                        Role::Door => SymbolKind::DoorOpeningTriangle,
                        _ => continue,
                    };
                    let b = projected_bounds(&inst.bbox, v.view);
                    v.annotations.push(AnnotationEntity::Symbol(Symbol {
                        kind,
                        anchor: [(b.min[0] + b.max[0]) / 2.0, (b.min[1] + b.max[1]) / 2.0],
                        extent: [b.width(), b.height()],
                    }));
                }
            }
            v
        })
        .collect()
}
