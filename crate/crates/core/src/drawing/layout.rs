//! Sheet placement.
//!
//! The canonical top/front/side set uses third-angle placement: top view top
//! left, front view bottom left, side view bottom right, with top and front
//! sharing x and front and side sharing z. Any other set of views goes on a
//! row-major grid with ceil(sqrt(n)) columns, each view centered in its cell.

use super::{Bounds2, ViewDrawing};
use crate::geometry::View;

pub const DEFAULT_CANVAS_PX: u32 = 512;
pub const DEFAULT_MARGIN_PX: f64 = 24.0;
pub const DEFAULT_GAP_PX: f64 = 24.0;

/// A view with its placement: pixel = (u * scale + tx, ty - v * scale).
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedView {
    pub drawing: ViewDrawing,
    pub translate: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sheet {
    pub canvas: u32,
    pub margin: f64,
    pub scale: f64,
    pub views: Vec<PlacedView>,
}

impl Sheet {
    pub fn to_px(&self, placed: &PlacedView, p: [f64; 2]) -> [f64; 2] {
        [p[0] * self.scale + placed.translate[0], placed.translate[1] - p[1] * self.scale]
    }

    /// Pixel bounds of one placed view, annotations included.
    pub fn placed_bounds(&self, placed: &PlacedView) -> Bounds2 {
        let b = bounds_or_unit(&placed.drawing);
        let mut out = Bounds2::empty();
        out.add(self.to_px(placed, b.min));
        out.add(self.to_px(placed, b.max));
        out
    }
}

fn bounds_or_unit(v: &ViewDrawing) -> Bounds2 {
    let b = v.bounds();
    if b.is_empty() {
        Bounds2 {
            min: [0.0, 0.0],
            max: [1.0, 1.0],
        }
    } else {
        b
    }
}

fn is_canonical(views: &[ViewDrawing]) -> bool {
    let mut kinds: Vec<View> = views.iter().map(|v| v.view).collect();
    kinds.sort();
    kinds == [View::Front, View::Top, View::Side]
}

fn union(a: Bounds2, b: Bounds2) -> Bounds2 {
    let mut u = a;
    u.add(b.min);
    u.add(b.max);
    u
}

/// Places the views on a square canvas with one uniform scale, chosen so the
/// arrangement's larger extent, gaps included, equals `canvas - 2 * margin`.
pub fn layout_sheet(views: Vec<ViewDrawing>, canvas: u32) -> Sheet {
    layout_sheet_with(views, canvas, DEFAULT_MARGIN_PX, DEFAULT_GAP_PX)
}

pub fn layout_sheet_with(views: Vec<ViewDrawing>, canvas: u32, margin: f64, gap: f64) -> Sheet {
    let avail = canvas as f64 - 2.0 * margin;
    if views.is_empty() {
        return Sheet {
            canvas,
            margin,
            scale: 1.0,
            views: Vec::new(),
        };
    }
    if is_canonical(&views) {
        return canonical(views, canvas, margin, gap, avail);
    }
    grid(views, canvas, margin, gap, avail)
}

fn canonical(views: Vec<ViewDrawing>, canvas: u32, margin: f64, gap: f64, avail: f64) -> Sheet {
    let find = |k: View| views.iter().position(|v| v.view == k).expect("canonical set");
    let (it, i_f, is) = (find(View::Top), find(View::Front), find(View::Side));
    let (bt, bf, bs) = (bounds_or_unit(&views[it]), bounds_or_unit(&views[i_f]), bounds_or_unit(&views[is]));
    // column 0 holds top over front (shared u = x); row 1 holds front and side (shared v = z)
    let col0 = union(
        Bounds2 {
            min: [bt.min[0], 0.0],
            max: [bt.max[0], 0.0],
        },
        Bounds2 {
            min: [bf.min[0], 0.0],
            max: [bf.max[0], 0.0],
        },
    );
    let row1 = union(
        Bounds2 {
            min: [0.0, bf.min[1]],
            max: [0.0, bf.max[1]],
        },
        Bounds2 {
            min: [0.0, bs.min[1]],
            max: [0.0, bs.max[1]],
        },
    );
    let w = col0.width() + bs.width();
    let h = bt.height() + row1.height();
    let scale = ((avail - gap) / w).min((avail - gap) / h);
    let total = [w * scale + gap, h * scale + gap];
    let x0 = (canvas as f64 - total[0]) / 2.0;
    let y0 = (canvas as f64 - total[1]) / 2.0;
    let col0_left = x0;
    let col1_left = x0 + col0.width() * scale + gap;
    let row0_top = y0;
    let row1_top = y0 + bt.height() * scale + gap;
    let tx_col0 = col0_left - col0.min[0] * scale;
    let ty_row1 = row1_top + row1.max[1] * scale;
    let mut translate = vec![[0.0; 2]; 3];
    translate[it] = [tx_col0, row0_top + bt.max[1] * scale];
    translate[i_f] = [tx_col0, ty_row1];
    translate[is] = [col1_left - bs.min[0] * scale, ty_row1];
    Sheet {
        canvas,
        margin,
        scale,
        views: views
            .into_iter()
            .zip(translate)
            .map(|(drawing, translate)| PlacedView { drawing, translate })
            .collect(),
    }
}

fn grid(views: Vec<ViewDrawing>, canvas: u32, margin: f64, gap: f64, avail: f64) -> Sheet {
    let n = views.len();
    let cols = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(cols);
    let bounds: Vec<Bounds2> = views.iter().map(bounds_or_unit).collect();
    let cell_w = bounds.iter().map(Bounds2::width).fold(0.0, f64::max);
    let cell_h = bounds.iter().map(Bounds2::height).fold(0.0, f64::max);
    let gx = (cols - 1) as f64 * gap;
    let gy = (rows - 1) as f64 * gap;
    let scale = ((avail - gx) / (cols as f64 * cell_w)).min((avail - gy) / (rows as f64 * cell_h));
    let total = [cols as f64 * cell_w * scale + gx, rows as f64 * cell_h * scale + gy];
    let x0 = (canvas as f64 - total[0]) / 2.0;
    let y0 = (canvas as f64 - total[1]) / 2.0;
    let placed = views
        .into_iter()
        .zip(bounds)
        .enumerate()
        .map(|(k, (drawing, b))| {
            let (r, c) = (k / cols, k % cols);
            let cell_left = x0 + c as f64 * (cell_w * scale + gap);
            let cell_top = y0 + r as f64 * (cell_h * scale + gap);
            let left = cell_left + (cell_w - b.width()) * scale / 2.0;
            let top = cell_top + (cell_h - b.height()) * scale / 2.0;
            PlacedView {
                drawing,
                translate: [left - b.min[0] * scale, top + b.max[1] * scale],
            }
        })
        .collect();
    Sheet {
        canvas,
        margin,
        scale,
        views: placed,
    }
}
