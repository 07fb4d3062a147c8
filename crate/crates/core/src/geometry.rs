//! Oriented-box kernel.
//!
//! World frame: +z is up, the cabinet front faces -y and the origin sits at a
//! cabinet corner so valid models occupy the first octant. Boxes rotate only
//! about z, so the overlap of two boxes is the intersection of their convex
//! footprints times the overlap of their z intervals, which makes 3D IoU exact.

use std::cmp::Ordering;

use crate::program::{CabinetModel, OrientedBox};

/// Absolute tolerance of the clipping predicates, in mm.
pub const CLIP_EPSILON: f64 = 1e-9;

/// Tolerance for treating projected segments as collinear and touching, in mm.
pub const MERGE_EPSILON: f64 = 1e-6;

/// Cosine and sine of `deg`, exact at multiples of 90 degrees.
pub fn rotation_cos_sin(deg: f64) -> (f64, f64) {
    let d = deg.rem_euclid(360.0);
    if d % 90.0 == 0.0 {
        match (d / 90.0) as u8 {
            0 => return (1.0, 0.0),
            1 => return (0.0, 1.0),
            2 => return (-1.0, 0.0),
            _ => return (0.0, -1.0),
        }
    }
    let r = d.to_radians();
    (r.cos(), r.sin())
}

/// Footprint corners, counter-clockwise seen from +z.
pub fn footprint(b: &OrientedBox) -> FootprintPolygon {
    let [cx, cy, _] = b.position();
    let [sx, sy, _] = b.size();
    let (c, s) = rotation_cos_sin(b.rotation_deg());
    let (hx, hy) = (sx / 2.0, sy / 2.0);
    let local = [[-hx, -hy], [hx, -hy], [hx, hy], [-hx, hy]];
    FootprintPolygon(local.iter().map(|[u, v]| [cx + u * c - v * s, cy + u * s + v * c]).collect())
}

/// The 8 world corners: the bottom face counter-clockwise, then the top face
/// in the same order.
pub fn box_corners(b: &OrientedBox) -> [[f64; 3]; 8] {
    let fp = footprint(b);
    let z0 = b.position()[2] - b.size()[2] / 2.0;
    let z1 = b.position()[2] + b.size()[2] / 2.0;
    let mut out = [[0.0; 3]; 8];
    for (i, p) in fp.0.iter().enumerate() {
        out[i] = [p[0], p[1], z0];
        out[i + 4] = [p[0], p[1], z1];
    }
    out
}

/// World-frame axis-aligned bounds of one box.
pub fn box_aabb(b: &OrientedBox) -> ([f64; 3], [f64; 3]) {
    bounds(box_corners(b).iter())
}

fn bounds<'a>(points: impl Iterator<Item = &'a [f64; 3]>) -> ([f64; 3], [f64; 3]) {
    let mut min = [f64::INFINITY; 3];
    let mut max = [f64::NEG_INFINITY; 3];
    for p in points {
        for i in 0..3 {
            min[i] = min[i].min(p[i]);
            max[i] = max[i].max(p[i]);
        }
    }
    (min, max)
}

/// Tight world AABB over every instance corner; `None` for an empty model.
pub fn model_aabb(model: &CabinetModel) -> Option<([f64; 3], [f64; 3])> {
    if model.is_empty() {
        return None;
    }
    let corners: Vec<[f64; 3]> = model.instances.iter().flat_map(|i| box_corners(&i.bbox)).collect();
    Some(bounds(corners.iter()))
}

/// Convex polygon in the xy-plane, counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct FootprintPolygon(pub Vec<[f64; 2]>);

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl FootprintPolygon {
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.0
    }

    /// Signed shoelace area; positive for counter-clockwise polygons.
    pub fn signed_area(&self) -> f64 {
        let n = self.0.len();
        if n < 3 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..n {
            let [x0, y0] = self.0[i];
            let [x1, y1] = self.0[(i + 1) % n];
            acc += x0 * y1 - x1 * y0;
        }
        acc / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area().max(0.0)
    }

    /// Convex and counter-clockwise, allowing collinear vertices within `eps`.
    pub fn is_convex_ccw(&self, eps: f64) -> bool {
        let n = self.0.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| cross(self.0[i], self.0[(i + 1) % n], self.0[(i + 2) % n]) >= -eps)
    }

    /// Sutherland-Hodgman: clips `self` against every edge of the convex
    /// counter-clockwise `clip` polygon. The result may have fewer than three
    /// vertices when the intersection vanishes.
    pub fn clip(&self, clip: &FootprintPolygon) -> FootprintPolygon {
        let mut output = self.0.clone();
        let m = clip.0.len();
        for i in 0..m {
            if output.is_empty() {
                break;
            }
            let a = clip.0[i];
            let b = clip.0[(i + 1) % m];
            let input = std::mem::take(&mut output);
            let n = input.len();
            for j in 0..n {
                let s = input[j];
                let e = input[(j + 1) % n];
                let ds = cross(a, b, s);
                let de = cross(a, b, e);
                let s_in = ds >= -CLIP_EPSILON;
                let e_in = de >= -CLIP_EPSILON;
                if e_in {
                    if !s_in {
                        output.push(intersect(s, e, ds, de));
                    }
                    output.push(e);
                } else if s_in {
                    output.push(intersect(s, e, ds, de));
                }
            }
        }
        dedup_ring(&mut output);
        FootprintPolygon(output)
    }
}

fn intersect(s: [f64; 2], e: [f64; 2], ds: f64, de: f64) -> [f64; 2] {
    let t = ds / (ds - de);
    [s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]
}

fn dedup_ring(points: &mut Vec<[f64; 2]>) {
    let close = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).abs() <= CLIP_EPSILON && (a[1] - b[1]).abs() <= CLIP_EPSILON;
    points.dedup_by(|b, a| close(*a, *b));
    while points.len() > 1 && close(points[0], points[points.len() - 1]) {
        points.pop();
    }
}

fn z_range(b: &OrientedBox) -> (f64, f64) {
    let z = b.position()[2];
    let h = b.size()[2] / 2.0;
    (z - h, z + h)
}

fn total_order(a: &OrientedBox, b: &OrientedBox) -> Ordering {
    let key = |x: &OrientedBox| {
        let [p0, p1, p2] = x.position();
        let [s0, s1, s2] = x.size();
        [p0, p1, p2, s0, s1, s2, x.rotation_deg()]
    };
    key(a)
        .iter()
        .zip(key(b).iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Exact intersection volume of two z-rotated boxes.
pub fn intersection_volume(a: &OrientedBox, b: &OrientedBox) -> f64 {
    let (a0, a1) = z_range(a);
    let (b0, b1) = z_range(b);
    let dz = a1.min(b1) - a0.max(b0);
    if dz <= 0.0 {
        return 0.0;
    }
    footprint(a).clip(&footprint(b)).area() * dz
}

/// 3D intersection-over-union of two boxes rotated about z.
///
/// Identical boxes give exactly 1, touching or disjoint boxes exactly 0, and
/// the result does not depend on argument order.
pub fn iou3d(a: &OrientedBox, b: &OrientedBox) -> f64 {
    if a == b {
        return 1.0;
    }
    let (a, b) = if total_order(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
    let inter = intersection_volume(a, b);
    if inter <= 0.0 {
        return 0.0;
    }
    let union = a.volume() + b.volume() - inter;
    (inter / union).clamp(0.0, 1.0)
}

/// IoU of the two boxes' world AABBs.
pub fn iou_aabb(a: &OrientedBox, b: &OrientedBox) -> f64 {
    let (amin, amax) = box_aabb(a);
    let (bmin, bmax) = box_aabb(b);
    aabb_iou(amin, amax, bmin, bmax)
}

/// IoU of two axis-aligned boxes given by their corners.
pub fn aabb_iou(amin: [f64; 3], amax: [f64; 3], bmin: [f64; 3], bmax: [f64; 3]) -> f64 {
    let mut inter = 1.0;
    for i in 0..3 {
        let d = amax[i].min(bmax[i]) - amin[i].max(bmin[i]);
        if d <= 0.0 {
            return 0.0;
        }
        inter *= d;
    }
    let va: f64 = (0..3).map(|i| amax[i] - amin[i]).product();
    let vb: f64 = (0..3).map(|i| bmax[i] - bmin[i]).product();
    inter / (va + vb - inter)
}

/// Which IoU the evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IouMode {
    /// Exact IoU of the rotated boxes.
    #[default]
    Rotated,
    /// IoU of the boxes' world AABBs.
    Aabb,
}

pub fn iou(a: &OrientedBox, b: &OrientedBox, mode: IouMode) -> f64 {
    match mode {
        IouMode::Rotated => iou3d(a, b),
        IouMode::Aabb => iou_aabb(a, b),
    }
}

/// Orthographic view directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum View {
    /// Onto the xz-plane, looking along +y; sheet axes (x, z).
    Front,
    /// Onto the xy-plane, looking along -z; sheet axes (x, y).
    Top,
    /// Onto the yz-plane; sheet axes (y, z).
    Side,
    /// Front-style projection of the instances behind a cut plane.
    Section,
}

impl View {
    pub fn project(self, p: [f64; 3]) -> [f64; 2] {
        match self {
            View::Front | View::Section => [p[0], p[2]],
            View::Top => [p[0], p[1]],
            View::Side => [p[1], p[2]],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            View::Front => "front",
            View::Top => "top",
            View::Side => "side",
            View::Section => "section",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "front" => View::Front,
            "top" => View::Top,
            "side" => View::Side,
            "section" => View::Section,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2 {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl Segment2 {
    pub fn new(a: [f64; 2], b: [f64; 2]) -> Self {
        Segment2 { a, b }
    }

    pub fn length(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }
}

const BOX_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 4),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

/// Projected edges of one box, without merging.
pub fn box_edges_2d(b: &OrientedBox, view: View) -> Vec<Segment2> {
    let corners = box_corners(b);
    BOX_EDGES
        .iter()
        .map(|&(i, j)| Segment2::new(view.project(corners[i]), view.project(corners[j])))
        .filter(|s| s.length() > MERGE_EPSILON)
        .collect()
}

/// Wireframe of a box's 12 edges projected into `view`, with coincident and
/// overlapping collinear segments merged.
pub fn project_box(b: &OrientedBox, view: View) -> Vec<Segment2> {
    merge_segments(box_edges_2d(b, view))
}

struct Carrier {
    theta: f64,
    dir: [f64; 2],
    seg: Segment2,
}

/// Merges collinear segments that overlap or touch end to end and drops
/// zero-length ones. Output is sorted by direction, offset and position.
pub fn merge_segments(segments: Vec<Segment2>) -> Vec<Segment2> {
    let mut carriers: Vec<Carrier> = segments
        .into_iter()
        .filter_map(|seg| {
            let len = seg.length();
            if len.is_nan() || len <= MERGE_EPSILON {
                return None;
            }
            let mut dir = [(seg.b[0] - seg.a[0]) / len, (seg.b[1] - seg.a[1]) / len];
            if dir[0] < -1e-12 || (dir[0].abs() <= 1e-12 && dir[1] < 0.0) {
                dir = [-dir[0], -dir[1]];
            }
            if dir[0].abs() <= 1e-12 {
                dir = [0.0, 1.0];
            } else if dir[1].abs() <= 1e-12 {
                dir = [1.0, 0.0];
            }
            Some(Carrier {
                theta: dir[1].atan2(dir[0]),
                dir,
                seg,
            })
        })
        .collect();
    carriers.sort_by(|a, b| a.theta.total_cmp(&b.theta));

    let mut out = Vec::new();
    let mut i = 0;
    while i < carriers.len() {
        let mut j = i + 1;
        while j < carriers.len() && carriers[j].theta - carriers[j - 1].theta <= 1e-9 {
            j += 1;
        }
        merge_parallel(&carriers[i..j], &mut out);
        i = j;
    }
    out
}

fn merge_parallel(group: &[Carrier], out: &mut Vec<Segment2>) {
    let d = group[0].dir;
    let n = [-d[1], d[0]];
    let dot = |u: [f64; 2], v: [f64; 2]| u[0] * v[0] + u[1] * v[1];
    // (offset, t0, t1) per segment
    let mut lines: Vec<(f64, f64, f64)> = group
        .iter()
        .map(|c| {
            let c0 = dot(n, c.seg.a);
            let c1 = dot(n, c.seg.b);
            let (t0, t1) = (dot(d, c.seg.a), dot(d, c.seg.b));
            ((c0 + c1) / 2.0, t0.min(t1), t0.max(t1))
        })
        .collect();
    lines.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let point = |c: f64, t: f64| {
        let p = [c * n[0] + t * d[0], c * n[1] + t * d[1]];
        p.map(|v| if v == 0.0 { 0.0 } else { v })
    };
    let mut k = 0;
    while k < lines.len() {
        let offset = lines[k].0;
        let mut m = k + 1;
        while m < lines.len() && lines[m].0 - lines[m - 1].0 <= MERGE_EPSILON {
            m += 1;
        }
        let mut spans: Vec<(f64, f64)> = lines[k..m].iter().map(|l| (l.1, l.2)).collect();
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut cur = spans[0];
        for &(t0, t1) in &spans[1..] {
            if t0 <= cur.1 + MERGE_EPSILON {
                cur.1 = cur.1.max(t1);
            } else {
                out.push(Segment2::new(point(offset, cur.0), point(offset, cur.1)));
                cur = (t0, t1);
            }
        }
        out.push(Segment2::new(point(offset, cur.0), point(offset, cur.1)));
        k = m;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: [f64; 3], s: [f64; 3], r: f64) -> OrientedBox {
        OrientedBox::new(p, s, r).unwrap()
    }

    #[test]
    fn corners_identity_rotation() {
        let c = box_corners(&b([0.0; 3], [2.0; 3], 0.0));
        for p in c {
            assert!(p.iter().all(|v| v.abs() == 1.0));
        }
        let mut uniq: Vec<_> = c.iter().map(|p| p.map(|v| v as i32)).collect();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 8);
    }

    #[test]
    fn quarter_turn_swaps_footprint() {
        let (min, max) = box_aabb(&b([0.0; 3], [2.0, 4.0, 2.0], 90.0));
        assert_eq!([max[0] - min[0], max[1] - min[1]], [4.0, 2.0]);
    }

    #[test]
    fn rotated_cube_vertex() {
        let fp = footprint(&b([0.0; 3], [1.0; 3], 45.0));
        let h = 2f64.sqrt() / 2.0;
        assert!(fp.0.iter().any(|p| (p[0] - h).abs() < 1e-12 && p[1].abs() < 1e-12));
    }

    #[test]
    fn iou_basics() {
        let a = b([0.5, 0.5, 0.5], [1.0; 3], 0.0);
        assert_eq!(iou3d(&a, &a), 1.0);
        let far = b([0.5, 0.5, 5.5], [1.0; 3], 0.0);
        assert_eq!(iou3d(&a, &far), 0.0);
        let shifted = b([1.0, 0.5, 0.5], [1.0; 3], 0.0);
        assert!((iou3d(&a, &shifted) - 1.0 / 3.0).abs() < 1e-9);
        let touching = b([1.5, 0.5, 0.5], [1.0; 3], 0.0);
        assert_eq!(iou3d(&a, &touching), 0.0);
    }

    #[test]
    fn rotated_iou_differs_from_aabb() {
        let a = b([0.0, 0.0, 0.0], [2.0, 2.0, 2.0], 0.0);
        let c = b([0.0, 0.0, 0.0], [2.0, 2.0, 2.0], 45.0);
        // octagon overlap of a square and its 45 degree copy
        let expected_area = 8.0 * (2f64.sqrt() - 1.0);
        let v = expected_area * 2.0;
        assert!((iou3d(&a, &c) - v / (16.0 - v)).abs() < 1e-9);
        assert!(iou_aabb(&a, &c) < 1.0);
        assert!((iou_aabb(&a, &c) - 8.0 / 16.0).abs() < 1e-9);
    }

    #[test]
    fn front_view_of_axis_aligned_box_is_a_rectangle() {
        let segs = project_box(&b([1.0, 1.0, 1.0], [2.0, 2.0, 2.0], 0.0), View::Front);
        assert_eq!(segs.len(), 4);
    }

    #[test]
    fn rotated_views() {
        let bx = b([10.0, 10.0, 10.0], [2.0, 4.0, 2.0], 45.0);
        assert_eq!(project_box(&bx, View::Top).len(), 4);
        assert_eq!(project_box(&bx, View::Front).len(), 6);
    }

    #[test]
    fn merge_touching_and_overlapping() {
        let segs = vec![
            Segment2::new([0.0, 0.0], [1.0, 0.0]),
            Segment2::new([2.0, 0.0], [1.0, 0.0]),
            Segment2::new([0.5, 0.0], [1.5, 0.0]),
            Segment2::new([3.0, 0.0], [4.0, 0.0]),
            Segment2::new([0.0, 1.0], [1.0, 1.0]),
            Segment2::new([5.0, 5.0], [5.0, 5.0]),
        ];
        let merged = merge_segments(segs);
        assert_eq!(
            merged,
            vec![
                Segment2::new([0.0, 0.0], [2.0, 0.0]),
                Segment2::new([3.0, 0.0], [4.0, 0.0]),
                Segment2::new([0.0, 1.0], [1.0, 1.0]),
            ]
        );
    }

    #[test]
    fn model_bounds() {
        let m = CabinetModel::new(vec![crate::PrimitiveInstance::new("M", b([0.0; 3], [1.0; 3], 0.0))]);
        assert_eq!(model_aabb(&m), Some(([-0.5; 3], [0.5; 3])));
        assert_eq!(model_aabb(&CabinetModel::default()), None);
    }
}
