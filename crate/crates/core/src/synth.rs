//! Seeded cabinet generator, prediction perturbation and corpus statistics.
//!
//! A generated cabinet is one base box split into N compartments by vertical
//! dividers. Each compartment stays empty or receives shelves, doors with
//! shelves behind them, or a stack of drawers. All corners lie on a 6 mm
//! lattice, so centers and sizes are multiples of 3 mm and the command codec
//! reproduces them up to its fixed bin-center offset.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Domain, ParamKind, PrimitiveSchema, Role};
use crate::program::{CabinetModel, OrientedBox, ParamValue, Params, PrimitiveInstance};
use crate::{PrimitiveCatalog, MAX_CABINET_EXTENT_MM, MAX_PRIMITIVES, MIN_CABINET_EXTENT_MM};

pub const LATTICE_MM: f64 = 6.0;
const MIN_COMPARTMENT_MM: f64 = 120.0;
const MIN_GAP_MM: f64 = 60.0;
const MIN_DRAWER_MM: f64 = 120.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("catalog has no primitive with role {0}")]
    MissingRole(&'static str),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub seed: u64,
    pub min_instances: usize,
    pub max_instances: usize,
    pub width_mm: (f64, f64),
    pub depth_mm: (f64, f64),
    pub height_mm: (f64, f64),
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            seed: 0,
            min_instances: 1,
            max_instances: MAX_PRIMITIVES,
            width_mm: (400.0, 2400.0),
            depth_mm: (300.0, 700.0),
            height_mm: (400.0, 2400.0),
        }
    }
}

impl SynthSpec {
    pub fn with_seed(seed: u64) -> Self {
        SynthSpec {
            seed,
            ..SynthSpec::default()
        }
    }

    pub fn check(&self) -> Result<(), SynthError> {
        if self.min_instances < 1 || self.min_instances > self.max_instances || self.max_instances > MAX_PRIMITIVES {
            return Err(SynthError::Spec(format!(
                "instance range [{}, {}] must lie within [1, {MAX_PRIMITIVES}]",
                self.min_instances, self.max_instances
            )));
        }
        for (name, (lo, hi)) in [("width", self.width_mm), ("depth", self.depth_mm), ("height", self.height_mm)] {
            if !(lo.is_finite() && hi.is_finite() && MIN_CABINET_EXTENT_MM <= lo && lo <= hi && hi <= MAX_CABINET_EXTENT_MM) {
                return Err(SynthError::Spec(format!(
                    "{name} range [{lo}, {hi}] must lie within [{MIN_CABINET_EXTENT_MM}, {MAX_CABINET_EXTENT_MM}]"
                )));
            }
        }
        Ok(())
    }
}

/// Per-sample seed derived from a corpus seed (SplitMix64 finalizer).
pub fn sample_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn lattice_floor(v: f64) -> f64 {
    (v / LATTICE_MM).floor() * LATTICE_MM
}

fn lattice_ceil(v: f64) -> f64 {
    (v / LATTICE_MM).ceil() * LATTICE_MM
}

/// A lattice value in [lo, hi], both rounded inward.
fn lattice_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let a = (lattice_ceil(lo) / LATTICE_MM) as i64;
    let b = (lattice_floor(hi) / LATTICE_MM) as i64;
    rng.random_range(a..=b.max(a)) as f64 * LATTICE_MM
}

fn aabb_box(min: [f64; 3], max: [f64; 3]) -> OrientedBox {
    OrientedBox::from_min_max(min, max).expect("generated boxes are non-degenerate")
}

/// A value inside the parameter's domain, or its default.
fn random_value(p: &crate::catalog::ParamSchema, rng: &mut ChaCha8Rng) -> Option<ParamValue> {
    match (&p.domain, p.kind) {
        (Some(Domain::Members(m)), ParamKind::Integer) => m.choose(rng).and_then(|s| s.parse().ok()).map(ParamValue::Int),
        (Some(Domain::Members(m)), _) => m.choose(rng).map(|s| ParamValue::Enum(s.clone())),
        (Some(Domain::Range { min, max }), ParamKind::Integer) => {
            Some(ParamValue::Int(rng.random_range(min.ceil() as i64..=max.floor() as i64)))
        }
        _ => p.default.clone(),
    }
}

fn random_params(schema: &PrimitiveSchema, rng: &mut ChaCha8Rng) -> Params {
    let mut out = Params::new();
    for p in &schema.params {
        if let Some(v) = random_value(p, rng) {
            out.set(&p.key, v);
        }
    }
    out
}

struct Ids<'a> {
    base: &'a PrimitiveSchema,
    panel: Option<&'a PrimitiveSchema>,
    door: Option<&'a PrimitiveSchema>,
    drawer: Option<&'a PrimitiveSchema>,
    shelves: Vec<&'a PrimitiveSchema>,
}

struct Builder<'a> {
    instances: Vec<PrimitiveInstance>,
    cap: usize,
    rng: &'a mut ChaCha8Rng,
}

impl Builder<'_> {
    fn room(&self) -> usize {
        self.cap - self.instances.len()
    }

    fn push(&mut self, schema: &PrimitiveSchema, min: [f64; 3], max: [f64; 3]) -> bool {
        if self.room() == 0 {
            return false;
        }
        let params = random_params(schema, self.rng);
        self.instances
            .push(PrimitiveInstance::new(schema.model_id.clone(), aabb_box(min, max)).with_params(params));
        true
    }
}

/// Deterministic cabinet for `spec.seed`. Retries internally until the
/// instance count falls in the requested range; if no attempt reaches the
/// minimum, returns the largest attempt.
pub fn generate(spec: &SynthSpec, catalog: &PrimitiveCatalog) -> Result<CabinetModel, SynthError> {
    spec.check()?;
    let base = catalog
        .schemas()
        .iter()
        .find(|s| s.role == Role::BaseBox && s.division.is_some())
        .ok_or(SynthError::MissingRole("base_box"))?;
    let ids = Ids {
        base,
        panel: catalog.with_role(Role::SidePanel),
        door: catalog.with_role(Role::Door),
        drawer: catalog.with_role(Role::Drawer),
        shelves: [Role::FixedShelf, Role::AdjustableShelf]
            .into_iter()
            .filter_map(|r| catalog.with_role(r))
            .collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut best: Option<CabinetModel> = None;
    for _ in 0..64 {
        let m = attempt(spec, catalog, &ids, &mut rng);
        if m.len() >= spec.min_instances {
            return Ok(m);
        }
        if best.as_ref().is_none_or(|b| m.len() > b.len()) {
            best = Some(m);
        }
    }
    Ok(best.expect("at least one attempt"))
}

fn attempt(spec: &SynthSpec, catalog: &PrimitiveCatalog, ids: &Ids, rng: &mut ChaCha8Rng) -> CabinetModel {
    let t = lattice_ceil(catalog.divider_thickness_mm.max(LATTICE_MM));
    let w = lattice_in(rng, spec.width_mm.0.max(2.0 * t + MIN_COMPARTMENT_MM), spec.width_mm.1.min(4494.0));
    let d = lattice_in(rng, spec.depth_mm.0.max(t + MIN_GAP_MM), spec.depth_mm.1.min(4494.0));
    let h = lattice_in(rng, spec.height_mm.0.max(2.0 * t + MIN_GAP_MM), spec.height_mm.1.min(4494.0));
    let w = w.max(lattice_ceil(2.0 * t + LATTICE_MM));
    let target = rng.random_range(spec.min_instances..=spec.max_instances);

    let division = ids.base.division.as_ref().expect("base box has a division rule");
    let (n_lo, n_hi) = match ids.base.param(&division.count_key).and_then(|p| p.domain.clone()) {
        Some(Domain::Range { min, max }) => (min.max(1.0) as usize, max as usize),
        _ => (1, 1),
    };
    let inner = w - 2.0 * t;
    let fit = ((inner + t) / (MIN_COMPARTMENT_MM + t)).floor().max(1.0) as usize;
    let panels_ok = ids.panel.is_some();
    let n_max = n_hi.min(fit).min(if panels_ok { target } else { 1 }).max(n_lo.min(fit));
    let n = rng.random_range(n_lo.min(n_max)..=n_max);

    // compartment widths: lattice cuts of the free width
    let free = inner - (n as f64 - 1.0) * t;
    let mut cuts: Vec<f64> = Vec::new();
    let slack = free - n as f64 * MIN_COMPARTMENT_MM;
    for _ in 1..n {
        cuts.push(lattice_floor(rng.random_range(0.0..=slack.max(0.0))));
    }
    cuts.sort_by(f64::total_cmp);
    let mut widths = Vec::with_capacity(n);
    let mut prev = 0.0;
    for c in &cuts {
        widths.push(MIN_COMPARTMENT_MM + c - prev);
        prev = *c;
    }
    let used: f64 = widths.iter().sum();
    widths.push(free - used);

    let mut b = Builder {
        instances: Vec::new(),
        cap: target,
        rng,
    };
    b.push(ids.base, [0.0; 3], [w, d, h]);
    let mut params = b.instances[0].params.clone();
    params.set(&division.count_key, ParamValue::Int(n as i64));
    for (i, wi) in widths.iter().enumerate() {
        params.set(&division.width_key(i), ParamValue::real(*wi));
    }
    for i in n..26 {
        params.remove(&division.width_key(i));
    }
    b.instances[0].params = params;

    let mut x = t;
    let mut spans = Vec::with_capacity(n);
    for (i, wi) in widths.iter().enumerate() {
        spans.push((x, x + wi));
        x += wi;
        if i + 1 < n {
            b.push(ids.panel.expect("checked"), [x, 0.0, t], [x + t, d, h - t]);
            x += t;
        }
    }
    let (z0, z1) = (t, h - t);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(b.rng);
    for ci in order {
        let (x0, x1) = spans[ci];
        let kind = b.rng.random_range(0..100);
        match kind {
            0..10 => {}
            10..40 => fill_shelves(&mut b, ids, t, [x0, 0.0, z0], [x1, d, z1]),
            40..75 => {
                if let Some(door) = ids.door {
                    let two = x1 - x0 >= 600.0 && b.rng.random_bool(0.7);
                    if two {
                        let mid = lattice_floor((x0 + x1) / 2.0);
                        b.push(door, [x0, 0.0, z0], [mid, t, z1]);
                        b.push(door, [mid, 0.0, z0], [x1, t, z1]);
                    } else {
                        b.push(door, [x0, 0.0, z0], [x1, t, z1]);
                    }
                }
                fill_shelves(&mut b, ids, t, [x0, t, z0], [x1, d, z1]);
            }
            _ => fill_drawers(&mut b, ids, [x0, 0.0, z0], [x1, d, z1]),
        }
    }
    CabinetModel::new(b.instances)
}

fn fill_shelves(b: &mut Builder, ids: &Ids, t: f64, lo: [f64; 3], hi: [f64; 3]) {
    let Some(&shelf) = ids.shelves.choose(b.rng) else { return };
    let h = hi[2] - lo[2];
    let k_max = (((h - MIN_GAP_MM) / (t + MIN_GAP_MM)).floor().max(0.0) as usize).min(6);
    if k_max == 0 {
        return;
    }
    let k = b.rng.random_range(1..=k_max);
    for j in 1..=k {
        let z = lattice_floor(lo[2] + h * j as f64 / (k as f64 + 1.0) - t / 2.0);
        if !b.push(shelf, [lo[0], lo[1], z], [hi[0], hi[1], z + t]) {
            return;
        }
    }
}

fn fill_drawers(b: &mut Builder, ids: &Ids, lo: [f64; 3], hi: [f64; 3]) {
    let Some(drawer) = ids.drawer else { return };
    let h = hi[2] - lo[2];
    let m_max = ((h / MIN_DRAWER_MM).floor() as usize).min(6);
    if m_max < 1 {
        return;
    }
    let m = b.rng.random_range(1..=m_max);
    let mut z = lo[2];
    for j in 1..=m {
        let top = if j == m { hi[2] } else { lattice_floor(lo[2] + h * j as f64 / m as f64) };
        if !b.push(drawer, [lo[0], lo[1], z], [hi[0], hi[1], top]) {
            return;
        }
        z = top;
    }
}

fn tenth(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range((lo * 10.0).ceil() as i64..=(hi * 10.0).floor() as i64) as f64 / 10.0
}

const NAME_CHARS: &[char] = &['a', 'Z', '7', ' ', '_', '-', '"', '\\', ':', '#', '\'', 'é', '\n', '\t', '{', ','];

/// Free-form model for stress tests: 1 to `max_instances` catalog instances
/// at arbitrary rotations on the 0.1 grid, each fully inside the first
/// octant, with random valid parameters and occasional awkward names.
/// Instances may overlap.
pub fn random_model(seed: u64, catalog: &PrimitiveCatalog, max_instances: usize) -> CabinetModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_instances.max(1));
    let instances = (0..n)
        .map(|_| {
            let schema = &catalog.schemas()[rng.random_range(0..catalog.len())];
            let size = [tenth(&mut rng, 0.1, 1500.0), tenth(&mut rng, 0.1, 1500.0), tenth(&mut rng, 0.1, 1500.0)];
            let rotation = match rng.random_range(0..3) {
                0 => 0.0,
                1 => rng.random_range(0..4) as f64 * 90.0,
                _ => tenth(&mut rng, 0.0, 359.9),
            };
            let reach = size[0].hypot(size[1]) / 2.0;
            let position = [
                tenth(&mut rng, reach + 0.1, reach + 2000.0),
                tenth(&mut rng, reach + 0.1, reach + 2000.0),
                tenth(&mut rng, size[2] / 2.0 + 0.1, size[2] / 2.0 + 2000.0),
            ];
            let bbox = OrientedBox::new(position, size, rotation).expect("positive sizes");
            let mut params = random_params(schema, &mut rng);
            if let Some(div) = &schema.division {
                if let Some(ParamValue::Int(count)) = params.get(&div.count_key).cloned() {
                    if rng.random_bool(0.7) {
                        for i in 0..count as usize {
                            params.set(&div.width_key(i), ParamValue::real(tenth(&mut rng, 1.0, 4500.0)));
                        }
                    }
                }
            }
            let mut inst = PrimitiveInstance::new(schema.model_id.clone(), bbox).with_params(params);
            if rng.random_bool(0.3) {
                let len = rng.random_range(0..12);
                inst.name = Some((0..len).map(|_| *NAME_CHARS.choose(&mut rng).expect("non-empty")).collect());
            }
            inst
        })
        .collect();
    CabinetModel::new(instances)
}

/// Degradation applied to a ground-truth model to produce a synthetic
/// prediction. Rates are probabilities except `drop_rate` and `add_rate`,
/// which remove or add exactly round(rate * n) instances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct PerturbSpec {
    pub seed: u64,
    pub position_sigma_mm: f64,
    pub size_sigma_mm: f64,
    pub id_swap_rate: f64,
    pub drop_rate: f64,
    pub add_rate: f64,
    pub param_corruption_rate: f64,
}

impl PerturbSpec {
    pub fn check(&self) -> Result<(), SynthError> {
        for (name, v) in [
            ("id_swap_rate", self.id_swap_rate),
            ("drop_rate", self.drop_rate),
            ("add_rate", self.add_rate),
            ("param_corruption_rate", self.param_corruption_rate),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SynthError::Spec(format!("{name} = {v} must be in [0, 1]")));
            }
        }
        for (name, v) in [("position_sigma_mm", self.position_sigma_mm), ("size_sigma_mm", self.size_sigma_mm)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(SynthError::Spec(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        Ok(())
    }
}

fn corrupt(params: &mut Params, schema: &PrimitiveSchema, rng: &mut ChaCha8Rng) {
    let keys: Vec<String> = params.keys().map(String::from).collect();
    let Some(key) = keys.choose(rng) else { return };
    let current = params.get(key).cloned().expect("key present");
    let next = match (schema.param(key).and_then(|p| p.domain.as_ref()), &current) {
        (Some(Domain::Members(m)), _) => {
            let others: Vec<&String> = m.iter().filter(|s| **s != current.to_string()).collect();
            match others.choose(rng) {
                Some(s) if matches!(current, ParamValue::Int(_)) => s.parse().map(ParamValue::Int).unwrap_or(current),
                Some(s) => ParamValue::Enum((*s).clone()),
                None => current,
            }
        }
        (_, ParamValue::Int(i)) => ParamValue::Int(i + 1),
        (_, ParamValue::Real(r)) => ParamValue::real(r + LATTICE_MM),
        (_, ParamValue::Enum(s)) | (_, ParamValue::Text(s)) => ParamValue::Text(format!("{s}x")),
    };
    params.set(key, next);
}

/// Seeded edits in a fixed order: drops, id swaps, parameter corruption,
/// pose jitter, additions. All-zero rates return the input unchanged.
pub fn perturb(model: &CabinetModel, catalog: &PrimitiveCatalog, spec: &PerturbSpec) -> Result<CabinetModel, SynthError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut instances = model.instances.clone();

    let n = instances.len();
    let drops = ((spec.drop_rate * n as f64).round() as usize).min(n);
    if drops > 0 {
        let mut gone = rand::seq::index::sample(&mut rng, n, drops).into_vec();
        gone.sort_unstable();
        let mut k = 0;
        instances.retain(|_| {
            let keep = gone.binary_search(&k).is_err();
            k += 1;
            keep
        });
    }

    if spec.id_swap_rate > 0.0 && catalog.len() > 1 {
        for inst in &mut instances {
            if rng.random_bool(spec.id_swap_rate) {
                let others: Vec<&PrimitiveSchema> = catalog.schemas().iter().filter(|s| s.model_id != inst.model_id).collect();
                let s = others.choose(&mut rng).expect("catalog has another model");
                inst.model_id = s.model_id.clone();
                inst.params = s.defaults();
            }
        }
    }

    if spec.param_corruption_rate > 0.0 {
        for inst in &mut instances {
            if rng.random_bool(spec.param_corruption_rate) {
                if let Some(schema) = catalog.get(&inst.model_id) {
                    corrupt(&mut inst.params, schema, &mut rng);
                }
            }
        }
    }

    if spec.position_sigma_mm > 0.0 || spec.size_sigma_mm > 0.0 {
        let pn = Normal::new(0.0, spec.position_sigma_mm).expect("checked");
        let sn = Normal::new(0.0, spec.size_sigma_mm).expect("checked");
        for inst in &mut instances {
            let mut p = inst.bbox.position();
            let mut s = inst.bbox.size();
            for i in 0..3 {
                if spec.position_sigma_mm > 0.0 {
                    p[i] += pn.sample(&mut rng);
                }
                if spec.size_sigma_mm > 0.0 {
                    s[i] = (s[i] + sn.sample(&mut rng)).max(1.0);
                }
            }
            inst.bbox = OrientedBox::new(p, s, inst.bbox.rotation_deg()).expect("finite and positive");
        }
    }

    let adds = (spec.add_rate * n as f64).round() as usize;
    if adds > 0 && !catalog.is_empty() {
        let (lo, hi) = model.aabb().unwrap_or(([0.0; 3], [1000.0; 3]));
        for _ in 0..adds {
            let s = &catalog.schemas()[rng.random_range(0..catalog.len())];
            let mut size = [0.0; 3];
            let mut pos = [0.0; 3];
            for i in 0..3 {
                let ext = (hi[i] - lo[i]).max(10.0);
                size[i] = ext * rng.random_range(0.05..0.5);
                pos[i] = lo[i] + size[i] / 2.0 + rng.random_range(0.0..=(ext - size[i]));
            }
            let bbox = OrientedBox::new(pos, size, 0.0).expect("finite and positive");
            instances.push(PrimitiveInstance::new(s.model_id.clone(), bbox).with_params(s.defaults()));
        }
    }
    Ok(CabinetModel::new(instances))
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CorpusStats {
    pub models: usize,
    pub total_instances: usize,
    /// Number of cabinets by primitive count.
    pub primitives_per_cabinet: BTreeMap<usize, usize>,
    /// Number of distinct primitives by the number of model-specific
    /// parameters they carry (the maximum seen over their instances).
    pub params_per_primitive: BTreeMap<usize, usize>,
    pub unique_primitives: usize,
    pub distinct_params: usize,
}

/// Order-independent corpus statistics.
pub fn stats<'a>(corpus: impl IntoIterator<Item = &'a CabinetModel>) -> CorpusStats {
    let mut out = CorpusStats::default();
    let mut per_model: BTreeMap<&str, usize> = BTreeMap::new();
    let mut keys: BTreeSet<(&str, &str)> = BTreeSet::new();
    for m in corpus {
        out.models += 1;
        out.total_instances += m.len();
        *out.primitives_per_cabinet.entry(m.len()).or_default() += 1;
        for inst in &m.instances {
            let e = per_model.entry(&inst.model_id).or_default();
            *e = (*e).max(inst.params.len());
            for k in inst.params.keys() {
                keys.insert((&inst.model_id, k));
            }
        }
    }
    for count in per_model.values() {
        *out.params_per_primitive.entry(*count).or_default() += 1;
    }
    out.unique_primitives = per_model.len();
    out.distinct_params = keys.len();
    out
}

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestFilters {
    pub min_extent_mm: u32,
    pub max_extent_mm: u32,
    pub max_primitives: usize,
}

impl Default for ManifestFilters {
    fn default() -> Self {
        ManifestFilters {
            min_extent_mm: MIN_CABINET_EXTENT_MM as u32,
            max_extent_mm: MAX_CABINET_EXTENT_MM as u32,
            max_primitives: MAX_PRIMITIVES,
        }
    }
}

/// `manifest.json` of a corpus directory: explicit id to file mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filters: Option<ManifestFilters>,
    pub samples: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Sample id for index `i` of a generated corpus.
pub fn sample_id(i: usize) -> String {
    format!("cab-{i:05}")
}
