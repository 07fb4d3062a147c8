use super::{CabinetModel, ParamValue};
use crate::catalog::{validate_params, PrimitiveCatalog};
use crate::diag::{Code, Diagnostic};
use crate::geometry::box_corners;
use crate::{MAX_CABINET_EXTENT_MM, MAX_PRIMITIVES, MIN_CABINET_EXTENT_MM};

/// Slack allowed below zero for the first-octant rule.
pub const OCTANT_EPSILON_MM: f64 = 1e-6;

/// Every invariant violation of `model`; with `filters`, also the dataset
/// filter rules (1..=48 primitives, overall extent within 100..=4500 mm).
/// An empty result means the model is valid. Warnings do not invalidate.
pub fn validate(model: &CabinetModel, catalog: &PrimitiveCatalog, filters: bool) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if model.is_empty() {
        out.push(Diagnostic::error(Code::EmptyModel, "model has no primitive instances"));
        return out;
    }
    for (i, inst) in model.instances.iter().enumerate() {
        match catalog.get(&inst.model_id) {
            None => out.push(Diagnostic::error(Code::UnknownModel, format!("unknown model id `{}`", inst.model_id)).with_instance(i)),
            Some(schema) => {
                out.extend(validate_params(schema, &inst.params).into_iter().map(|d| d.with_instance(i)));
                if let Some(rule) = &schema.division {
                    let widths: f64 = inst
                        .params
                        .iter()
                        .filter(|(k, _)| rule.width_index(k).is_some())
                        .filter_map(|(_, v)| v.as_f64())
                        .sum();
                    let count = match inst.params.get(&rule.count_key) {
                        Some(ParamValue::Int(n)) => *n,
                        _ => 1,
                    };
                    let t = catalog.divider_thickness_mm;
                    let interior = inst.bbox.size()[0] - 2.0 * t;
                    let needed = widths + (count - 1).max(0) as f64 * t;
                    if widths > 0.0 && needed > interior + 1e-9 {
                        out.push(
                            Diagnostic::warning(
                                Code::DivisionWidth,
                                format!("divided widths plus dividers ({needed} mm) exceed the interior width ({interior} mm)"),
                            )
                            .with_instance(i),
                        );
                    }
                }
            }
        }
        let low = box_corners(&inst.bbox)
            .iter()
            .flat_map(|c| c.iter().copied())
            .fold(f64::INFINITY, f64::min);
        if low < -OCTANT_EPSILON_MM {
            out.push(
                Diagnostic::error(Code::OutsideOctant, format!("instance reaches {low:.3} mm, outside the first octant")).with_instance(i),
            );
        }
    }
    if filters {
        if model.len() > MAX_PRIMITIVES {
            out.push(Diagnostic::error(
                Code::CountFilter,
                format!("model has {} primitives (at most {MAX_PRIMITIVES})", model.len()),
            ));
        }
        if let Some((min, max)) = model.aabb() {
            let extent = (0..3).map(|i| max[i] - min[i]).fold(0.0, f64::max);
            if !(MIN_CABINET_EXTENT_MM..=MAX_CABINET_EXTENT_MM).contains(&extent) {
                out.push(Diagnostic::error(
                    Code::SizeFilter,
                    format!("overall extent {extent} mm is outside [{MIN_CABINET_EXTENT_MM}, {MAX_CABINET_EXTENT_MM}] mm"),
                ));
            }
        }
    }
    out
}
