//! Seeded degradation of the geometry layer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use super::ViewDrawing;
use crate::geometry::Segment2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub p_drop: f64,
    pub jitter_sigma: f64,
    pub p_spurious: f64,
}

impl NoiseSpec {
    /// Placeholder magnitudes, not calibrated against any dataset.
    pub const PLACEHOLDER: NoiseSpec = NoiseSpec {
        p_drop: 0.05,
        jitter_sigma: 2.0,
        p_spurious: 0.02,
    };

    pub const NONE: NoiseSpec = NoiseSpec {
        p_drop: 0.0,
        jitter_sigma: 0.0,
        p_spurious: 0.0,
    };
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec::PLACEHOLDER
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("{name} = {value} is not a probability")]
    Probability { name: &'static str, value: f64 },
    #[error("jitter sigma {0} must be finite and non-negative")]
    Sigma(f64),
}

/// Drops each geometry segment with `p_drop`, jitters surviving endpoints
/// with N(0, sigma) mm per coordinate, and after each original segment adds a
/// short random segment inside the view bounds with `p_spurious`.
/// Annotations pass through untouched.
pub fn inject_noise(views: Vec<ViewDrawing>, spec: &NoiseSpec, seed: u64) -> Result<Vec<ViewDrawing>, NoiseError> {
    for (name, value) in [("p_drop", spec.p_drop), ("p_spurious", spec.p_spurious)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(NoiseError::Probability { name, value });
        }
    }
    if !(spec.jitter_sigma.is_finite() && spec.jitter_sigma >= 0.0) {
        return Err(NoiseError::Sigma(spec.jitter_sigma));
    }
    let normal = Normal::new(0.0, spec.jitter_sigma).expect("sigma checked");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(views
        .into_iter()
        .map(|mut v| {
            let bounds = v.geometry_bounds();
            let span = bounds.width().max(bounds.height());
            let mut out = Vec::with_capacity(v.segments.len());
            for s in &v.segments {
                if spec.p_drop > 0.0 && rng.random::<f64>() < spec.p_drop {
                    continue;
                }
                let mut s = *s;
                if spec.jitter_sigma > 0.0 {
                    for p in [&mut s.a, &mut s.b] {
                        p[0] += normal.sample(&mut rng);
                        p[1] += normal.sample(&mut rng);
                    }
                }
                out.push(s);
                if spec.p_spurious > 0.0 && rng.random::<f64>() < spec.p_spurious && span > 0.0 {
                    let c = [
                        rng.random_range(bounds.min[0]..=bounds.max[0]),
                        rng.random_range(bounds.min[1]..=bounds.max[1]),
                    ];
                    let angle: f64 = rng.random_range(0.0..std::f64::consts::PI);
                    let half = span * rng.random_range(0.02..0.08) / 2.0;
                    let d = [angle.cos() * half, angle.sin() * half];
                    out.push(Segment2::new([c[0] - d[0], c[1] - d[1]], [c[0] + d[0], c[1] + d[1]]));
                }
            }
            v.segments = out;
            v
        })
        .collect())
}
