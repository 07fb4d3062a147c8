//! Toolkit for parametric cabinet assemblies.
//!
//! A cabinet is an ordered list of primitive instances, each a catalog model
//! placed as a box that rotates only about the vertical axis and carries a
//! small map of model-specific parameters. The crate parses and emits these
//! shape programs in a Python-style and a YAML syntax, computes oriented-box
//! geometry and 3D IoU, evaluates predictions against ground truth with
//! optimal assignment, encodes models as quantized command sequences,
//! synthesizes orthographic drawings as SVG, and generates seeded corpora.

pub mod catalog;
pub mod codec;
pub mod diag;
pub mod drawing;
pub mod geometry;
pub mod metrics;
pub mod program;
pub mod synth;
pub mod yaml;

pub use catalog::{builtin_catalog, load_catalog, PrimitiveCatalog, PrimitiveSchema};
pub use diag::{Diagnostic, Diagnostics, Severity, SourceSpan};
pub use program::{CabinetModel, OrientedBox, ParamValue, Params, PrimitiveInstance};

/// Dataset filter: smallest admissible overall cabinet extent, in mm.
pub const MIN_CABINET_EXTENT_MM: f64 = 100.0;
/// Dataset filter: largest admissible overall cabinet extent, in mm.
pub const MAX_CABINET_EXTENT_MM: f64 = 4500.0;
/// Dataset filter: models with more primitives than this are discarded.
pub const MAX_PRIMITIVES: usize = 48;
/// Upper bound on model-specific parameters per primitive schema.
pub const MAX_PARAMS_PER_PRIMITIVE: usize = 8;
