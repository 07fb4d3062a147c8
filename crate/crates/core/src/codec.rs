//! Fixed-slot quantized command sequences.
//!
//! Each instance becomes one command of 8 tokens: catalog slot, 3 position
//! bins, 3 size bins and a rotation bin. Lengths use 1500 bins of 3 mm and
//! decode to bin centers; rotation uses 4 bins of 90 degrees. Model-specific
//! parameters are not encoded and decode to schema defaults.

use std::fmt;

use thiserror::Error;

use crate::diag::{Code, Diagnostic};
use crate::program::{canonical_degrees, CabinetModel, OrientedBox, PrimitiveInstance};
use crate::{PrimitiveCatalog, MAX_PRIMITIVES};

pub const LENGTH_BINS: u16 = 1500;
pub const LENGTH_RESOLUTION_MM: f64 = 3.0;
pub const ROTATION_BINS: u8 = 4;
pub const ROTATION_STEP_DEG: f64 = 90.0;
pub const TOKENS_PER_COMMAND: usize = 8;
pub const START_TOKEN: &str = "<s>";
pub const END_TOKEN: &str = "</s>";

/// Largest length inside the quantizer's range.
pub const MAX_LENGTH_MM: f64 = LENGTH_BINS as f64 * LENGTH_RESOLUTION_MM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodecError {
    #[error("instance {index}: model id {model_id:?} is not in the catalog")]
    UnknownModel { index: usize, model_id: String },
    #[error("model slot {0} is not in the catalog")]
    UnknownSlot(usize),
    #[error("{0} commands exceed the limit of {MAX_PRIMITIVES}")]
    TooManyCommands(usize),
    #[error("command sequence is empty")]
    Empty,
    #[error("{field} bin {value} out of range")]
    BinOutOfRange { field: &'static str, value: u64 },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

fn clamp_diag(v: f64) -> Diagnostic {
    Diagnostic::warning(Code::Clamped, format!("length {v} mm outside [0, {MAX_LENGTH_MM}] clamped"))
}

/// floor(v / 3) clamped to [0, 1499]. NaN maps to bin 0.
pub fn quantize_length(v: f64) -> u16 {
    let b = (v / LENGTH_RESOLUTION_MM).floor();
    if b.is_nan() || b < 0.0 {
        0
    } else if b >= (LENGTH_BINS - 1) as f64 {
        LENGTH_BINS - 1
    } else {
        b as u16
    }
}

/// Like [`quantize_length`], with a warning when `v` lies outside [0, 4500].
pub fn quantize_length_checked(v: f64) -> (u16, Option<Diagnostic>) {
    let warn = !(0.0..=MAX_LENGTH_MM).contains(&v);
    (quantize_length(v), warn.then(|| clamp_diag(v)))
}

/// Bin center: bin * 3 + 1.5.
pub fn dequantize_length(bin: u16) -> Result<f64, CodecError> {
    if bin >= LENGTH_BINS {
        return Err(CodecError::BinOutOfRange {
            field: "length",
            value: bin as u64,
        });
    }
    Ok(bin as f64 * LENGTH_RESOLUTION_MM + LENGTH_RESOLUTION_MM / 2.0)
}

/// Nearest multiple of 90 degrees, halves rounding up, as a bin in 0..4.
pub fn quantize_rotation(deg: f64) -> u8 {
    let a = canonical_degrees(deg);
    ((a / ROTATION_STEP_DEG + 0.5).floor() as i64).rem_euclid(ROTATION_BINS as i64) as u8
}

pub fn dequantize_rotation(bin: u8) -> Result<f64, CodecError> {
    if bin >= ROTATION_BINS {
        return Err(CodecError::BinOutOfRange {
            field: "rotation",
            value: bin as u64,
        });
    }
    Ok(bin as f64 * ROTATION_STEP_DEG)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Command {
    pub model_slot: usize,
    pub pos_bins: [u16; 3],
    pub size_bins: [u16; 3],
    pub rot_bin: u8,
}

impl Command {
    pub fn tokens(&self) -> [u64; TOKENS_PER_COMMAND] {
        let [px, py, pz] = self.pos_bins.map(u64::from);
        let [sx, sy, sz] = self.size_bins.map(u64::from);
        [self.model_slot as u64, px, py, pz, sx, sy, sz, self.rot_bin as u64]
    }

    fn check(&self) -> Result<(), CodecError> {
        for (field, bins) in [("position", self.pos_bins), ("size", self.size_bins)] {
            if let Some(&b) = bins.iter().find(|&&b| b >= LENGTH_BINS) {
                return Err(CodecError::BinOutOfRange { field, value: b as u64 });
            }
        }
        if self.rot_bin >= ROTATION_BINS {
            return Err(CodecError::BinOutOfRange {
                field: "rotation",
                value: self.rot_bin as u64,
            });
        }
        Ok(())
    }
}

/// Commands between one start and one end sentinel.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandSequence {
    pub commands: Vec<Command>,
}

impl CommandSequence {
    pub fn len(&self) -> usize {
        self.commands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.commands.is_empty()
    }

    /// Flat token stream including both sentinels.
    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.token_count());
        out.push(START_TOKEN.to_string());
        for c in &self.commands {
            out.extend(c.tokens().iter().map(|t| t.to_string()));
        }
        out.push(END_TOKEN.to_string());
        out
    }

    pub fn token_count(&self) -> usize {
        TOKENS_PER_COMMAND * self.commands.len() + 2
    }

    /// One command per line, space-separated integers, sentinel lines first
    /// and last.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self, CodecError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let malformed = |line: usize, message: &str| CodecError::Malformed {
            line,
            message: message.to_string(),
        };
        let (first, last) = match (lines.first(), lines.last()) {
            (Some(f), Some(l)) if lines.len() >= 2 => (*f, *l),
            _ => return Err(malformed(lines.first().map_or(1, |l| l.0), "missing sentinels")),
        };
        if first.1 != START_TOKEN {
            return Err(malformed(first.0, "expected <s>"));
        }
        if last.1 != END_TOKEN {
            return Err(malformed(last.0, "expected </s>"));
        }
        let mut commands = Vec::new();
        for &(line, body) in &lines[1..lines.len() - 1] {
            if body == START_TOKEN || body == END_TOKEN {
                return Err(malformed(line, "sentinel may appear only once"));
            }
            let nums: Vec<u64> = body
                .split_whitespace()
                .map(|t| t.parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| malformed(line, "expected non-negative integers"))?;
            if nums.len() != TOKENS_PER_COMMAND {
                return Err(malformed(line, &format!("expected {TOKENS_PER_COMMAND} tokens, found {}", nums.len())));
            }
            let bin = |field: &'static str, v: u64, limit: u64| {
                if v < limit {
                    Ok(v)
                } else {
                    Err(CodecError::BinOutOfRange { field, value: v })
                }
            };
            let len = |v| bin("length", v, LENGTH_BINS as u64).map(|b| b as u16);
            commands.push(Command {
                model_slot: usize::try_from(nums[0]).map_err(|_| CodecError::UnknownSlot(usize::MAX))?,
                pos_bins: [len(nums[1])?, len(nums[2])?, len(nums[3])?],
                size_bins: [len(nums[4])?, len(nums[5])?, len(nums[6])?],
                rot_bin: bin("rotation", nums[7], ROTATION_BINS as u64)? as u8,
            });
        }
        Ok(CommandSequence { commands })
    }
}

impl fmt::Display for CommandSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{START_TOKEN}")?;
        for c in &self.commands {
            let t = c.tokens().map(|v| v.to_string());
            writeln!(f, "{}", t.join(" "))?;
        }
        writeln!(f, "{END_TOKEN}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Encoded {
    pub sequence: CommandSequence,
    /// Clamping warnings, tagged with the instance index.
    pub warnings: Vec<Diagnostic>,
}

/// One command per instance in source order. Model-specific parameters are
/// dropped.
pub fn encode(model: &CabinetModel, catalog: &PrimitiveCatalog) -> Result<Encoded, CodecError> {
    if model.len() > MAX_PRIMITIVES {
        return Err(CodecError::TooManyCommands(model.len()));
    }
    let mut warnings = Vec::new();
    let mut commands = Vec::with_capacity(model.len());
    for (index, inst) in model.instances.iter().enumerate() {
        let model_slot = catalog.index_of(&inst.model_id).ok_or_else(|| CodecError::UnknownModel {
            index,
            model_id: inst.model_id.clone(),
        })?;
        let mut q = |v: f64| {
            let (b, w) = quantize_length_checked(v);
            warnings.extend(w.map(|d| d.with_instance(index)));
            b
        };
        let [px, py, pz] = inst.bbox.position();
        let [sx, sy, sz] = inst.bbox.size();
        commands.push(Command {
            model_slot,
            pos_bins: [q(px), q(py), q(pz)],
            size_bins: [q(sx), q(sy), q(sz)],
            rot_bin: quantize_rotation(inst.bbox.rotation_deg()),
        });
    }
    Ok(Encoded {
        sequence: CommandSequence { commands },
        warnings,
    })
}

/// Inverse of [`encode`] up to quantization; parameters come from schema
/// defaults.
pub fn decode(seq: &CommandSequence, catalog: &PrimitiveCatalog) -> Result<CabinetModel, CodecError> {
    if seq.is_empty() {
        return Err(CodecError::Empty);
    }
    if seq.len() > MAX_PRIMITIVES {
        return Err(CodecError::TooManyCommands(seq.len()));
    }
    let mut instances = Vec::with_capacity(seq.len());
    for c in &seq.commands {
        c.check()?;
        let schema = catalog.by_index(c.model_slot).ok_or(CodecError::UnknownSlot(c.model_slot))?;
        let deq = |bins: [u16; 3]| -> Result<[f64; 3], CodecError> {
            Ok([dequantize_length(bins[0])?, dequantize_length(bins[1])?, dequantize_length(bins[2])?])
        };
        let bbox = OrientedBox::new(deq(c.pos_bins)?, deq(c.size_bins)?, dequantize_rotation(c.rot_bin)?)
            .expect("bin centers are finite and positive");
        instances.push(PrimitiveInstance::new(schema.model_id.clone(), bbox).with_params(schema.defaults()));
    }
    Ok(CabinetModel::new(instances))
}
