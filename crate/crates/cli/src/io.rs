//! File loading shared by the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use cabinet_core::codec::{self, CommandSequence};
use cabinet_core::program::{self, Parsed, Syntax};
use cabinet_core::synth::Manifest;
use cabinet_core::{builtin_catalog, CabinetModel, PrimitiveCatalog};

use crate::{Failure, InputFormat};

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        .and_then(|bytes| String::from_utf8(bytes).map_err(|_| Failure::Invalid(format!("{}: error[encoding]: file is not UTF-8", path.display()))))
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn create_dir(path: &Path) -> Result<(), Failure> {
    fs::create_dir_all(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn load_catalog(path: Option<&Path>) -> Result<PrimitiveCatalog, Failure> {
    match path {
        None => Ok(builtin_catalog()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("catalog {}: {e}", p.display())))?;
            cabinet_core::load_catalog(&text).map_err(|e| Failure::Usage(format!("catalog {}: {e}", p.display())))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detected {
    Program(Syntax),
    Commands,
}

pub fn detect(path: &Path, text: &str, format: InputFormat) -> Detected {
    match format {
        InputFormat::Python => Detected::Program(Syntax::Python),
        InputFormat::Yaml => Detected::Program(Syntax::Yaml),
        InputFormat::Commands => Detected::Commands,
        InputFormat::Auto => {
            let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
            if ext == "cmd" || text.trim_start().starts_with(codec::START_TOKEN) {
                Detected::Commands
            } else {
                Detected::Program(Syntax::from_extension(ext).unwrap_or_else(|| Syntax::sniff(text)))
            }
        }
    }
}

/// Loads a model in any supported form. Errors come back formatted with the
/// path prefix.
pub fn load_model(path: &Path, format: InputFormat, catalog: &PrimitiveCatalog, strict: bool) -> Result<Parsed, Failure> {
    let text = read(path)?;
    match detect(path, &text, format) {
        Detected::Program(syntax) => program::parse(&text, syntax, catalog, strict).map_err(|d| Failure::Invalid(prefixed(path, d.iter()))),
        Detected::Commands => {
            let seq = CommandSequence::parse_text(&text).map_err(|e| Failure::Invalid(format!("{}: error[commands]: {e}", path.display())))?;
            let model = codec::decode(&seq, catalog).map_err(|e| Failure::Invalid(format!("{}: error[commands]: {e}", path.display())))?;
            Ok(Parsed {
                model,
                warnings: Vec::new(),
            })
        }
    }
}

pub fn prefixed<'a>(path: &Path, diags: impl IntoIterator<Item = &'a cabinet_core::Diagnostic>) -> String {
    diags
        .into_iter()
        .map(|d| format!("{}:{d}", path.display()))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn model_error(path: &Path, f: Failure) -> String {
    match f {
        Failure::Invalid(m) | Failure::Usage(m) => {
            if m.is_empty() {
                format!("{}: unreadable", path.display())
            } else {
                m
            }
        }
    }
}

pub fn load_lenient(path: &Path, catalog: &PrimitiveCatalog) -> Result<CabinetModel, String> {
    load_model(path, InputFormat::Auto, catalog, false)
        .map(|p| p.model)
        .map_err(|f| model_error(path, f))
}

/// A corpus: its manifest and the directory its file paths are relative to.
pub struct Corpus {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

impl Corpus {
    pub fn open(path: &Path) -> Result<Corpus, Failure> {
        let (dir, file) = if path.is_dir() {
            (path.to_path_buf(), path.join("manifest.json"))
        } else {
            (path.parent().map(Path::to_path_buf).unwrap_or_default(), path.to_path_buf())
        };
        let text = fs::read_to_string(&file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
        let manifest = Manifest::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
        Ok(Corpus { dir, manifest })
    }

    pub fn path_of(&self, file: &str) -> PathBuf {
        self.dir.join(file)
    }
}
