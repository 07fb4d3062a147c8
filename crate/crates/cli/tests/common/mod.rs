//! Shared CLI cases for the golden suite and the acceptance run.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    ("validate_python", &["validate", "cabinet.py"]),
    ("validate_filters", &["validate", "--filters", "too_many.py"]),
    ("validate_bad_yaml", &["validate", "bad.yaml"]),
    ("convert_python_to_yaml", &["convert", "cabinet.py", "{out}/cabinet.yaml", "--to", "yaml"]),
    ("convert_yaml_to_commands", &["convert", "cabinet.yaml", "{out}/cabinet.cmd", "--to", "commands"]),
    ("convert_commands_to_python", &["convert", "cabinet.cmd", "-", "--to", "python"]),
    ("render_default", &["render", "cabinet.py", "{out}/sheet.svg"]),
    ("render_geometry_only", &["render", "cabinet.yaml", "{out}/sheet.svg", "--layers", "geometry"]),
    ("render_section_styled", &["render", "cabinet.py", "{out}/sheet.svg", "--views", "front,section", "--style", "style.yaml", "--canvas", "300"]),
    ("render_noisy", &["render", "cabinet.py", "{out}/sheet.svg", "--noise-seed", "42", "--jitter", "4"]),
    ("synth_yaml", &["synth", "--seed", "3", "--count", "4", "--format", "yaml", "--out", "{out}/corpus"]),
    ("stats", &["stats", "--in", "gt"]),
    ("perturb", &["perturb", "--in", "gt", "--out", "{out}/pred", "--seed", "1", "--position-sigma", "30", "--drop-rate", "0.2", "--add-rate", "0.1", "--id-swap-rate", "0.2", "--param-corruption-rate", "0.3"]),
    ("eval", &["eval", "--pred", "pred", "--gt", "gt", "--out", "{out}/report.json"]),
    ("eval_aabb_all", &["eval", "--pred", "pred/manifest.json", "--gt", "gt", "--iou-mode", "aabb", "--retrieval", "all", "--iou", "0.3", "--jobs", "3"]),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/fixtures")
}

fn collect(dir: &Path, root: &Path, out: &mut Vec<(String, Vec<u8>)>) {
    let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect(&p, root, out);
        } else {
            let rel = p.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/");
            out.push((rel, fs::read(&p).unwrap()));
        }
    }
}

/// Runs one case in a fresh output directory and renders everything it
/// produced as a single transcript.
pub fn transcript(bin: &Path, args: &[&str]) -> String {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().to_str().unwrap().to_string();
    let args: Vec<String> = args.iter().map(|a| a.replace("{out}", &out_dir)).collect();
    let output = Command::new(bin)
        .args(&args)
        .current_dir(fixtures())
        .env_remove("CABINET_CATALOG")
        .output()
        .unwrap();
    let mut text = format!("exit: {}\n", output.status.code().unwrap_or(-1));
    for (label, bytes) in [("stdout", &output.stdout), ("stderr", &output.stderr)] {
        text.push_str(&format!("--- {label}\n{}", String::from_utf8_lossy(bytes).replace(&out_dir, "{out}")));
    }
    let mut files = Vec::new();
    collect(tmp.path(), tmp.path(), &mut files);
    for (name, bytes) in files {
        text.push_str(&format!("--- file {name}\n{}", String::from_utf8_lossy(&bytes)));
    }
    text
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden")
}
