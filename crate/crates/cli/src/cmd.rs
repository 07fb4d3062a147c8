//! Subcommand implementations.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use cabinet_core::codec;
use cabinet_core::drawing::{self, AnnotateOptions, Layers, NoiseSpec, Style};
use cabinet_core::geometry::{IouMode, View};
use cabinet_core::metrics::{self, CorpusSample, EvalOptions, RetrievalBasis};
use cabinet_core::program::{self, Syntax};
use cabinet_core::synth::{self, Manifest, ManifestEntry, ManifestFilters, PerturbSpec, SynthSpec, MANIFEST_SCHEMA_VERSION};
use cabinet_core::{CabinetModel, PrimitiveCatalog};

use crate::io::{self, Corpus, Detected};
use crate::{CmdResult, EvalArgs, Failure, InputFormat, IouModeArg, LayerArg, OutputFormat, PerturbArgs, ProgramFormat, RenderArgs, RetrievalArg, SynthArgs, ViewArg};

fn report_warnings(path: &Path, warnings: &[cabinet_core::Diagnostic]) {
    if !warnings.is_empty() {
        eprintln!("{}", io::prefixed(path, warnings));
    }
}

pub fn validate(path: &Path, filters: bool, format: InputFormat, catalog: &PrimitiveCatalog) -> CmdResult {
    let parsed = io::load_model(path, format, catalog, true)?;
    let mut diags = parsed.warnings;
    diags.extend(program::validate(&parsed.model, catalog, filters));
    report_warnings(path, &diags);
    if diags.iter().any(|d| d.is_error()) {
        return Err(Failure::Invalid(String::new()));
    }
    Ok(())
}

fn serialize(model: &CabinetModel, to: OutputFormat, catalog: &PrimitiveCatalog, path: &Path) -> Result<String, Failure> {
    let invalid = |e: String| Failure::Invalid(format!("{}: error: {e}", path.display()));
    match to {
        OutputFormat::Python => program::emit(model, Syntax::Python, catalog).map_err(|e| invalid(e.to_string())),
        OutputFormat::Yaml => program::emit(model, Syntax::Yaml, catalog).map_err(|e| invalid(e.to_string())),
        OutputFormat::Commands => {
            let enc = codec::encode(model, catalog).map_err(|e| invalid(e.to_string()))?;
            report_warnings(path, &enc.warnings);
            Ok(enc.sequence.to_text())
        }
    }
}

pub fn convert(input: &Path, output: &Path, to: OutputFormat, format: InputFormat, catalog: &PrimitiveCatalog) -> CmdResult {
    let parsed = io::load_model(input, format, catalog, false)?;
    report_warnings(input, &parsed.warnings);
    let text = serialize(&parsed.model, to, catalog, input)?;
    io::write(output, &text)
}

fn view_of(v: ViewArg) -> View {
    match v {
        ViewArg::Front => View::Front,
        ViewArg::Top => View::Top,
        ViewArg::Side => View::Side,
        ViewArg::Section => View::Section,
    }
}

pub fn render(args: &RenderArgs, catalog: &PrimitiveCatalog) -> CmdResult {
    if args.views.len() > 5 {
        return Err(Failure::Usage("at most 5 views per sheet".into()));
    }
    let mut style = match &args.style {
        Some(p) => Style::from_yaml(&io::read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => Style::default(),
    };
    if let Some(layers) = &args.layers {
        style.layers = Layers {
            geometry: layers.contains(&LayerArg::Geometry),
            annotation: layers.contains(&LayerArg::Annotation),
        };
    }
    let parsed = io::load_model(&args.input, args.format, catalog, false)?;
    report_warnings(&args.input, &parsed.warnings);
    let model = parsed.model;
    let views: Vec<View> = args.views.iter().copied().map(view_of).collect();
    let render_opts = drawing::RenderOptions {
        section_cut_y: args.section_cut,
    };
    let annotate_opts = AnnotateOptions {
        min_extent_mm: args.min_dimension,
        section_cut_y: args.section_cut,
        ..AnnotateOptions::default()
    };
    let mut drawn = drawing::annotate(drawing::render_views_with(&model, &views, &render_opts), &model, catalog, &annotate_opts);
    if let Some(seed) = args.noise_seed {
        let spec = NoiseSpec {
            p_drop: args.p_drop,
            jitter_sigma: args.jitter,
            p_spurious: args.p_spurious,
        };
        drawn = drawing::inject_noise(drawn, &spec, seed).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let sheet = drawing::layout_sheet(drawn, args.canvas);
    io::write(&args.output, &drawing::to_svg(&sheet, &style))
}

pub fn eval(args: &EvalArgs, catalog: &PrimitiveCatalog) -> CmdResult {
    if !(0.0..1.0).contains(&args.iou) {
        return Err(Failure::Usage(format!("--iou {} must be in [0, 1)", args.iou)));
    }
    let pred = Corpus::open(&args.pred)?;
    let gt = Corpus::open(&args.gt)?;
    let pred_files: BTreeMap<&str, &str> = pred.manifest.samples.iter().map(|e| (e.id.as_str(), e.file.as_str())).collect();
    let gt_files: BTreeMap<&str, &str> = gt.manifest.samples.iter().map(|e| (e.id.as_str(), e.file.as_str())).collect();
    let mut mismatched: Vec<String> = Vec::new();
    mismatched.extend(gt_files.keys().filter(|k| !pred_files.contains_key(*k)).map(|k| format!("{k}: missing from predictions")));
    mismatched.extend(pred_files.keys().filter(|k| !gt_files.contains_key(*k)).map(|k| format!("{k}: missing from ground truth")));
    let ids: Vec<&str> = gt_files.keys().filter(|k| pred_files.contains_key(*k)).copied().collect();
    let samples: Vec<CorpusSample> = ids
        .par_iter()
        .map(|id| CorpusSample {
            id: id.to_string(),
            pred: io::load_lenient(&pred.path_of(pred_files[id]), catalog),
            gt: io::load_lenient(&gt.path_of(gt_files[id]), catalog),
        })
        .collect();
    let opts = EvalOptions {
        iou_thresh: args.iou,
        iou_mode: match args.iou_mode {
            IouModeArg::Rotated => IouMode::Rotated,
            IouModeArg::Aabb => IouMode::Aabb,
        },
        retrieval: match args.retrieval {
            RetrievalArg::Tp => RetrievalBasis::TpPairs,
            RetrievalArg::All => RetrievalBasis::AllPairs,
        },
        length_tol_mm: args.length_tol,
    };
    let report = metrics::evaluate_corpus(samples, catalog, &opts);
    if let Some(out) = &args.out {
        io::write(out, &report.to_json())?;
    }
    print!("{}", report.summary_table());
    for s in &report.samples {
        if let Some(e) = &s.pred_error {
            eprintln!("{}: prediction scored as empty: {e}", s.id);
        }
    }
    for e in &report.excluded {
        eprintln!("{}: excluded: {}", e.id, e.error);
    }
    if !mismatched.is_empty() {
        return Err(Failure::Invalid(mismatched.join("\n")));
    }
    Ok(())
}

fn ext_of(format: ProgramFormat) -> (&'static str, Syntax) {
    match format {
        ProgramFormat::Python => ("py", Syntax::Python),
        ProgramFormat::Yaml => ("yaml", Syntax::Yaml),
    }
}

pub fn synth(args: &SynthArgs, catalog: &PrimitiveCatalog) -> CmdResult {
    let base = SynthSpec {
        seed: args.seed,
        min_instances: args.min_instances,
        max_instances: args.max_instances,
        ..SynthSpec::default()
    };
    base.check().map_err(|e| Failure::Usage(e.to_string()))?;
    io::create_dir(&args.out)?;
    let (ext, syntax) = ext_of(args.format);
    let entries: Vec<ManifestEntry> = (0..args.count as usize)
        .into_par_iter()
        .map(|i| {
            let seed = synth::sample_seed(args.seed, i as u64);
            let model = synth::generate(&SynthSpec { seed, ..base.clone() }, catalog).map_err(|e| Failure::Usage(e.to_string()))?;
            let id = synth::sample_id(i);
            let file = format!("{id}.{ext}");
            let text = program::emit(&model, syntax, catalog).map_err(|e| Failure::Usage(e.to_string()))?;
            io::write(&args.out.join(&file), &text)?;
            Ok(ManifestEntry { id, file, seed: Some(seed) })
        })
        .collect::<Result<_, Failure>>()?;
    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        seed: Some(args.seed),
        catalog_version: Some(catalog.version.clone()),
        filters: Some(ManifestFilters::default()),
        samples: entries,
    };
    io::write(&args.out.join("manifest.json"), &manifest.to_json())?;
    println!("wrote {} models to {}", args.count, args.out.display());
    Ok(())
}

fn load_corpus(corpus: &Corpus, catalog: &PrimitiveCatalog) -> Vec<Result<CabinetModel, String>> {
    corpus
        .manifest
        .samples
        .par_iter()
        .map(|e| io::load_lenient(&corpus.path_of(&e.file), catalog))
        .collect()
}

pub fn stats(input: &Path, out: Option<&Path>, catalog: &PrimitiveCatalog) -> CmdResult {
    let corpus = Corpus::open(input)?;
    let loaded = load_corpus(&corpus, catalog);
    let errors: Vec<&String> = loaded.iter().filter_map(|r| r.as_ref().err()).collect();
    let models: Vec<&CabinetModel> = loaded.iter().filter_map(|r| r.as_ref().ok()).collect();
    let st = synth::stats(models);
    let mut json = serde_json::to_string_pretty(&st).expect("stats serialize");
    json.push('\n');
    match out {
        Some(p) => io::write(p, &json)?,
        None => print!("{json}"),
    }
    if !errors.is_empty() {
        return Err(Failure::Invalid(errors.iter().map(|e| e.as_str()).collect::<Vec<_>>().join("\n")));
    }
    Ok(())
}

pub fn perturb(args: &PerturbArgs, catalog: &PrimitiveCatalog) -> CmdResult {
    let corpus = Corpus::open(&args.input)?;
    let base = PerturbSpec {
        seed: args.seed,
        position_sigma_mm: args.position_sigma,
        size_sigma_mm: args.size_sigma,
        id_swap_rate: args.id_swap_rate,
        drop_rate: args.drop_rate,
        add_rate: args.add_rate,
        param_corruption_rate: args.param_corruption_rate,
    };
    base.check().map_err(|e| Failure::Usage(e.to_string()))?;
    io::create_dir(&args.out)?;
    let results: Vec<Result<ManifestEntry, String>> = corpus
        .manifest
        .samples
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let src = corpus.path_of(&e.file);
            let model = io::load_lenient(&src, catalog)?;
            let seed = synth::sample_seed(args.seed, i as u64);
            let p = synth::perturb(&model, catalog, &PerturbSpec { seed, ..base }).map_err(|e| e.to_string())?;
            let text = io::read(&src).map_err(|f| io::model_error(&src, f))?;
            let to = match io::detect(&src, &text, InputFormat::Auto) {
                Detected::Program(Syntax::Python) => OutputFormat::Python,
                Detected::Program(Syntax::Yaml) => OutputFormat::Yaml,
                Detected::Commands => OutputFormat::Commands,
            };
            let dest = args.out.join(&e.file);
            if let Some(parent) = dest.parent() {
                io::create_dir(parent).map_err(|f| io::model_error(&dest, f))?;
            }
            let out = serialize(&p, to, catalog, &src).map_err(|f| io::model_error(&src, f))?;
            io::write(&dest, &out).map_err(|f| io::model_error(&dest, f))?;
            Ok(ManifestEntry {
                id: e.id.clone(),
                file: e.file.clone(),
                seed: Some(seed),
            })
        })
        .collect();
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(e),
        }
    }
    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        seed: Some(args.seed),
        catalog_version: corpus.manifest.catalog_version.clone(),
        filters: corpus.manifest.filters.clone(),
        samples: entries,
    };
    io::write(&args.out.join("manifest.json"), &manifest.to_json())?;
    if !errors.is_empty() {
        return Err(Failure::Invalid(errors.join("\n")));
    }
    println!("wrote {} models to {}", manifest.samples.len(), args.out.display());
    Ok(())
}
