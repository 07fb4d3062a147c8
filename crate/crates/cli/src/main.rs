//! `cabinet`: validate, convert, render, evaluate, synthesize and summarize
//! cabinet shape programs.
//!
//! Exit status: 0 success, 1 diagnostics or per-sample failures, 2 usage or
//! I/O errors.

mod cmd;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cabinet", version, about = "Cabinet shape-program toolkit")]
struct Cli {
    /// Catalog file; the built-in mini catalog when unset.
    #[arg(long, env = "CABINET_CATALOG", global = true)]
    catalog: Option<PathBuf>,
    /// Worker threads for corpus commands. Results do not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Python,
    Yaml,
    Commands,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Python,
    Yaml,
    Commands,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProgramFormat {
    Python,
    Yaml,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Front,
    Top,
    Side,
    Section,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LayerArg {
    Geometry,
    Annotation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IouModeArg {
    Rotated,
    Aabb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RetrievalArg {
    /// Pairs above the IoU threshold.
    Tp,
    /// Every assigned pair.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a shape program; diagnostics go to stderr.
    Validate {
        path: PathBuf,
        /// Apply the dataset filters (extent 100..4500 mm, at most 48 primitives).
        #[arg(long)]
        filters: bool,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Convert between Python, YAML and command-sequence forms.
    Convert {
        input: PathBuf,
        /// Output path, `-` for stdout.
        output: PathBuf,
        #[arg(long, value_enum)]
        to: OutputFormat,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Render a drawing sheet as SVG.
    Render(RenderArgs),
    /// Score predictions against ground truth.
    Eval(EvalArgs),
    /// Generate a seeded corpus directory with a manifest.
    Synth(SynthArgs),
    /// Corpus statistics as JSON.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a degraded copy of a corpus.
    Perturb(PerturbArgs),
}

#[derive(Args)]
pub struct RenderArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ViewArg::Front, ViewArg::Top, ViewArg::Side])]
    views: Vec<ViewArg>,
    /// Layers to draw; overrides the style file.
    #[arg(long, value_enum, value_delimiter = ',')]
    layers: Option<Vec<LayerArg>>,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(64..=16384))]
    canvas: u32,
    /// Style file (restricted YAML).
    #[arg(long)]
    style: Option<PathBuf>,
    /// Instances narrower than this get no dimension set.
    #[arg(long, default_value_t = 100.0)]
    min_dimension: f64,
    /// Cut plane of section views (y, mm); the model's mid-depth by default.
    #[arg(long)]
    section_cut: Option<f64>,
    /// Enables noise with this seed.
    #[arg(long)]
    noise_seed: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    p_drop: f64,
    /// Endpoint jitter sigma in mm.
    #[arg(long, default_value_t = 2.0)]
    jitter: f64,
    #[arg(long, default_value_t = 0.02)]
    p_spurious: f64,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Prediction corpus directory or manifest file.
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth corpus directory or manifest file.
    #[arg(long)]
    gt: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    iou: f64,
    #[arg(long, value_enum, default_value_t = IouModeArg::Rotated)]
    iou_mode: IouModeArg,
    #[arg(long, value_enum, default_value_t = RetrievalArg::Tp)]
    retrieval: RetrievalArg,
    /// Tolerance for length-typed parameters, mm.
    #[arg(long, default_value_t = 0.0)]
    length_tol: f64,
    /// Report JSON path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    count: u32,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = ProgramFormat::Python)]
    format: ProgramFormat,
    #[arg(long, default_value_t = 1)]
    min_instances: usize,
    #[arg(long, default_value_t = 48)]
    max_instances: usize,
}

#[derive(Args)]
pub struct PerturbArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    position_sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    size_sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    id_swap_rate: f64,
    #[arg(long, default_value_t = 0.0)]
    drop_rate: f64,
    #[arg(long, default_value_t = 0.0)]
    add_rate: f64,
    #[arg(long, default_value_t = 0.0)]
    param_corruption_rate: f64,
}

/// Failure with its exit status.
pub enum Failure {
    /// Diagnostics were reported (exit 1).
    Invalid(String),
    /// Usage or I/O problem (exit 2).
    Usage(String),
}

pub type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let catalog = io::load_catalog(cli.catalog.as_deref())?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs.map_or(0, usize::from))
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        pool.install(|| match cli.command {
            Command::Validate { path, filters, format } => cmd::validate(&path, filters, format, &catalog),
            Command::Convert {
                input,
                output,
                to,
                format,
            } => cmd::convert(&input, &output, to, format, &catalog),
            Command::Render(args) => cmd::render(&args, &catalog),
            Command::Eval(args) => cmd::eval(&args, &catalog),
            Command::Synth(args) => cmd::synth(&args, &catalog),
            Command::Stats { input, out } => cmd::stats(&input, out.as_deref(), &catalog),
            Command::Perturb(args) => cmd::perturb(&args, &catalog),
        })
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
