//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

#[path = "../../cli/tests/common/mod.rs"]
mod common;

use cabinet_core::codec::{self, decode, dequantize_length, encode, quantize_length};
use cabinet_core::drawing::{annotate, layout_sheet, remove_group, render_views, to_svg, AnnotateOptions, Layers, Style, DEFAULT_CANVAS_PX};
use cabinet_core::geometry::{iou3d, IouMode, View};
use cabinet_core::metrics::{evaluate_corpus, evaluate_sample, match_instances, CorpusSample, EvalOptions, DEFAULT_IOU_THRESHOLD};
use cabinet_core::program::{emit, parse, validate, Syntax};
use cabinet_core::synth::{generate, perturb, random_model, PerturbSpec, SynthSpec};
use cabinet_core::{builtin_catalog, CabinetModel, OrientedBox, PrimitiveInstance, MAX_CABINET_EXTENT_MM, MAX_PRIMITIVES, MIN_CABINET_EXTENT_MM};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// The `cabinet` binary from the same target directory, built on first use.
/// `CABINET_BIN` overrides the lookup.
fn cabinet_bin() -> &'static Path {
    static BIN: OnceLock<PathBuf> = OnceLock::new();
    BIN.get_or_init(|| {
        if let Some(p) = std::env::var_os("CABINET_BIN") {
            return PathBuf::from(p);
        }
        let exe = std::env::current_exe().expect("test executable path");
        let profile_dir = exe.parent().and_then(Path::parent).expect("target/<profile>/deps layout");
        let profile = match profile_dir.file_name().and_then(|n| n.to_str()) {
            Some("debug") | None => "dev",
            Some(other) => other,
        };
        let status = Command::new(option_env!("CARGO").unwrap_or("cargo"))
            .args(["build", "--quiet", "-p", "cabinet-cli", "--bin", "cabinet", "--profile", profile])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .expect("cargo runs");
        assert!(status.success(), "building the cabinet binary failed");
        profile_dir.join(format!("cabinet{}", std::env::consts::EXE_SUFFIX))
    })
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    check(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn one_box(id: &str, p: [f64; 3], s: [f64; 3], r: f64) -> PrimitiveInstance {
    PrimitiveInstance::new(id, OrientedBox::new(p, s, r).unwrap())
}

fn round_trip() -> Outcome {
    let cat = builtin_catalog();
    let start = Instant::now();
    for seed in 0..1000 {
        let m = random_model(seed, &cat, MAX_PRIMITIVES);
        for syntax in [Syntax::Python, Syntax::Yaml] {
            let text = emit(&m, syntax, &cat).map_err(|e| e.to_string())?;
            let back = parse(&text, syntax, &cat, true).map_err(|e| format!("seed {seed} {syntax:?}: {e:?}"))?;
            check(back.model == m, format!("seed {seed} {syntax:?}: model differs after round trip"))?;
        }
    }
    Ok(format!("1000 models x 2 syntaxes in {}", within(start, Duration::from_secs(10))?))
}

/// Exhaustive optimum over injections, summed in ascending order.
fn brute_force(m: &[Vec<f64>]) -> f64 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let get = |i: usize, j: usize| if rows <= cols { m[i][j] } else { m[j][i] };
    let (small, large) = (rows.min(cols), rows.max(cols));
    let mut best = f64::NEG_INFINITY;
    let mut stack: Vec<(Vec<usize>, Vec<bool>)> = vec![(Vec::new(), vec![false; large])];
    while let Some((chosen, used)) = stack.pop() {
        if chosen.len() == small {
            let mut v: Vec<f64> = chosen.iter().enumerate().map(|(i, &j)| get(i, j)).collect();
            v.sort_by(f64::total_cmp);
            best = best.max(v.iter().sum());
            continue;
        }
        for j in (0..large).filter(|&j| !used[j]) {
            let mut c = chosen.clone();
            let mut u = used.clone();
            c.push(j);
            u[j] = true;
            stack.push((c, u));
        }
    }
    best
}

fn random_cluster(rng: &mut ChaCha8Rng, n: usize) -> CabinetModel {
    let t = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| rng.random_range(lo..=hi) as f64 / 10.0;
    CabinetModel::new(
        (0..n)
            .map(|_| {
                let r = if rng.random_bool(0.5) { 90.0 * rng.random_range(0..4) as f64 } else { t(rng, 0, 3599) };
                one_box("M-DOOR", [t(rng, 2000, 4000); 3].map(|_| t(rng, 2000, 4000)), [0; 3].map(|_| t(rng, 300, 3000)), r)
            })
            .collect(),
    )
}

fn assignment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let start = Instant::now();
    for k in 0..500 {
        let np = rng.random_range(1..=7);
        let ng = rng.random_range(1..=7);
        let pred = random_cluster(&mut rng, np);
        let gt = random_cluster(&mut rng, ng);
        let ious = cabinet_core::metrics::iou_matrix(&pred, &gt, IouMode::Rotated);
        let got = match_instances(&pred, &gt, IouMode::Rotated).total_iou();
        let want = brute_force(&ious);
        check(got == want, format!("pair {k}: hungarian {got} vs brute force {want}"))?;
    }
    Ok(format!("500 pairs exact in {}", within(start, Duration::from_secs(30))?))
}

fn aabb_oracle(p: [f64; 3], s: [f64; 3], r: f64) -> ([f64; 3], [f64; 3]) {
    let e = if (r / 90.0) as i64 % 2 == 1 { [s[1], s[0], s[2]] } else { s };
    (std::array::from_fn(|k| p[k] - e[k] / 2.0), std::array::from_fn(|k| p[k] + e[k] / 2.0))
}

fn iou_cases() -> Outcome {
    let a = OrientedBox::new([5.0, 5.0, 5.0], [2.0, 3.0, 4.0], 37.5).unwrap();
    check(iou3d(&a, &a) == 1.0, "identical boxes are not exactly 1.0")?;
    let c1 = OrientedBox::new([1.0, 1.0, 1.0], [2.0; 3], 0.0).unwrap();
    let c2 = OrientedBox::new([2.0, 1.0, 1.0], [2.0; 3], 0.0).unwrap();
    let v = iou3d(&c1, &c2);
    check((v - 1.0 / 3.0).abs() <= 1e-9, format!("offset cubes give {v}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let mut draw = || {
            let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(0..2000) as f64 / 10.0);
            let s: [f64; 3] = std::array::from_fn(|_| rng.random_range(10..1500) as f64 / 10.0);
            (p, s, 90.0 * rng.random_range(0..4) as f64)
        };
        let (pa, sa, ra) = draw();
        let (pb, sb, rb) = draw();
        let (alo, ahi) = aabb_oracle(pa, sa, ra);
        let (blo, bhi) = aabb_oracle(pb, sb, rb);
        let inter: f64 = (0..3).map(|k| (ahi[k].min(bhi[k]) - alo[k].max(blo[k])).max(0.0)).product();
        let vol = |lo: [f64; 3], hi: [f64; 3]| (0..3).map(|k| hi[k] - lo[k]).product::<f64>();
        let want = inter / (vol(alo, ahi) + vol(blo, bhi) - inter);
        let got = iou3d(&OrientedBox::new(pa, sa, ra).unwrap(), &OrientedBox::new(pb, sb, rb).unwrap());
        worst = worst.max((got - want).abs());
    }
    check(worst <= 1e-9, format!("max deviation from the AABB oracle {worst:e}"))?;
    Ok(format!("identity 1.0, offset cubes {v:.12}, 10000 pairs max deviation {worst:.1e}"))
}

fn constants() -> Outcome {
    check(DEFAULT_IOU_THRESHOLD == 0.5, "IoU threshold")?;
    let cat = builtin_catalog();
    // IoU of exactly 0.5 must not count as a true positive
    let gt = CabinetModel::new(vec![one_box("M-DOOR", [100.0, 100.0, 100.0], [200.0, 200.0, 200.0], 0.0)]);
    let pred = CabinetModel::new(vec![one_box("M-DOOR", [100.0, 100.0, 150.0], [200.0, 200.0, 100.0], 0.0)]);
    let iou = iou3d(&pred.instances[0].bbox, &gt.instances[0].bbox);
    check(iou == 0.5, format!("constructed pair has IoU {iou}"))?;
    let r = evaluate_sample(&pred, &gt, &cat, &EvalOptions::default());
    check(r.tp == 0 && r.fp == 1 && r.fn_ == 1, "IoU 0.5 counted as a match")?;
    check(codec::LENGTH_BINS == 1500 && codec::LENGTH_RESOLUTION_MM == 3.0 && codec::MAX_LENGTH_MM == 4500.0, "length bins")?;
    check(codec::ROTATION_BINS == 4 && codec::ROTATION_STEP_DEG == 90.0, "rotation bins")?;
    check(quantize_length(4499.9) == 1499 && quantize_length(2.99) == 0, "bin edges")?;
    check(MIN_CABINET_EXTENT_MM == 100.0 && MAX_CABINET_EXTENT_MM == 4500.0 && MAX_PRIMITIVES == 48, "filter constants")?;
    let extent_ok = |e: f64| {
        let m = CabinetModel::new(vec![one_box("M-PANEL", [e / 2.0, 50.0, 50.0], [e, 50.0, 50.0], 0.0)]);
        validate(&m, &cat, true).iter().all(|d| !d.is_error())
    };
    check(extent_ok(100.0) && extent_ok(4500.0) && !extent_ok(99.9) && !extent_ok(4500.1), "extent filter boundaries")?;
    let many = |n: usize| {
        CabinetModel::new((0..n).map(|i| one_box("M-PANEL", [45.0 + 90.0 * i as f64, 50.0, 50.0], [60.0, 100.0, 100.0], 0.0)).collect())
    };
    check(validate(&many(48), &cat, true).iter().all(|d| !d.is_error()), "48 primitives rejected")?;
    check(validate(&many(49), &cat, true).iter().any(|d| d.is_error()), "49 primitives accepted")?;
    check(DEFAULT_CANVAS_PX == 512, "canvas constant")?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = tmp.path().join("s.svg");
    let status = Command::new(cabinet_bin())
        .args(["render", common::fixtures().join("cabinet.py").to_str().unwrap(), out.to_str().unwrap()])
        .status()
        .map_err(|e| e.to_string())?;
    let svg = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    check(status.success() && svg.contains("width=\"512\" height=\"512\""), "CLI default canvas is not 512x512")?;
    Ok("IoU > 0.5 strict, 1500 x 3 mm, 4 rotation bins, 100..4500 mm, 48 primitives, 512 px".into())
}

fn codec_bound() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    for _ in 0..100_000 {
        let v = rng.random_range(0.0..=4497.0);
        let back = dequantize_length(quantize_length(v)).map_err(|e| e.to_string())?;
        if (back - v).abs() > 1.5 {
            violations += 1;
        }
    }
    let part_a = format!("{violations} length violations in 100000");

    // axis-aligned boxes (rotations are multiples of 90) with every extent >= 300 mm
    let cat = builtin_catalog();
    let mut boxes = Vec::new();
    for _ in 0..100_000 {
        let s: [f64; 3] = std::array::from_fn(|_| rng.random_range(3000..=15_000) as f64 / 10.0);
        let p: [f64; 3] = std::array::from_fn(|k| rng.random_range((s[k] * 5.0) as i64..=((4497.0 - s[k] / 2.0) * 10.0) as i64) as f64 / 10.0);
        boxes.push(one_box("M-DOOR", p, s, 90.0 * rng.random_range(0..4) as f64));
    }
    // cubes on the 3 mm lattice; every coordinate decodes 1.5 mm off
    for e in (300..=450).step_by(3) {
        let e = e as f64;
        boxes.push(one_box("M-DOOR", [e / 2.0 + 1500.0; 3].map(|c| (c / 3.0).round() * 3.0), [e; 3], 0.0));
    }
    let mut decoded = Vec::with_capacity(boxes.len());
    for chunk in boxes.chunks(MAX_PRIMITIVES) {
        let m = CabinetModel::new(chunk.to_vec());
        let seq = encode(&m, &cat).map_err(|e| e.to_string())?.sequence;
        decoded.extend(decode(&seq, &cat).map_err(|e| e.to_string())?.instances);
    }
    let mut low = 0;
    let mut min_iou = f64::INFINITY;
    let mut min_extent = f64::INFINITY;
    for (a, b) in boxes.iter().zip(&decoded) {
        let v = iou3d(&a.bbox, &b.bbox);
        if v < 0.98 {
            low += 1;
            min_extent = min_extent.min(a.bbox.size().into_iter().fold(f64::INFINITY, f64::min));
        }
        min_iou = min_iou.min(v);
    }
    let t = within(start, Duration::from_secs(5))?;
    check(violations == 0, part_a.clone())?;
    check(
        low == 0,
        format!(
            "{part_a}; {low} of {} boxes with extents >= 300 mm decode below IoU 0.98 (min {min_iou:.5}, smallest such extent {min_extent} mm)",
            boxes.len()
        ),
    )?;
    Ok(format!("{part_a}; min IoU {min_iou:.5}; {t}"))
}

fn metric_sanity() -> Outcome {
    let cat = builtin_catalog();
    let opts = EvalOptions::default();
    let corpus: Vec<CorpusSample> = (0..20)
        .map(|i| {
            let m = generate(&SynthSpec::with_seed(i), &cat).unwrap();
            CorpusSample {
                id: format!("s{i}"),
                pred: Ok(m.clone()),
                gt: Ok(m),
            }
        })
        .collect();
    let report = evaluate_corpus(corpus, &cat, &opts);
    for agg in [&report.micro, &report.macro_] {
        check(
            agg.precision == 1.0 && agg.recall == 1.0 && agg.f1 == 1.0 && agg.retrieval_accuracy == Some(1.0) && agg.param_accuracy == Some(1.0),
            format!("identity corpus scored {agg:?}"),
        )?;
    }
    let gt = generate(&SynthSpec::with_seed(77), &cat).unwrap();
    let base = evaluate_sample(&gt, &gt, &cat, &opts);
    let swapped = perturb(&gt, &cat, &PerturbSpec { seed: 1, id_swap_rate: 1.0, ..Default::default() }).unwrap();
    let r = evaluate_sample(&swapped, &gt, &cat, &opts);
    check(r.f1 == base.f1 && r.retrieval_accuracy() == Some(0.0), format!("id swap: F1 {} retrieval {:?}", r.f1, r.retrieval_accuracy()))?;
    let four = generate(&SynthSpec { min_instances: 4, max_instances: 4, ..SynthSpec::with_seed(3) }, &cat).unwrap();
    check(four.len() == 4, format!("four-instance model has {}", four.len()))?;
    let dropped = perturb(&four, &cat, &PerturbSpec { seed: 2, drop_rate: 0.25, ..Default::default() }).unwrap();
    let r = evaluate_sample(&dropped, &four, &cat, &opts);
    check(r.recall == 0.75 && r.precision == 1.0, format!("drop one of four: precision {} recall {}", r.precision, r.recall))?;
    Ok("identity 1.0 everywhere; id swap keeps F1 with 0% retrieval; drop one of four gives P 1.0 R 0.75".into())
}

fn monotonicity() -> Outcome {
    let cat = builtin_catalog();
    let opts = EvalOptions::default();
    let mean_f1 = |sigma: f64| {
        (0..200u64)
            .map(|i| {
                let gt = generate(&SynthSpec::with_seed(i), &cat).unwrap();
                let spec = PerturbSpec {
                    seed: 1000 + i,
                    position_sigma_mm: sigma,
                    size_sigma_mm: sigma,
                    ..Default::default()
                };
                evaluate_sample(&perturb(&gt, &cat, &spec).unwrap(), &gt, &cat, &opts).f1
            })
            .sum::<f64>()
            / 200.0
    };
    let lo = mean_f1(10.0);
    let hi = mean_f1(50.0);
    check(lo - hi >= 0.02, format!("mean F1 sigma 10: {lo:.4}, sigma 50: {hi:.4}"))?;
    Ok(format!("mean F1 {lo:.4} at sigma 10 vs {hi:.4} at sigma 50"))
}

fn layers() -> Outcome {
    let cat = builtin_catalog();
    let views = [View::Front, View::Top, View::Side];
    let mut labels = 0;
    for seed in 0..50 {
        let m = generate(&SynthSpec::with_seed(seed), &cat).unwrap();
        let drawn = annotate(render_views(&m, &views), &m, &cat, &AnnotateOptions::default());
        for v in &drawn {
            for d in v.dimensions() {
                let n: f64 = d.label.parse().map_err(|_| format!("seed {seed}: label {:?}", d.label))?;
                check(n == d.measured(), format!("seed {seed}: label {} for span {}", d.label, d.measured()))?;
                labels += 1;
            }
        }
        let sheet = layout_sheet(drawn, DEFAULT_CANVAS_PX);
        let full = to_svg(&sheet, &Style::default());
        let geo = to_svg(&sheet, &Style { layers: Layers { geometry: true, annotation: false }, ..Style::default() });
        check(remove_group(&full, "annotation").as_deref() == Some(geo.as_str()), format!("seed {seed}: layers differ"))?;
    }
    Ok(format!("50 models separate; {labels} labels exact"))
}

fn determinism() -> Outcome {
    let golden = common::golden_dir();
    for (name, args) in common::CASES {
        let a = common::transcript(cabinet_bin(), args);
        let b = common::transcript(cabinet_bin(), args);
        check(a == b, format!("{name}: re-run differs"))?;
        let want = std::fs::read_to_string(golden.join(format!("{name}.txt"))).map_err(|e| format!("{name}: {e}"))?;
        check(a == want, format!("{name}: differs from the golden file"))?;
    }
    Ok(format!("{} fixtures byte-identical across runs and golden files", common::CASES.len()))
}

fn syntax_length() -> Outcome {
    let cat = builtin_catalog();
    let longer = (0..1000)
        .filter(|&seed| {
            let m = generate(&SynthSpec::with_seed(seed), &cat).unwrap();
            emit(&m, Syntax::Yaml, &cat).unwrap().chars().count() > emit(&m, Syntax::Python, &cat).unwrap().chars().count()
        })
        .count();
    check(longer >= 950, format!("YAML longer for {longer} of 1000"))?;
    Ok(format!("YAML longer for {longer} of 1000"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("round-trip identity", round_trip),
        ("assignment optimality", assignment),
        ("IoU correctness", iou_cases),
        ("protocol constants", constants),
        ("codec error bound", codec_bound),
        ("metric sanity", metric_sanity),
        ("perturbation monotonicity", monotonicity),
        ("drawing layer separation", layers),
        ("CLI determinism", determinism),
        ("syntax length", syntax_length),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
