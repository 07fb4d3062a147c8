use cabinet_core::geometry::{iou3d, IouMode};
use cabinet_core::metrics::{evaluate_sample, iou_matrix, match_instances, EvalOptions, Matching};
use cabinet_core::synth::{generate, perturb, PerturbSpec, SynthSpec};
use cabinet_core::{builtin_catalog, CabinetModel, OrientedBox, PrimitiveInstance};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Best total IoU over every injection of the smaller side into the larger,
/// summed in ascending order like `Matching::total_iou`.
type Lookup<'a> = Box<dyn Fn(usize, usize) -> f64 + 'a>;

fn brute_force(m: &[Vec<f64>], cols: usize) -> f64 {
    let rows = m.len();
    let (small, large, get): (usize, usize, Lookup) = if rows <= cols {
        (rows, cols, Box::new(|i, j| m[i][j]))
    } else {
        (cols, rows, Box::new(|j, i| m[i][j]))
    };
    fn rec(k: usize, small: usize, large: usize, used: &mut Vec<bool>, acc: &mut Vec<f64>, get: &dyn Fn(usize, usize) -> f64, best: &mut f64) {
        if k == small {
            let mut v = acc.clone();
            v.sort_by(f64::total_cmp);
            let s: f64 = v.iter().sum();
            if s > *best {
                *best = s;
            }
            return;
        }
        for j in 0..large {
            if !used[j] {
                used[j] = true;
                acc.push(get(k, j));
                rec(k + 1, small, large, used, acc, get, best);
                acc.pop();
                used[j] = false;
            }
        }
    }
    let mut best = f64::NEG_INFINITY;
    rec(0, small, large, &mut vec![false; large], &mut Vec::new(), &*get, &mut best);
    best
}

fn cluster_model(rng: &mut ChaCha8Rng, n: usize) -> CabinetModel {
    let t = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| rng.random_range(lo..=hi) as f64 / 10.0;
    CabinetModel::new(
        (0..n)
            .map(|_| {
                let b = OrientedBox::new(
                    [t(rng, 0, 4000), t(rng, 0, 4000), t(rng, 0, 4000)],
                    [t(rng, 100, 3000), t(rng, 100, 3000), t(rng, 100, 3000)],
                    if rng.random_bool(0.5) { 0.0 } else { t(rng, 0, 3599) },
                )
                .unwrap();
                PrimitiveInstance::new("M-DOOR", b)
            })
            .collect(),
    )
}

fn check_matching(m: &Matching, np: usize, ng: usize) {
    assert_eq!(m.pairs.len(), np.min(ng));
    let mut preds: Vec<usize> = m.pairs.iter().map(|p| p.pred).chain(m.unmatched_pred.iter().copied()).collect();
    let mut gts: Vec<usize> = m.pairs.iter().map(|p| p.gt).chain(m.unmatched_gt.iter().copied()).collect();
    preds.sort();
    gts.sort();
    assert_eq!(preds, (0..np).collect::<Vec<_>>());
    assert_eq!(gts, (0..ng).collect::<Vec<_>>());
}

#[test]
fn hungarian_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let np = rng.random_range(1..=7);
        let ng = rng.random_range(1..=7);
        let pred = cluster_model(&mut rng, np);
        let gt = cluster_model(&mut rng, ng);
        let m = match_instances(&pred, &gt, IouMode::Rotated);
        check_matching(&m, np, ng);
        let oracle = brute_force(&iou_matrix(&pred, &gt, IouMode::Rotated), ng);
        assert_eq!(m.total_iou(), oracle);
    }
}

#[test]
fn identical_distinct_boxes_match_with_unit_iou() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let gt = cluster_model(&mut rng, 7);
    let mut shuffled = gt.clone();
    shuffled.instances.shuffle(&mut rng);
    let m = match_instances(&shuffled, &gt, IouMode::Rotated);
    assert!(m.pairs.iter().all(|p| p.iou == 1.0));
    for p in &m.pairs {
        assert_eq!(shuffled.instances[p.pred], gt.instances[p.gt]);
    }
}

#[test]
fn worked_example_two_boxes() {
    let cat = builtin_catalog();
    let unit = |x: f64| PrimitiveInstance::new("M-DOOR", OrientedBox::new([x + 0.5, 0.5, 0.5], [1.0; 3], 0.0).unwrap());
    let gt = CabinetModel::new(vec![unit(0.0), unit(10.0)]);
    let pred = CabinetModel::new(vec![unit(0.0), unit(10.5)]);
    assert!((iou3d(&pred.instances[1].bbox, &gt.instances[1].bbox) - 1.0 / 3.0).abs() < 1e-12);
    let r = evaluate_sample(&pred, &gt, &cat, &EvalOptions::default());
    assert_eq!((r.tp, r.fp, r.fn_), (1, 1, 1));
    assert_eq!((r.precision, r.recall, r.f1), (0.5, 0.5, 0.5));
}

#[test]
fn threshold_is_strict() {
    let cat = builtin_catalog();
    // IoU exactly 0.5: overlap 2/3 of a unit cube along x gives (2/3)/(4/3)
    let a = OrientedBox::new([1.5, 1.5, 1.5], [3.0; 3], 0.0).unwrap();
    let b = OrientedBox::new([2.5, 1.5, 1.5], [3.0; 3], 0.0).unwrap();
    assert_eq!(iou3d(&a, &b), 0.5);
    let gt = CabinetModel::new(vec![PrimitiveInstance::new("M-DOOR", a)]);
    let pred = CabinetModel::new(vec![PrimitiveInstance::new("M-DOOR", b)]);
    assert_eq!(evaluate_sample(&pred, &gt, &cat, &EvalOptions::default()).tp, 0);
    let lower = EvalOptions {
        iou_thresh: 0.49,
        ..EvalOptions::default()
    };
    assert_eq!(evaluate_sample(&pred, &gt, &cat, &lower).tp, 1);
}

#[test]
fn swap_and_drop_perturbations() {
    let cat = builtin_catalog();
    for seed in 0..20 {
        let gt = generate(&SynthSpec::with_seed(seed), &cat).unwrap();
        let swapped = perturb(
            &gt,
            &cat,
            &PerturbSpec {
                seed,
                id_swap_rate: 1.0,
                ..PerturbSpec::default()
            },
        )
        .unwrap();
        let r = evaluate_sample(&swapped, &gt, &cat, &EvalOptions::default());
        assert_eq!(r.f1, 1.0);
        assert_eq!(r.retrieval_accuracy(), Some(0.0));
        assert_eq!(r.param_total, 0);
    }
    let spec = SynthSpec {
        min_instances: 4,
        max_instances: 4,
        ..SynthSpec::with_seed(9)
    };
    let gt = generate(&spec, &cat).unwrap();
    let dropped = perturb(
        &gt,
        &cat,
        &PerturbSpec {
            drop_rate: 0.25,
            ..PerturbSpec::default()
        },
    )
    .unwrap();
    let r = evaluate_sample(&dropped, &gt, &cat, &EvalOptions::default());
    assert_eq!((r.recall, r.precision), (0.75, 1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn report_invariants(seed in any::<u64>(), sigma in 0.0f64..200.0, swap in 0.0f64..1.0, drop in 0.0f64..0.5, add in 0.0f64..0.5) {
        let cat = builtin_catalog();
        let gt = generate(&SynthSpec::with_seed(seed), &cat).unwrap();
        let pred = perturb(&gt, &cat, &PerturbSpec {
            seed,
            position_sigma_mm: sigma,
            size_sigma_mm: sigma / 2.0,
            id_swap_rate: swap,
            drop_rate: drop,
            add_rate: add,
            param_corruption_rate: 0.3,
        }).unwrap();
        let r = evaluate_sample(&pred, &gt, &cat, &EvalOptions::default());
        prop_assert_eq!(r.tp + r.fp, pred.len());
        prop_assert_eq!(r.tp + r.fn_, gt.len());
        prop_assert_eq!(r.param_total, r.retrieval_correct);
        for v in [r.precision, r.recall, r.f1] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        for v in [r.retrieval_accuracy(), r.param_accuracy()].into_iter().flatten() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        let expect_f1 = if r.precision + r.recall > 0.0 { 2.0 * r.precision * r.recall / (r.precision + r.recall) } else { 0.0 };
        prop_assert_eq!(r.f1, expect_f1);

        // permutation invariance
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut p2 = pred.clone();
        let mut g2 = gt.clone();
        p2.instances.shuffle(&mut rng);
        g2.instances.shuffle(&mut rng);
        prop_assert_eq!(evaluate_sample(&p2, &g2, &cat, &EvalOptions::default()), r.clone());

        // threshold monotonicity
        let mut last = usize::MAX;
        for t in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99] {
            let tp = evaluate_sample(&pred, &gt, &cat, &EvalOptions { iou_thresh: t, ..EvalOptions::default() }).tp;
            prop_assert!(tp <= last);
            last = tp;
        }
    }
}
