//! Detection-style evaluation of predicted cabinet programs.
//!
//! Instances are paired by optimal assignment on 1 - IoU. A pair is a true
//! positive when its IoU is strictly above the threshold. Retrieval accuracy
//! is the fraction of qualifying pairs with the right model id; parameter
//! accuracy is the fraction of correctly retrieved pairs whose whole
//! parameter map matches.

mod hungarian;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

pub use hungarian::solve as hungarian;

use crate::catalog::{ParamKind, PrimitiveSchema};
use crate::geometry::{iou, IouMode};
use crate::program::{CabinetModel, ParamValue, Params};
use crate::PrimitiveCatalog;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_IOU_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchPair {
    pub pred: usize,
    pub gt: usize,
    pub iou: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Matching {
    /// Sorted by prediction index.
    pub pairs: Vec<MatchPair>,
    pub unmatched_pred: Vec<usize>,
    pub unmatched_gt: Vec<usize>,
}

impl Matching {
    /// Sum of pair IoUs, added in ascending order so equal multisets give
    /// equal totals.
    pub fn total_iou(&self) -> f64 {
        let mut v: Vec<f64> = self.pairs.iter().map(|p| p.iou).collect();
        v.sort_by(f64::total_cmp);
        v.iter().sum()
    }
}

/// Pairwise IoU matrix, rows = predictions.
pub fn iou_matrix(pred: &CabinetModel, gt: &CabinetModel, mode: IouMode) -> Vec<Vec<f64>> {
    pred.instances
        .iter()
        .map(|p| gt.instances.iter().map(|g| iou(&p.bbox, &g.bbox, mode)).collect())
        .collect()
}

/// Maximum-total-IoU assignment on an IoU matrix with `rows` x `cols` shape.
pub fn assign(ious: &[Vec<f64>], cols: usize) -> Matching {
    let rows = ious.len();
    let n = rows.max(cols);
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i < rows && j < cols { 1.0 - ious[i][j] } else { 1.0 }).collect())
        .collect();
    let a = hungarian(&cost);
    let mut m = Matching::default();
    let mut gt_used = vec![false; cols];
    for (i, &j) in a.iter().enumerate().take(rows) {
        if j < cols {
            gt_used[j] = true;
            m.pairs.push(MatchPair {
                pred: i,
                gt: j,
                iou: ious[i][j],
            });
        } else {
            m.unmatched_pred.push(i);
        }
    }
    m.unmatched_gt = (0..cols).filter(|&j| !gt_used[j]).collect();
    m
}

/// Optimal one-to-one pairing of predicted and ground-truth instances.
pub fn match_instances(pred: &CabinetModel, gt: &CabinetModel, mode: IouMode) -> Matching {
    assign(&iou_matrix(pred, gt, mode), gt.len())
}

/// Which matched pairs count toward retrieval accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RetrievalBasis {
    /// Only pairs above the IoU threshold.
    #[default]
    TpPairs,
    /// Every assigned pair.
    AllPairs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub iou_thresh: f64,
    pub iou_mode: IouMode,
    pub retrieval: RetrievalBasis,
    pub length_tol_mm: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            iou_thresh: DEFAULT_IOU_THRESHOLD,
            iou_mode: IouMode::Rotated,
            retrieval: RetrievalBasis::TpPairs,
            length_tol_mm: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub retrieval_correct: usize,
    pub retrieval_total: usize,
    pub param_correct: usize,
    pub param_total: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

impl SampleReport {
    fn from_counts(tp: usize, n_pred: usize, n_gt: usize, retrieval: (usize, usize), param: (usize, usize)) -> Self {
        let precision = ratio(tp, n_pred);
        let recall = ratio(tp, n_gt);
        SampleReport {
            tp,
            fp: n_pred - tp,
            fn_: n_gt - tp,
            precision,
            recall,
            f1: f1(precision, recall),
            retrieval_correct: retrieval.0,
            retrieval_total: retrieval.1,
            param_correct: param.0,
            param_total: param.1,
        }
    }

    /// `None` when no pair qualified.
    pub fn retrieval_accuracy(&self) -> Option<f64> {
        (self.retrieval_total > 0).then(|| ratio(self.retrieval_correct, self.retrieval_total))
    }

    /// `None` when no pair was correctly retrieved.
    pub fn param_accuracy(&self) -> Option<f64> {
        (self.param_total > 0).then(|| ratio(self.param_correct, self.param_total))
    }
}

fn canonical(v: &ParamValue) -> String {
    match v {
        ParamValue::Int(i) => i.to_string(),
        ParamValue::Real(r) if r.fract() == 0.0 && r.abs() < 1e15 => format!("{}", *r as i64),
        other => other.to_string(),
    }
}

/// True iff both maps have the same keys and every value agrees. Values of
/// length-typed keys may differ by up to `length_tol_mm`; everything else is
/// compared after canonicalization.
pub fn param_match(a: &Params, b: &Params, schema: Option<&PrimitiveSchema>, length_tol_mm: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().all(|(k, va)| {
        let Some(vb) = b.get(k) else { return false };
        let kind = schema.and_then(|s| s.param(k)).map(|p| p.kind);
        match (kind, va.as_f64(), vb.as_f64()) {
            (Some(ParamKind::LengthMm), Some(x), Some(y)) => (x - y).abs() <= length_tol_mm,
            _ => canonical(va) == canonical(vb),
        }
    })
}

/// Scores one prediction against its ground truth.
pub fn evaluate_sample(pred: &CabinetModel, gt: &CabinetModel, catalog: &PrimitiveCatalog, opts: &EvalOptions) -> SampleReport {
    if pred.is_empty() || gt.is_empty() {
        return SampleReport::from_counts(0, pred.len(), gt.len(), (0, 0), (0, 0));
    }
    let m = match_instances(pred, gt, opts.iou_mode);
    let mut tp = 0;
    let (mut rc, mut rt, mut pc, mut pt) = (0, 0, 0, 0);
    for pair in &m.pairs {
        let hit = pair.iou > opts.iou_thresh;
        tp += hit as usize;
        if !hit && opts.retrieval == RetrievalBasis::TpPairs {
            continue;
        }
        rt += 1;
        let p = &pred.instances[pair.pred];
        let g = &gt.instances[pair.gt];
        if p.model_id == g.model_id {
            rc += 1;
            pt += 1;
            if param_match(&p.params, &g.params, catalog.get(&g.model_id), opts.length_tol_mm) {
                pc += 1;
            }
        }
    }
    SampleReport::from_counts(tp, pred.len(), gt.len(), (rc, rt), (pc, pt))
}

/// One corpus entry. A prediction that failed to load is scored as empty; a
/// ground truth that failed to load excludes the sample.
#[derive(Debug, Clone)]
pub struct CorpusSample {
    pub id: String,
    pub pred: Result<CabinetModel, String>,
    pub gt: Result<CabinetModel, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub id: String,
    #[serde(flatten)]
    pub report: SampleReport,
    /// Load error of the prediction, scored as an empty prediction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pred_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedSample {
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub retrieval_accuracy: Option<f64>,
    pub param_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Totals {
    pub samples: usize,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub retrieval_correct: usize,
    pub retrieval_total: usize,
    pub param_correct: usize,
    pub param_total: usize,
    pub pred_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub iou_threshold: f64,
    pub iou_mode: &'static str,
    pub retrieval_basis: RetrievalBasis,
    pub samples: Vec<SampleRecord>,
    pub excluded: Vec<ExcludedSample>,
    pub totals: Totals,
    #[serde(rename = "macro")]
    pub macro_: Aggregate,
    pub micro: Aggregate,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Fixed-width summary: retrieval acc | precision | recall | F1 | param acc.
    pub fn summary_table(&self) -> String {
        let pct = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{:.2}", v * 100.0));
        let mut out = String::new();
        let _ = writeln!(out, "{:<6} {:>9} {:>9} {:>9} {:>9} {:>9}", "", "retrieval", "precision", "recall", "F1", "param");
        for (name, a) in [("macro", &self.macro_), ("micro", &self.micro)] {
            let _ = writeln!(
                out,
                "{:<6} {:>9} {:>9} {:>9} {:>9} {:>9}",
                name,
                pct(a.retrieval_accuracy),
                pct(Some(a.precision)),
                pct(Some(a.recall)),
                pct(Some(a.f1)),
                pct(a.param_accuracy)
            );
        }
        let _ = writeln!(
            out,
            "samples {}, excluded {}, prediction load failures {}",
            self.totals.samples,
            self.excluded.len(),
            self.totals.pred_failures
        );
        out
    }
}

/// Evaluates every sample, possibly in parallel. The report is sorted by
/// sample id and aggregated from integer counts, so it does not depend on
/// input order or thread count.
pub fn evaluate_corpus(samples: Vec<CorpusSample>, catalog: &PrimitiveCatalog, opts: &EvalOptions) -> CorpusReport {
    let results: Vec<Result<SampleRecord, ExcludedSample>> = samples
        .into_par_iter()
        .map(|s| {
            let gt = s.gt.map_err(|error| ExcludedSample { id: s.id.clone(), error })?;
            let (pred, pred_error) = match s.pred {
                Ok(p) => (p, None),
                Err(e) => (CabinetModel::default(), Some(e)),
            };
            Ok(SampleRecord {
                id: s.id,
                report: evaluate_sample(&pred, &gt, catalog, opts),
                pred_error,
            })
        })
        .collect();
    let mut records = Vec::new();
    let mut excluded = Vec::new();
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => excluded.push(e),
        }
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    excluded.sort_by(|a, b| a.id.cmp(&b.id));

    let mut t = Totals {
        samples: records.len(),
        ..Totals::default()
    };
    for r in &records {
        let s = &r.report;
        t.tp += s.tp;
        t.fp += s.fp;
        t.fn_ += s.fn_;
        t.retrieval_correct += s.retrieval_correct;
        t.retrieval_total += s.retrieval_total;
        t.param_correct += s.param_correct;
        t.param_total += s.param_total;
        t.pred_failures += r.pred_error.is_some() as usize;
    }
    let reports = || records.iter().map(|r| &r.report);
    let macro_ = Aggregate {
        precision: mean(reports().map(|s| s.precision)).unwrap_or(0.0),
        recall: mean(reports().map(|s| s.recall)).unwrap_or(0.0),
        f1: mean(reports().map(|s| s.f1)).unwrap_or(0.0),
        retrieval_accuracy: mean(reports().filter_map(SampleReport::retrieval_accuracy)),
        param_accuracy: mean(reports().filter_map(SampleReport::param_accuracy)),
    };
    let mp = ratio(t.tp, t.tp + t.fp);
    let mr = ratio(t.tp, t.tp + t.fn_);
    let micro = Aggregate {
        precision: mp,
        recall: mr,
        f1: f1(mp, mr),
        retrieval_accuracy: (t.retrieval_total > 0).then(|| ratio(t.retrieval_correct, t.retrieval_total)),
        param_accuracy: (t.param_total > 0).then(|| ratio(t.param_correct, t.param_total)),
    };
    CorpusReport {
        schema_version: REPORT_SCHEMA_VERSION,
        iou_threshold: opts.iou_thresh,
        iou_mode: match opts.iou_mode {
            IouMode::Rotated => "rotated",
            IouMode::Aabb => "aabb",
        },
        retrieval_basis: opts.retrieval,
        samples: records,
        excluded,
        totals: t,
        macro_,
        micro,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{builtin_catalog, OrientedBox, PrimitiveInstance};

    fn unit(x: f64, id: &str) -> PrimitiveInstance {
        PrimitiveInstance::new(id, OrientedBox::new([x, 0.5, 0.5], [1.0; 3], 0.0).unwrap())
    }

    fn model(xs: &[f64]) -> CabinetModel {
        CabinetModel::new(xs.iter().map(|&x| unit(x, "M-DOOR")).collect())
    }

    #[test]
    fn cardinality() {
        let m = match_instances(&model(&[0.5, 10.5]), &model(&[0.5, 10.5, 20.5]), IouMode::Rotated);
        assert_eq!(m.pairs.len(), 2);
        assert_eq!(m.unmatched_gt, vec![2]);
        assert!(m.unmatched_pred.is_empty());
        let m = match_instances(&model(&[0.5, 10.5, 20.5]), &model(&[20.5]), IouMode::Rotated);
        assert_eq!(m.pairs, vec![MatchPair { pred: 2, gt: 0, iou: 1.0 }]);
        assert_eq!(m.unmatched_pred, vec![0, 1]);
    }

    #[test]
    fn identical_models_score_one() {
        let cat = builtin_catalog();
        let gt = model(&[0.5, 10.5, 20.5]);
        let r = evaluate_sample(&gt, &gt, &cat, &EvalOptions::default());
        assert_eq!((r.tp, r.fp, r.fn_), (3, 0, 0));
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));
        assert_eq!(r.retrieval_accuracy(), Some(1.0));
        assert_eq!(r.param_accuracy(), Some(1.0));
    }

    #[test]
    fn one_third_overlap_is_not_a_hit() {
        let cat = builtin_catalog();
        let gt = model(&[0.5, 10.5]);
        let pred = model(&[0.5, 11.0]);
        let r = evaluate_sample(&pred, &gt, &cat, &EvalOptions::default());
        assert_eq!((r.tp, r.fp, r.fn_), (1, 1, 1));
        assert_eq!((r.precision, r.recall, r.f1), (0.5, 0.5, 0.5));
    }

    #[test]
    fn wrong_ids_keep_f1() {
        let cat = builtin_catalog();
        let gt = model(&[0.5, 10.5]);
        let pred = CabinetModel::new(vec![unit(0.5, "M-PANEL"), unit(10.5, "M-PANEL")]);
        let r = evaluate_sample(&pred, &gt, &cat, &EvalOptions::default());
        assert_eq!(r.f1, 1.0);
        assert_eq!(r.retrieval_accuracy(), Some(0.0));
        assert_eq!(r.param_total, 0);
    }

    #[test]
    fn empty_prediction() {
        let cat = builtin_catalog();
        let r = evaluate_sample(&CabinetModel::default(), &model(&[0.5]), &cat, &EvalOptions::default());
        assert_eq!((r.precision, r.recall, r.f1, r.retrieval_total), (0.0, 0.0, 0.0, 0));
        assert_eq!(r.fn_, 1);
    }

    #[test]
    fn all_pairs_basis_counts_misses() {
        let cat = builtin_catalog();
        let gt = model(&[0.5, 10.5]);
        let pred = model(&[0.5, 11.0]);
        let opts = EvalOptions {
            retrieval: RetrievalBasis::AllPairs,
            ..EvalOptions::default()
        };
        assert_eq!(evaluate_sample(&pred, &gt, &cat, &opts).retrieval_total, 2);
    }

    #[test]
    fn param_match_rules() {
        let cat = builtin_catalog();
        let bb = cat.get("M-BB01");
        let p = |pairs: &[(&str, ParamValue)]| pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Params>();
        let e = |s: &str| ParamValue::Enum(s.into());
        assert!(param_match(&p(&[("DBXX", e("1"))]), &p(&[("DBXX", e("1"))]), bb, 0.0));
        assert!(!param_match(&p(&[("DBXX", e("1"))]), &p(&[("DBXX", e("2"))]), bb, 0.0));
        let a = p(&[("NKA", ParamValue::real(300.0))]);
        let b = p(&[("NKA", ParamValue::real(301.0))]);
        assert!(!param_match(&a, &b, bb, 0.0));
        assert!(param_match(&a, &b, bb, 2.0));
        assert!(param_match(&a, &p(&[("NKA", ParamValue::Int(300))]), bb, 0.0));
        assert!(!param_match(&a, &p(&[]), bb, 0.0));
        assert!(!param_match(&a, &p(&[("NKB", ParamValue::real(300.0))]), bb, 0.0));
    }

    #[test]
    fn macro_and_micro() {
        let cat = builtin_catalog();
        let samples = vec![
            CorpusSample {
                id: "b".into(),
                pred: Ok(model(&[0.5])),
                gt: Ok(model(&[0.5])),
            },
            CorpusSample {
                id: "a".into(),
                pred: Ok(model(&[40.5, 50.5, 60.5])),
                gt: Ok(model(&[0.5, 10.5, 20.5])),
            },
            CorpusSample {
                id: "c".into(),
                pred: Err("bad".into()),
                gt: Ok(model(&[0.5])),
            },
            CorpusSample {
                id: "d".into(),
                pred: Ok(model(&[0.5])),
                gt: Err("bad".into()),
            },
        ];
        let r = evaluate_corpus(samples, &cat, &EvalOptions::default());
        assert_eq!(r.samples.iter().map(|s| s.id.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(r.excluded.len(), 1);
        assert_eq!(r.totals.pred_failures, 1);
        assert!((r.macro_.f1 - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.micro.precision, 0.25);
        assert_eq!(r.micro.recall, 0.2);
        let json = r.to_json();
        assert!(json.contains("\"schema_version\": 1"));
        assert!(json.contains("\"macro\""));
        assert!(json.contains("\"fn\": 3"));
        assert!(r.summary_table().contains("micro"));
    }
}
