//! Binary classification metrics and the repeated-split experiment harness.

use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::DataTable;
use crate::error::{Error, Result};
use crate::inference::{classify, Posterior};
use crate::learn::{fit_bayesian, fit_mle, hill_climb, hybrid_learn, learn_skeleton, orient, ScoreKind};
use crate::naive_bayes::{nb_fit, nb_predict, DEFAULT_PSEUDO_COUNT};
use crate::network::DiscreteBayesNet;
use crate::paper::paper_network;
use crate::variable::Assignment;

/// Counts for positive class 1. Rows are actual labels, columns predicted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    pub r#fn: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.r#fn + self.tn
    }
}

pub fn confusion(predicted: &[usize], actual: &[usize]) -> Result<ConfusionMatrix> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch(predicted.len(), actual.len()));
    }
    let mut cm = ConfusionMatrix::default();
    for (&p, &a) in predicted.iter().zip(actual) {
        match (a, p) {
            (1, 1) => cm.tp += 1,
            (0, 1) => cm.fp += 1,
            (1, 0) => cm.r#fn += 1,
            (0, 0) => cm.tn += 1,
            _ => return Err(Error::NonBinaryLabel(if p > 1 { p } else { a })),
        }
    }
    Ok(cm)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Metrics whose denominator was zero and were reported as 0.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub undefined: Vec<&'static str>,
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<Metrics> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut undefined = Vec::new();
    let mut ratio = |num: u64, den: u64, name: &'static str| {
        if den == 0 {
            undefined.push(name);
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let accuracy = (cm.tp + cm.tn) as f64 / total as f64;
    let precision = ratio(cm.tp, cm.tp + cm.fp, "precision");
    let recall = ratio(cm.tp, cm.tp + cm.r#fn, "recall");
    let f1 = if precision + recall == 0.0 {
        undefined.push("f1");
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(Metrics {
        accuracy,
        precision,
        recall,
        f1,
        undefined,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "algorithm")]
pub enum Learner {
    HillClimb {
        score: ScoreKind,
    },
    Pc {
        alpha: f64,
        max_sepset: usize,
    },
    Hybrid {
        alpha: f64,
        max_sepset: usize,
        score: ScoreKind,
    },
}

impl Learner {
    pub fn learn(&self, data: &DataTable) -> Result<crate::dag::Dag> {
        match *self {
            Learner::HillClimb { score } => hill_climb(data, score, 1_000, 0),
            Learner::Pc { alpha, max_sepset } => Ok(orient(&learn_skeleton(data, alpha, max_sepset)?)?.dag),
            Learner::Hybrid {
                alpha,
                max_sepset,
                score,
            } => Ok(hybrid_learn(data, alpha, score, max_sepset)?.dag),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    BnPaper,
    BnLearned(Learner),
    Nb,
}

impl ModelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::BnPaper => "bn-paper",
            ModelKind::BnLearned(_) => "bn-learned",
            ModelKind::Nb => "nb",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "estimator")]
pub enum Estimator {
    #[default]
    Mle,
    Bayes {
        ess: f64,
    },
}

impl Estimator {
    pub fn fit(&self, dag: &crate::dag::Dag, data: &DataTable) -> Result<DiscreteBayesNet> {
        match *self {
            Estimator::Mle => fit_mle(dag, data),
            Estimator::Bayes { ess } => fit_bayesian(dag, data, ess),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub model: ModelKind,
    pub ratio: f64,
    pub seeds: Vec<u64>,
    pub estimator: Estimator,
    pub nb_pseudo: f64,
    pub class_var: String,
}

impl ExperimentConfig {
    pub fn new(model: ModelKind, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            model,
            ratio: 0.8,
            seeds,
            estimator: Estimator::Mle,
            nb_pseudo: DEFAULT_PSEUDO_COUNT,
            class_var: crate::dataset::TARGET.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedResult {
    pub seed: u64,
    pub train_rows: usize,
    pub test_rows: usize,
    pub confusion: ConfusionMatrix,
    pub metrics: Metrics,
    /// Test rows whose full evidence had probability zero under the fitted
    /// model and were classified from a reduced evidence set.
    pub fallbacks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricSummary {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub mean: MetricSummary,
    /// Sample standard deviation (n - 1); zero for a single seed.
    pub stddev: MetricSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub model_kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learner: Option<Learner>,
    /// Parameter estimator for network models.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<Estimator>,
    /// Additive smoothing for naive Bayes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_count: Option<f64>,
    pub ratio: f64,
    pub class_var: String,
    pub per_seed: Vec<SeedResult>,
    pub aggregate: Aggregate,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A fitted classifier for one split.
pub enum Classifier {
    Network(DiscreteBayesNet),
    NaiveBayes(crate::naive_bayes::NbModel),
}

impl Classifier {
    pub fn fit(config: &ExperimentConfig, train: &DataTable) -> Result<Self> {
        Ok(match config.model {
            ModelKind::BnPaper => Classifier::Network(config.estimator.fit(&paper_network(), train)?),
            ModelKind::BnLearned(learner) => {
                let dag = learner.learn(train)?;
                Classifier::Network(config.estimator.fit(&dag, train)?)
            }
            ModelKind::Nb => Classifier::NaiveBayes(nb_fit(train, &config.class_var, config.nb_pseudo)?),
        })
    }

    /// Predicted class and whether the evidence had to be reduced.
    pub fn predict(&self, class_var: &str, evidence: &Assignment) -> Result<(usize, Posterior, bool)> {
        match self {
            Classifier::Network(net) => classify_with_fallback(net, class_var, evidence),
            Classifier::NaiveBayes(m) => match nb_predict(m, evidence) {
                Ok((c, p)) => Ok((c, p, false)),
                Err(Error::ZeroEvidence) => {
                    let (c, p) = nb_predict(m, &Assignment::new())?;
                    Ok((c, p, true))
                }
                Err(e) => Err(e),
            },
        }
    }
}

/// Classify with all evidence; if that evidence has probability zero, retry
/// with only the class variable's Markov blanket observed (the same
/// posterior whenever the full one exists), then with no evidence.
pub fn classify_with_fallback(
    net: &DiscreteBayesNet,
    class_var: &str,
    evidence: &Assignment,
) -> Result<(usize, Posterior, bool)> {
    match classify(net, class_var, evidence) {
        Ok((c, p)) => return Ok((c, p, false)),
        Err(Error::ZeroEvidence) => {}
        Err(e) => return Err(e),
    }
    let blanket = net.dag().markov_blanket(class_var)?;
    let mut reduced = evidence.clone();
    reduced.retain(|n| blanket.contains(n));
    match classify(net, class_var, &reduced) {
        Ok((c, p)) => Ok((c, p, true)),
        Err(Error::ZeroEvidence) => {
            let (c, p) = classify(net, class_var, &Assignment::new())?;
            Ok((c, p, true))
        }
        Err(e) => Err(e),
    }
}

fn run_seed(table: &DataTable, config: &ExperimentConfig, seed: u64) -> Result<SeedResult> {
    let (train, test) = table.split(config.ratio, seed)?;
    let model = Classifier::fit(config, &train)?;
    let class_col = test.column_index(&config.class_var)?;
    let mut predicted = Vec::with_capacity(test.n_rows());
    let mut actual = Vec::with_capacity(test.n_rows());
    let mut fallbacks = 0;
    for r in 0..test.n_rows() {
        let evidence = test.row_assignment(r, &[config.class_var.as_str()]);
        let (c, _, reduced) = model.predict(&config.class_var, &evidence)?;
        fallbacks += usize::from(reduced);
        predicted.push(c);
        actual.push(test.rows()[r][class_col]);
    }
    let cm = confusion(&predicted, &actual)?;
    Ok(SeedResult {
        seed,
        train_rows: train.n_rows(),
        test_rows: test.n_rows(),
        metrics: metrics(&cm)?,
        confusion: cm,
        fallbacks,
    })
}

fn summarize(results: &[SeedResult]) -> Aggregate {
    let n = results.len() as f64;
    let pick = |f: fn(&Metrics) -> f64| -> (f64, f64) {
        if results.is_empty() {
            return (0.0, 0.0);
        }
        let values: Vec<f64> = results.iter().map(|r| f(&r.metrics)).collect();
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        (mean, sd)
    };
    let (acc, acc_sd) = pick(|m| m.accuracy);
    let (pre, pre_sd) = pick(|m| m.precision);
    let (rec, rec_sd) = pick(|m| m.recall);
    let (f1, f1_sd) = pick(|m| m.f1);
    Aggregate {
        mean: MetricSummary {
            accuracy: acc,
            precision: pre,
            recall: rec,
            f1,
        },
        stddev: MetricSummary {
            accuracy: acc_sd,
            precision: pre_sd,
            recall: rec_sd,
            f1: f1_sd,
        },
    }
}

/// Split, fit on the training part and classify every test row from all
/// non-class columns, once per seed. Seeds run concurrently; the report is
/// ordered by seed.
pub fn run_experiment(table: &DataTable, config: &ExperimentConfig) -> Result<Report> {
    table.column_index(&config.class_var)?;
    let mut per_seed = config
        .seeds
        .par_iter()
        .map(|&seed| run_seed(table, config, seed))
        .collect::<Result<Vec<_>>>()?;
    per_seed.sort_by_key(|r| r.seed);
    Ok(Report {
        model_kind: config.model.label(),
        learner: match config.model {
            ModelKind::BnLearned(l) => Some(l),
            _ => None,
        },
        estimator: (config.model != ModelKind::Nb).then_some(config.estimator),
        pseudo_count: (config.model == ModelKind::Nb).then_some(config.nb_pseudo),
        ratio: config.ratio,
        class_var: config.class_var.clone(),
        aggregate: summarize(&per_seed),
        per_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_prediction() {
        let cm = confusion(&[1, 0, 1], &[1, 0, 1]).unwrap();
        assert_eq!(
            cm,
            ConfusionMatrix {
                tp: 2,
                fp: 0,
                r#fn: 0,
                tn: 1
            }
        );
        let m = metrics(&cm).unwrap();
        assert_eq!((m.accuracy, m.precision, m.recall, m.f1), (1.0, 1.0, 1.0, 1.0));
        assert!(m.undefined.is_empty());
    }

    #[test]
    fn all_false_positives() {
        let cm = confusion(&[1; 5], &[0; 5]).unwrap();
        assert_eq!(cm.fp, 5);
        let m = metrics(&cm).unwrap();
        assert_eq!(m.precision, 0.0);
        assert_eq!(m.undefined, vec!["recall", "f1"]);
    }

    #[test]
    fn worked_example() {
        let cm = ConfusionMatrix {
            tp: 20,
            fp: 5,
            r#fn: 4,
            tn: 31,
        };
        let m = metrics(&cm).unwrap();
        assert!((m.accuracy - 0.85).abs() < 1e-15);
        assert!((m.precision - 0.8).abs() < 1e-15);
        assert!((m.recall - 20.0 / 24.0).abs() < 1e-15);
        assert!((m.f1 - 0.816327).abs() < 1e-6);
    }

    #[test]
    fn fifty_one_of_sixty() {
        let cm = ConfusionMatrix {
            tp: 30,
            fp: 4,
            r#fn: 5,
            tn: 21,
        };
        assert!((metrics(&cm).unwrap().accuracy - 0.85).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(confusion(&[1], &[1, 0]), Err(Error::LengthMismatch(1, 2))));
        assert!(matches!(confusion(&[2], &[1]), Err(Error::NonBinaryLabel(2))));
        assert!(matches!(metrics(&ConfusionMatrix::default()), Err(Error::EmptyMatrix)));
        let cm = ConfusionMatrix {
            tp: 0,
            fp: 0,
            r#fn: 3,
            tn: 2,
        };
        let m = metrics(&cm).unwrap();
        assert_eq!(m.precision, 0.0);
        assert!(m.undefined.contains(&"precision"));
    }
}
