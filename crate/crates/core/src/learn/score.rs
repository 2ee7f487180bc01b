//! Decomposable structure scores.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::counts::CountTable;
use crate::dag::Dag;
use crate::dataset::DataTable;
use crate::error::{Error, Result};

pub const DEFAULT_BDEU_ESS: f64 = 10.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ScoreKind {
    /// Log-likelihood at the MLE minus `ln N / 2` per free parameter.
    #[default]
    Bic,
    /// Bayesian Dirichlet equivalent uniform marginal likelihood.
    Bdeu { ess: f64 },
}

impl ScoreKind {
    pub fn bdeu() -> Self {
        ScoreKind::Bdeu { ess: DEFAULT_BDEU_ESS }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ScoreKind::Bdeu { ess } if !(ess > 0.0 && ess.is_finite()) => Err(Error::NonPositiveEss(ess)),
            _ => Ok(()),
        }
    }

    pub(crate) fn family(&self, counts: &CountTable, n_rows: usize) -> f64 {
        match *self {
            ScoreKind::Bic => bic_family(counts, n_rows),
            ScoreKind::Bdeu { ess } => bdeu_family(counts, ess),
        }
    }
}

fn bic_family(t: &CountTable, n_rows: usize) -> f64 {
    let r = t.cardinality();
    let mut ll = 0.0;
    for (config, &n) in t.totals.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let n = n as f64;
        for &c in t.row(config) {
            if c > 0 {
                let c = c as f64;
                ll += c * (c / n).ln();
            }
        }
    }
    let free = (t.configurations() * (r - 1)) as f64;
    let penalty = if n_rows > 0 {
        (n_rows as f64).ln() / 2.0 * free
    } else {
        0.0
    };
    ll - penalty
}

fn bdeu_family(t: &CountTable, ess: f64) -> f64 {
    let q = t.configurations() as f64;
    let r = t.cardinality() as f64;
    let row_prior = ess / q;
    let cell_prior = ess / (q * r);
    let mut score = 0.0;
    for (config, &n) in t.totals.iter().enumerate() {
        if n == 0 {
            // Empty configurations contribute exactly zero.
            continue;
        }
        score += ln_gamma(row_prior) - ln_gamma(row_prior + n as f64);
        for &c in t.row(config) {
            if c > 0 {
                score += ln_gamma(cell_prior + c as f64) - ln_gamma(cell_prior);
            }
        }
    }
    score
}

/// Score of one node given a parent set, independent of the rest of the
/// graph.
pub fn family_score(data: &DataTable, node: &str, parents: &[&str], kind: ScoreKind) -> Result<f64> {
    kind.validate()?;
    let t = CountTable::from_data(data, node, parents)?;
    Ok(kind.family(&t, data.n_rows()))
}

/// Sum of family scores over all nodes of `dag`.
pub fn score(dag: &Dag, data: &DataTable, kind: ScoreKind) -> Result<f64> {
    kind.validate()?;
    let mut total = 0.0;
    for name in dag.names() {
        if data.column_index(name).is_err() {
            return Err(Error::SchemaMismatch(format!("data has no column for node `{name}`")));
        }
        total += family_score(data, name, &dag.parents(name)?, kind)?;
    }
    Ok(total)
}
