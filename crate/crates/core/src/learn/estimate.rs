//! Parameter estimation for a fixed structure.

use super::counts::CountTable;
use crate::cpt::Cpt;
use crate::dag::Dag;
use crate::dataset::DataTable;
use crate::error::{Error, Result};
use crate::network::DiscreteBayesNet;

fn family_counts(dag: &Dag, data: &DataTable) -> Result<Vec<CountTable>> {
    for name in dag.names() {
        if data.column_index(name).is_err() {
            return Err(Error::SchemaMismatch(format!("data has no column for node `{name}`")));
        }
    }
    dag.names()
        .iter()
        .map(|n| CountTable::from_data(data, n, &dag.parents(n)?))
        .collect()
}

/// Relative-frequency estimates `N(x, pa) / N(pa)`. Parent configurations
/// never seen in the data get a uniform row.
pub fn fit_mle(dag: &Dag, data: &DataTable) -> Result<DiscreteBayesNet> {
    let cpts = family_counts(dag, data)?
        .into_iter()
        .map(|t| {
            let r = t.cardinality();
            let mut table = Vec::with_capacity(t.counts.len());
            for (config, &n) in t.totals.iter().enumerate() {
                if n == 0 {
                    table.extend(std::iter::repeat_n(1.0 / r as f64, r));
                } else {
                    table.extend(t.row(config).iter().map(|&c| c as f64 / n as f64));
                }
            }
            Cpt::new(t.variable, t.parents, table)
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteBayesNet::new(dag.clone(), cpts)
}

/// Posterior-mean estimates under a uniform Dirichlet prior of total weight
/// `ess` spread over the whole table:
/// `(N(x, pa) + ess / (r q)) / (N(pa) + ess / q)`.
pub fn fit_bayesian(dag: &Dag, data: &DataTable, ess: f64) -> Result<DiscreteBayesNet> {
    if !(ess > 0.0 && ess.is_finite()) {
        return Err(Error::NonPositiveEss(ess));
    }
    let cpts = family_counts(dag, data)?
        .into_iter()
        .map(|t| {
            let r = t.cardinality() as f64;
            let q = t.configurations() as f64;
            let cell = ess / (r * q);
            let row_prior = ess / q;
            let mut table = Vec::with_capacity(t.counts.len());
            for (config, &n) in t.totals.iter().enumerate() {
                let denom = n as f64 + row_prior;
                table.extend(t.row(config).iter().map(|&c| (c as f64 + cell) / denom));
            }
            Cpt::new(t.variable, t.parents, table)
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteBayesNet::new(dag.clone(), cpts)
}
