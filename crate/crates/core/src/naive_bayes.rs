//! Naive Bayes over categorical features. The model is a star-shaped
//! Bayesian network (class -> every feature) and converts to and from
//! [`DiscreteBayesNet`].

use crate::cpt::Cpt;
use crate::dag::Dag;
use crate::dataset::DataTable;
use crate::error::{Error, Result};
use crate::inference::Posterior;
use crate::network::DiscreteBayesNet;
use crate::variable::{Assignment, Variable};

pub const DEFAULT_PSEUDO_COUNT: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct NbModel {
    class: Variable,
    features: Vec<Variable>,
    prior: Vec<f64>,
    /// Per feature, rows indexed by class state: `[c * r + x] = P(x | c)`.
    conditionals: Vec<Vec<f64>>,
    pseudo: f64,
}

fn smoothed(counts: &[u64], pseudo: f64) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    let denom = total as f64 + pseudo * counts.len() as f64;
    if denom == 0.0 {
        return vec![1.0 / counts.len() as f64; counts.len()];
    }
    counts.iter().map(|&n| (n as f64 + pseudo) / denom).collect()
}

/// Fit `P(c)` and every `P(x | c)` by relative frequency with additive
/// smoothing `(N + pseudo) / (total + pseudo * cardinality)`. Every column
/// other than `class_var` is a feature.
pub fn nb_fit(data: &DataTable, class_var: &str, pseudo: f64) -> Result<NbModel> {
    if !(pseudo >= 0.0 && pseudo.is_finite()) {
        return Err(Error::NegativePseudoCount(pseudo));
    }
    let ci = data.column_index(class_var)?;
    let class = data.schema()[ci].clone();
    let k = class.cardinality();

    let mut class_counts = vec![0u64; k];
    for c in data.column(ci) {
        class_counts[c] += 1;
    }
    let mut features = Vec::new();
    let mut conditionals = Vec::new();
    for (fi, var) in data.schema().iter().enumerate() {
        if fi == ci {
            continue;
        }
        let r = var.cardinality();
        let mut counts = vec![0u64; k * r];
        for row in data.rows() {
            counts[row[ci] * r + row[fi]] += 1;
        }
        let table: Vec<f64> = counts.chunks(r).flat_map(|c| smoothed(c, pseudo)).collect();
        features.push(var.clone());
        conditionals.push(table);
    }
    Ok(NbModel {
        prior: smoothed(&class_counts, pseudo),
        class,
        features,
        conditionals,
        pseudo,
    })
}

impl NbModel {
    pub fn class(&self) -> &Variable {
        &self.class
    }

    pub fn features(&self) -> &[Variable] {
        &self.features
    }

    pub fn prior(&self) -> &[f64] {
        &self.prior
    }

    pub fn pseudo(&self) -> f64 {
        self.pseudo
    }

    /// `P(feature = state | class = c)`.
    pub fn conditional(&self, feature: &str, state: usize, class_state: usize) -> Result<f64> {
        let f = self.feature_index(feature)?;
        let r = self.features[f].cardinality();
        Ok(self.conditionals[f][class_state * r + state])
    }

    fn feature_index(&self, name: &str) -> Result<usize> {
        self.features
            .iter()
            .position(|v| v.name() == name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    /// The equivalent network: class is the only parent of every feature.
    pub fn to_network(&self) -> Result<DiscreteBayesNet> {
        let names = std::iter::once(self.class.name()).chain(self.features.iter().map(Variable::name));
        let edges: Vec<(&str, &str)> = self.features.iter().map(|f| (self.class.name(), f.name())).collect();
        let dag = Dag::new(names, edges)?;
        let mut cpts = vec![Cpt::marginal(self.class.clone(), self.prior.clone())?];
        for (f, table) in self.features.iter().zip(&self.conditionals) {
            cpts.push(Cpt::new(f.clone(), vec![self.class.clone()], table.clone())?);
        }
        DiscreteBayesNet::new(dag, cpts)
    }

    /// Read back a star network written by [`NbModel::to_network`]. The
    /// pseudo-count is not recoverable from the tables and is reported as
    /// `f64::NAN`.
    pub fn from_network(net: &DiscreteBayesNet, class_var: &str) -> Result<Self> {
        let class_cpt = net.cpt(class_var)?;
        if !class_cpt.parents().is_empty() {
            return Err(Error::SchemaMismatch(format!("`{class_var}` must be a root")));
        }
        let mut features = Vec::new();
        let mut conditionals = Vec::new();
        for cpt in net.cpts() {
            if cpt.variable().name() == class_var {
                continue;
            }
            let parents: Vec<&str> = cpt.parents().iter().map(Variable::name).collect();
            if parents != [class_var] {
                return Err(Error::SchemaMismatch(format!(
                    "`{}` must have `{class_var}` as its only parent",
                    cpt.variable().name()
                )));
            }
            features.push(cpt.variable().clone());
            conditionals.push(cpt.table().to_vec());
        }
        Ok(NbModel {
            class: class_cpt.variable().clone(),
            features,
            prior: class_cpt.table().to_vec(),
            conditionals,
            pseudo: f64::NAN,
        })
    }
}

/// Posterior over the class, `P(c) * prod P(x_i | c)` over the supplied
/// features, accumulated in log space. Features absent from `evidence` are
/// skipped.
pub fn nb_predict(model: &NbModel, evidence: &Assignment) -> Result<(usize, Posterior)> {
    let k = model.class.cardinality();
    let mut log_w: Vec<f64> = model.prior.iter().map(|p| p.ln()).collect();
    for (name, state) in evidence.iter() {
        if name == model.class.name() {
            return Err(Error::QueryInEvidence(name.to_string()));
        }
        let f = model.feature_index(name)?;
        let r = model.features[f].cardinality();
        if state >= r {
            return Err(Error::StateOutOfRange {
                variable: name.to_string(),
                state,
                cardinality: r,
            });
        }
        for (c, w) in log_w.iter_mut().enumerate() {
            *w += model.conditionals[f][c * r + state].ln();
        }
    }
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::ZeroEvidence);
    }
    let weights: Vec<f64> = (0..k).map(|c| (log_w[c] - max).exp()).collect();
    let posterior = Posterior::from_weights(model.class.clone(), weights)?;
    Ok((posterior.argmax(), posterior))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> DataTable {
        DataTable::new(
            vec![Variable::indexed("c", 2).unwrap(), Variable::indexed("x", 2).unwrap()],
            vec![vec![1, 1], vec![1, 0], vec![0, 0], vec![0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn unsmoothed_counts() {
        let m = nb_fit(&data(), "c", 0.0).unwrap();
        assert_eq!(m.prior(), &[0.5, 0.5]);
        assert_eq!(m.conditional("x", 1, 1).unwrap(), 0.5);
        assert_eq!(m.conditional("x", 1, 0).unwrap(), 0.0);
    }

    #[test]
    fn additive_smoothing() {
        let m = nb_fit(&data(), "c", 1.0).unwrap();
        assert_eq!(m.conditional("x", 1, 0).unwrap(), 0.25);
    }

    #[test]
    fn zero_likelihood_vetoes_class() {
        let m = nb_fit(&data(), "c", 0.0).unwrap();
        let (c, post) = nb_predict(&m, &Assignment::new().with("x", 1)).unwrap();
        assert_eq!(c, 1);
        assert_eq!(post.probabilities, vec![0.0, 1.0]);
    }

    #[test]
    fn empty_evidence_uses_prior() {
        let d = DataTable::new(
            vec![Variable::indexed("c", 2).unwrap(), Variable::indexed("x", 2).unwrap()],
            vec![vec![1, 1], vec![1, 0], vec![0, 0]],
        )
        .unwrap();
        let m = nb_fit(&d, "c", 1.0).unwrap();
        let (c, post) = nb_predict(&m, &Assignment::new()).unwrap();
        assert_eq!(c, 1);
        assert_eq!(post.probabilities, m.prior());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(nb_fit(&data(), "c", -1.0), Err(Error::NegativePseudoCount(_))));
        assert!(nb_fit(&data(), "z", 1.0).is_err());
        let m = nb_fit(&data(), "c", 1.0).unwrap();
        assert!(nb_predict(&m, &Assignment::new().with("c", 0)).is_err());
        assert!(nb_predict(&m, &Assignment::new().with("q", 0)).is_err());
    }

    #[test]
    fn star_network_round_trip() {
        let m = nb_fit(&data(), "c", 1.0).unwrap();
        let net = m.to_network().unwrap();
        assert_eq!(net.dag().edge_count(), 1);
        let back = NbModel::from_network(&net, "c").unwrap();
        assert_eq!(back.prior(), m.prior());
        assert_eq!(back.conditional("x", 1, 0).unwrap(), 0.25);
    }
}
