//! Exact posterior queries: brute-force enumeration (reference) and
//! variable elimination (production path).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::network::DiscreteBayesNet;
use crate::variable::{Assignment, Variable};

/// Distribution over the states of one variable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Posterior {
    pub variable: Variable,
    pub probabilities: Vec<f64>,
}

impl Posterior {
    /// Most probable state; ties go to the lower index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probabilities.iter().enumerate().skip(1) {
            if p > self.probabilities[best] {
                best = i;
            }
        }
        best
    }

    pub fn probability(&self, state: usize) -> f64 {
        self.probabilities[state]
    }

    /// Normalize unnormalized weights, failing on a zero normalizer.
    pub(crate) fn from_weights(variable: Variable, weights: Vec<f64>) -> Result<Self> {
        let z: f64 = weights.iter().sum();
        if z == 0.0 {
            return Err(Error::ZeroEvidence);
        }
        Ok(Posterior {
            variable,
            probabilities: weights.into_iter().map(|w| w / z).collect(),
        })
    }
}

fn check_query(net: &DiscreteBayesNet, query: &str, evidence: &Assignment) -> Result<usize> {
    let q = net.dag().require(query)?;
    if evidence.contains(query) {
        return Err(Error::QueryInEvidence(query.to_string()));
    }
    Ok(q)
}

/// `P(query | evidence)` by summing the chain-rule joint over every
/// completion of the unobserved variables. Exponential; used as an oracle.
pub fn posterior_enumeration(net: &DiscreteBayesNet, query: &str, evidence: &Assignment) -> Result<Posterior> {
    let q = check_query(net, query, evidence)?;
    let fixed = net.states_of(evidence)?;
    let free: Vec<usize> = (0..net.len()).filter(|&i| fixed[i].is_none()).collect();
    let mut states: Vec<usize> = fixed.iter().map(|s| s.unwrap_or(0)).collect();
    let mut weights = vec![0.0; net.cardinality(q)];
    loop {
        weights[states[q]] += net.joint_of_states(&states);
        // Advance the free variables as an odometer.
        let mut k = free.len();
        loop {
            if k == 0 {
                return Posterior::from_weights(net.cpt_at(q).variable().clone(), weights);
            }
            k -= 1;
            let v = free[k];
            states[v] += 1;
            if states[v] < net.cardinality(v) {
                break;
            }
            states[v] = 0;
        }
    }
}

/// `P(query | evidence)` by variable elimination. Factors are sliced on the
/// evidence first; the remaining hidden variables are eliminated in
/// min-degree order with ties broken by name; normalization happens once at
/// the end.
pub fn posterior_ve(net: &DiscreteBayesNet, query: &str, evidence: &Assignment) -> Result<Posterior> {
    let q = check_query(net, query, evidence)?;
    let observed = net.states_of(evidence)?;
    let dag = net.dag();

    let mut factors: Vec<Factor> = (0..net.len())
        .map(|i| {
            let mut f = Factor::from_cpt(dag, i, net.cpt_at(i));
            for (v, s) in observed.iter().enumerate() {
                if let Some(s) = s {
                    f = f.reduce(v, *s);
                }
            }
            f
        })
        .collect();

    let mut hidden: BTreeSet<usize> = (0..net.len()).filter(|&i| i != q && observed[i].is_none()).collect();

    while !hidden.is_empty() {
        let var = next_to_eliminate(net, &factors, &hidden);
        hidden.remove(&var);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.contains(var));
        factors = rest;
        if let Some(joined) = touching.into_iter().reduce(|a, b| a.product(&b)) {
            factors.push(joined.sum_out(var));
        }
    }

    let result = factors
        .into_iter()
        .reduce(|a, b| a.product(&b))
        .expect("network has at least the query node");
    debug_assert!(result.scope() == [q]);
    Posterior::from_weights(net.cpt_at(q).variable().clone(), result.values().to_vec())
}

/// Hidden variable with the fewest neighbours in the current interaction
/// graph; ties broken by node name.
fn next_to_eliminate(net: &DiscreteBayesNet, factors: &[Factor], hidden: &BTreeSet<usize>) -> usize {
    let dag = net.dag();
    hidden
        .iter()
        .map(|&v| {
            let mut neighbours = BTreeSet::new();
            for f in factors.iter().filter(|f| f.contains(v)) {
                neighbours.extend(f.scope().iter().copied().filter(|&u| u != v));
            }
            (neighbours.len(), dag.name(v), v)
        })
        .min()
        .map(|(_, _, v)| v)
        .expect("hidden set is non-empty")
}

/// Most probable state of `class_var` given `evidence`, with its posterior.
pub fn classify(net: &DiscreteBayesNet, class_var: &str, evidence: &Assignment) -> Result<(usize, Posterior)> {
    let posterior = posterior_ve(net, class_var, evidence)?;
    Ok((posterior.argmax(), posterior))
}
