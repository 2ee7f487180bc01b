use crate::error::{Error, Result};
use crate::variable::Variable;

const ROW_TOLERANCE: f64 = 1e-9;

/// Conditional probability table `P(variable | parents)`.
///
/// Stored row-major: one row per parent configuration, one column per state
/// of `variable`. Configurations are numbered with the parents in declared
/// order and the last parent's state varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Cpt {
    variable: Variable,
    parents: Vec<Variable>,
    table: Vec<f64>,
}

impl Cpt {
    pub fn new(variable: Variable, parents: Vec<Variable>, table: Vec<f64>) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidCpt {
            variable: variable.name().to_string(),
            reason,
        };
        let configs = configuration_count(&parents);
        let r = variable.cardinality();
        if table.len() != configs * r {
            return Err(invalid(format!(
                "expected {} entries ({configs} configurations x {r} states), got {}",
                configs * r,
                table.len()
            )));
        }
        if let Some(p) = table.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(invalid(format!("entry {p} outside [0, 1]")));
        }
        for (i, row) in table.chunks(r).enumerate() {
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOLERANCE {
                return Err(invalid(format!("configuration {i} sums to {sum}")));
            }
        }
        Ok(Cpt {
            variable,
            parents,
            table,
        })
    }

    /// Single-row table for a root node.
    pub fn marginal(variable: Variable, probabilities: Vec<f64>) -> Result<Self> {
        Self::new(variable, Vec::new(), probabilities)
    }

    /// Uniform distribution in every configuration.
    pub fn uniform(variable: Variable, parents: Vec<Variable>) -> Self {
        let r = variable.cardinality();
        let table = vec![1.0 / r as f64; configuration_count(&parents) * r];
        Cpt {
            variable,
            parents,
            table,
        }
    }

    pub fn variable(&self) -> &Variable {
        &self.variable
    }

    pub fn parents(&self) -> &[Variable] {
        &self.parents
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn configurations(&self) -> usize {
        configuration_count(&self.parents)
    }

    /// Configuration index of the given parent states.
    pub fn config_index(&self, parent_states: &[usize]) -> usize {
        debug_assert_eq!(parent_states.len(), self.parents.len());
        parent_states
            .iter()
            .zip(&self.parents)
            .fold(0, |acc, (&s, p)| acc * p.cardinality() + s)
    }

    pub fn row(&self, config: usize) -> &[f64] {
        let r = self.variable.cardinality();
        &self.table[config * r..(config + 1) * r]
    }

    pub fn probability(&self, state: usize, parent_states: &[usize]) -> f64 {
        self.row(self.config_index(parent_states))[state]
    }

    /// Probability looked up by parent state labels, e.g. `&["0", "1"]`.
    pub fn probability_of(&self, state: &str, parent_states: &[&str]) -> Result<f64> {
        let s = self.variable.resolve_state(state)?;
        if parent_states.len() != self.parents.len() {
            return Err(Error::InvalidCpt {
                variable: self.variable.name().to_string(),
                reason: format!(
                    "expected {} parent states, got {}",
                    self.parents.len(),
                    parent_states.len()
                ),
            });
        }
        let ps = parent_states
            .iter()
            .zip(&self.parents)
            .map(|(t, p)| p.resolve_state(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.probability(s, &ps))
    }
}

pub(crate) fn configuration_count(parents: &[Variable]) -> usize {
    parents.iter().map(Variable::cardinality).product()
}
