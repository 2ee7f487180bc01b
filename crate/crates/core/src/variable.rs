use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named categorical variable. The index of a state is its position in
/// `states`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    name: String,
    states: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>>(name: impl Into<String>, states: Vec<S>) -> Result<Self> {
        let name = name.into();
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.len() < 2 {
            return Err(Error::TooFewStates(name));
        }
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateState {
                    variable: name,
                    label: s.clone(),
                });
            }
        }
        Ok(Variable { name, states })
    }

    /// Variable whose states are labelled `0..cardinality`.
    pub fn indexed(name: impl Into<String>, cardinality: usize) -> Result<Self> {
        Self::new(name, (0..cardinality).map(|i| i.to_string()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn cardinality(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    /// Resolve a state given either its label or its numeric index.
    pub fn resolve_state(&self, token: &str) -> Result<usize> {
        if let Some(i) = self.state_index(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.cardinality() => Ok(i),
            _ => Err(Error::UnknownState {
                variable: self.name.clone(),
                state: token.to_string(),
            }),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.states.join(","))
    }
}

/// Map from variable name to state index. May be partial (evidence) or
/// complete.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, state: usize) -> &mut Self {
        self.0.insert(name.into(), state);
        self
    }

    pub fn with(mut self, name: impl Into<String>, state: usize) -> Self {
        self.set(name, state);
        self
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.0.get(name).copied()
    }

    pub fn remove(&mut self, name: &str) -> Option<usize> {
        self.0.remove(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Keep only the entries whose variable satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.0.retain(|k, _| keep(k));
    }
}

impl<S: Into<String>> FromIterator<(S, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, usize)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_single_state() {
        assert!(matches!(Variable::new("a", vec!["x"]), Err(Error::TooFewStates(_))));
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(matches!(
            Variable::new("a", vec!["x", "y", "x"]),
            Err(Error::DuplicateState { .. })
        ));
    }

    #[test]
    fn resolves_labels_and_indices() {
        let v = Variable::new("thal", vec!["normal", "fixed", "reversible"]).unwrap();
        assert_eq!(v.resolve_state("fixed").unwrap(), 1);
        assert_eq!(v.resolve_state("2").unwrap(), 2);
        assert!(v.resolve_state("3").is_err());
        let n = Variable::indexed("ca", 4).unwrap();
        assert_eq!(n.resolve_state("3").unwrap(), 3);
    }
}
