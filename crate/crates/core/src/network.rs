use std::collections::HashSet;

use crate::cpt::Cpt;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::variable::{Assignment, Variable};

/// A DAG plus one CPT per node. The joint distribution is the product of the
/// CPT entries selected by a complete assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteBayesNet {
    dag: Dag,
    /// Indexed like the DAG's nodes.
    cpts: Vec<Cpt>,
}

impl DiscreteBayesNet {
    /// `cpts` may be given in any order; each node needs exactly one, whose
    /// parent list equals the node's DAG parents in declared order.
    pub fn new(dag: Dag, cpts: Vec<Cpt>) -> Result<Self> {
        let mut slots: Vec<Option<Cpt>> = vec![None; dag.len()];
        for cpt in cpts {
            let name = cpt.variable().name().to_string();
            let i = dag.require(&name)?;
            if slots[i].is_some() {
                return Err(Error::DuplicateNode(name));
            }
            let expected = dag.parents(&name)?;
            let actual: Vec<&str> = cpt.parents().iter().map(Variable::name).collect();
            if expected != actual {
                return Err(Error::InvalidCpt {
                    variable: name,
                    reason: format!("parents {actual:?} do not match graph parents {expected:?}"),
                });
            }
            slots[i] = Some(cpt);
        }
        let cpts = slots
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::InvalidCpt {
                    variable: dag.name(i).to_string(),
                    reason: "missing".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // Parent variables must agree with the variables defined by their own CPTs.
        for cpt in &cpts {
            for p in cpt.parents() {
                let own = &cpts[dag.require(p.name())?];
                if own.variable() != p {
                    return Err(Error::InvalidCpt {
                        variable: cpt.variable().name().to_string(),
                        reason: format!("parent `{}` has inconsistent states", p.name()),
                    });
                }
            }
        }
        Ok(DiscreteBayesNet { dag, cpts })
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    pub fn cpt(&self, name: &str) -> Result<&Cpt> {
        Ok(&self.cpts[self.dag.require(name)?])
    }

    pub(crate) fn cpt_at(&self, i: usize) -> &Cpt {
        &self.cpts[i]
    }

    pub fn variable(&self, name: &str) -> Result<&Variable> {
        Ok(self.cpt(name)?.variable())
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.cpts.iter().map(Cpt::variable)
    }

    pub fn len(&self) -> usize {
        self.dag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dag.is_empty()
    }

    pub fn cardinality(&self, i: usize) -> usize {
        self.cpts[i].variable().cardinality()
    }

    /// Validate `assignment` and map it to per-node optional states.
    pub(crate) fn states_of(&self, assignment: &Assignment) -> Result<Vec<Option<usize>>> {
        let mut states = vec![None; self.len()];
        for (name, s) in assignment.iter() {
            let i = self.dag.require(name)?;
            let card = self.cardinality(i);
            if s >= card {
                return Err(Error::StateOutOfRange {
                    variable: name.to_string(),
                    state: s,
                    cardinality: card,
                });
            }
            states[i] = Some(s);
        }
        Ok(states)
    }

    /// Chain-rule probability of a complete assignment.
    pub fn joint_probability(&self, assignment: &Assignment) -> Result<f64> {
        let states = self.states_of(assignment)?;
        let full = states
            .iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::IncompleteAssignment(self.dag.name(i).into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.joint_of_states(&full))
    }

    pub(crate) fn joint_of_states(&self, states: &[usize]) -> f64 {
        let mut parent_states = Vec::new();
        let mut p = 1.0;
        for (i, cpt) in self.cpts.iter().enumerate() {
            parent_states.clear();
            parent_states.extend(self.dag.parent_indices(i).iter().map(|&q| states[q]));
            p *= cpt.probability(states[i], &parent_states);
            if p == 0.0 {
                break;
            }
        }
        p
    }

    /// Parse `name=state` pairs where each state is a label or an index.
    pub fn parse_evidence<'a, I>(&self, pairs: I) -> Result<Assignment>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut seen = HashSet::new();
        let mut out = Assignment::new();
        for (name, token) in pairs {
            let var = self.variable(name)?;
            if !seen.insert(name) {
                return Err(Error::DuplicateNode(name.to_string()));
            }
            out.set(name, var.resolve_state(token)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// A -> B with P(A=1) = 0.3, P(B=1|A=1) = 0.9, P(B=1|A=0) = 0.2.
    pub(crate) fn two_node() -> DiscreteBayesNet {
        let a = Variable::indexed("A", 2).unwrap();
        let b = Variable::indexed("B", 2).unwrap();
        let dag = Dag::new(["A", "B"], [("A", "B")]).unwrap();
        DiscreteBayesNet::new(
            dag,
            vec![
                Cpt::marginal(a.clone(), vec![0.7, 0.3]).unwrap(),
                Cpt::new(b, vec![a], vec![0.8, 0.2, 0.1, 0.9]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_rule_product() {
        let net = two_node();
        let a = Assignment::new().with("A", 1).with("B", 1);
        assert!((net.joint_probability(&a).unwrap() - 0.27).abs() < 1e-15);
    }

    #[test]
    fn incomplete_assignment_rejected() {
        let net = two_node();
        let a = Assignment::new().with("A", 1);
        assert!(matches!(
            net.joint_probability(&a),
            Err(Error::IncompleteAssignment(n)) if n == "B"
        ));
        let bad = Assignment::new().with("A", 2).with("B", 0);
        assert!(matches!(
            net.joint_probability(&bad),
            Err(Error::StateOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_entry_gives_zero_joint() {
        let a = Variable::indexed("A", 2).unwrap();
        let b = Variable::indexed("B", 2).unwrap();
        let dag = Dag::new(["A", "B"], [("A", "B")]).unwrap();
        let net = DiscreteBayesNet::new(
            dag,
            vec![
                Cpt::marginal(a.clone(), vec![0.5, 0.5]).unwrap(),
                Cpt::new(b, vec![a], vec![1.0, 0.0, 0.4, 0.6]).unwrap(),
            ],
        )
        .unwrap();
        let asg = Assignment::new().with("A", 0).with("B", 1);
        assert_eq!(net.joint_probability(&asg).unwrap(), 0.0);
    }

    #[test]
    fn cpt_parents_must_match_graph() {
        let a = Variable::indexed("A", 2).unwrap();
        let b = Variable::indexed("B", 2).unwrap();
        let dag = Dag::new(["A", "B"], [("A", "B")]).unwrap();
        let err = DiscreteBayesNet::new(
            dag,
            vec![
                Cpt::marginal(a, vec![0.5, 0.5]).unwrap(),
                Cpt::marginal(b, vec![0.5, 0.5]).unwrap(),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidCpt { .. }));
    }

    #[test]
    fn evidence_accepts_labels_and_indices() {
        let net = two_node();
        let ev = net.parse_evidence([("A", "1"), ("B", "0")]).unwrap();
        assert_eq!(ev.get("A"), Some(1));
        assert!(net.parse_evidence([("C", "1")]).is_err());
        assert!(net.parse_evidence([("A", "7")]).is_err());
    }
}
