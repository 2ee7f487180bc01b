use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::variable::Variable;

/// Directed acyclic graph over named nodes.
///
/// Parent lists keep the order in which edges were declared; that order is
/// the parent order of the node's CPT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

/// Validate `edges` over the given variables and build a [`Dag`].
pub fn build_dag(nodes: &[Variable], edges: &[(&str, &str)]) -> Result<Dag> {
    Dag::new(nodes.iter().map(|v| v.name().to_string()), edges.iter().copied())
}

impl Dag {
    pub fn new<N, E, A, B>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateNode(n.clone()));
            }
        }
        let mut dag = Dag {
            parents: vec![Vec::new(); names.len()],
            children: vec![Vec::new(); names.len()],
            names,
            index,
        };
        for (from, to) in edges {
            let (from, to) = (from.as_ref(), to.as_ref());
            let p = dag.require(from)?;
            let c = dag.require(to)?;
            if p == c {
                return Err(Error::SelfLoop(from.to_string()));
            }
            if dag.parents[c].contains(&p) {
                return Err(Error::DuplicateEdge(from.to_string(), to.to_string()));
            }
            dag.parents[c].push(p);
            dag.children[p].push(c);
        }
        // Parent order is meaningful (CPT layout); child order is not.
        for c in &mut dag.children {
            c.sort_unstable();
        }
        if dag.topological_indices().len() != dag.len() {
            return Err(Error::CycleDetected);
        }
        Ok(dag)
    }

    /// Graph with the given nodes and no edges.
    pub fn empty<N>(nodes: N) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
    {
        Self::new(nodes, std::iter::empty::<(&str, &str)>())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn parent_indices(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn child_indices(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn parents(&self, name: &str) -> Result<Vec<&str>> {
        let i = self.require(name)?;
        Ok(self.parents[i].iter().map(|&p| self.name(p)).collect())
    }

    pub fn children(&self, name: &str) -> Result<Vec<&str>> {
        let i = self.require(name)?;
        Ok(self.children[i].iter().map(|&c| self.name(c)).collect())
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(p), Some(c)) => self.parents[c].contains(&p),
            _ => false,
        }
    }

    /// All edges as `(parent, child)`, grouped by child in node order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                out.push((self.name(p), self.name(c)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    /// Kahn's algorithm with ties broken by node name.
    pub(crate) fn topological_indices(&self) -> Vec<usize> {
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<(&str, usize)>> = indegree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| Reverse((self.name(i), i)))
            .collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(Reverse((_, i))) = ready.pop() {
            order.push(i);
            for &c in &self.children[i] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(Reverse((self.name(c), c)));
                }
            }
        }
        order
    }

    /// Every parent precedes its children; ties are broken lexicographically.
    pub fn topological_order(&self) -> Vec<&str> {
        self.topological_indices().into_iter().map(|i| self.name(i)).collect()
    }

    pub(crate) fn descendant_indices(&self, i: usize) -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack = vec![i];
        while let Some(n) = stack.pop() {
            for &c in &self.children[n] {
                if seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        seen
    }

    pub fn descendants(&self, name: &str) -> Result<BTreeSet<&str>> {
        let i = self.require(name)?;
        Ok(self.descendant_indices(i).into_iter().map(|d| self.name(d)).collect())
    }

    /// Parents, children and the children's other parents of `name`.
    pub fn markov_blanket(&self, name: &str) -> Result<BTreeSet<&str>> {
        let i = self.require(name)?;
        Ok(self
            .markov_blanket_indices(i)
            .into_iter()
            .map(|j| self.name(j))
            .collect())
    }

    pub(crate) fn markov_blanket_indices(&self, i: usize) -> BTreeSet<usize> {
        let mut mb: BTreeSet<usize> = self.parents[i].iter().copied().collect();
        for &c in &self.children[i] {
            mb.insert(c);
            mb.extend(self.parents[c].iter().copied());
        }
        mb.remove(&i);
        mb
    }

    /// Skeleton neighbours (parents and children).
    pub fn neighbors(&self, name: &str) -> Result<BTreeSet<&str>> {
        let i = self.require(name)?;
        Ok(self.parents[i]
            .iter()
            .chain(&self.children[i])
            .map(|&j| self.name(j))
            .collect())
    }
}
