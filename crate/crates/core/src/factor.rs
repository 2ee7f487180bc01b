//! Table factors over network nodes, the working objects of variable
//! elimination.

use crate::cpt::Cpt;
use crate::dag::Dag;

/// Nonnegative potential over an ordered scope of node indices. Values are
/// row-major with the last scope variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    scope: Vec<usize>,
    cards: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    pub fn new(scope: Vec<usize>, cards: Vec<usize>, values: Vec<f64>) -> Self {
        assert_eq!(scope.len(), cards.len());
        assert_eq!(values.len(), cards.iter().product::<usize>());
        debug_assert!(values.iter().all(|v| *v >= 0.0));
        Factor { scope, cards, values }
    }

    /// Factor over (parents..., node) holding the CPT entries.
    pub fn from_cpt(dag: &Dag, node: usize, cpt: &Cpt) -> Self {
        let mut scope = dag.parent_indices(node).to_vec();
        scope.push(node);
        let mut cards: Vec<usize> = cpt.parents().iter().map(|p| p.cardinality()).collect();
        cards.push(cpt.variable().cardinality());
        Factor::new(scope, cards, cpt.table().to_vec())
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn contains(&self, var: usize) -> bool {
        self.scope.contains(&var)
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.cards.len()];
        for k in (0..self.cards.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.cards[k + 1];
        }
        strides
    }

    /// Fix `var` to `state` and drop it from the scope.
    pub fn reduce(&self, var: usize, state: usize) -> Factor {
        let Some(pos) = self.scope.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let strides = self.strides();
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        scope.remove(pos);
        cards.remove(pos);
        let outer = self.values.len() / (strides[pos] * self.cards[pos]);
        let inner = strides[pos];
        let mut values = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            let base = o * inner * self.cards[pos] + state * inner;
            values.extend_from_slice(&self.values[base..base + inner]);
        }
        Factor::new(scope, cards, values)
    }

    /// Sum `var` out of the factor.
    pub fn sum_out(&self, var: usize) -> Factor {
        let Some(pos) = self.scope.iter().position(|&v| v == var) else {
            return self.clone();
        };
        let strides = self.strides();
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        scope.remove(pos);
        cards.remove(pos);
        let card = self.cards[pos];
        let inner = strides[pos];
        let outer = self.values.len() / (inner * card);
        let mut values = vec![0.0; outer * inner];
        for o in 0..outer {
            for s in 0..card {
                let base = (o * card + s) * inner;
                for k in 0..inner {
                    values[o * inner + k] += self.values[base + k];
                }
            }
        }
        Factor::new(scope, cards, values)
    }

    /// Pointwise product over the union of both scopes.
    pub fn product(&self, other: &Factor) -> Factor {
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        for (&v, &c) in other.scope.iter().zip(&other.cards) {
            if !scope.contains(&v) {
                scope.push(v);
                cards.push(c);
            }
        }
        // Stride of each result variable within each operand (0 if absent).
        let project = |f: &Factor| -> Vec<usize> {
            let fs = f.strides();
            scope
                .iter()
                .map(|v| f.scope.iter().position(|w| w == v).map_or(0, |p| fs[p]))
                .collect()
        };
        let sa = project(self);
        let sb = project(other);
        let total: usize = cards.iter().product();
        let mut values = Vec::with_capacity(total);
        let mut counter = vec![0usize; scope.len()];
        let (mut ia, mut ib) = (0usize, 0usize);
        for _ in 0..total {
            values.push(self.values[ia] * other.values[ib]);
            // Odometer increment, last variable fastest.
            for k in (0..scope.len()).rev() {
                counter[k] += 1;
                ia += sa[k];
                ib += sb[k];
                if counter[k] < cards[k] {
                    break;
                }
                ia -= sa[k] * cards[k];
                ib -= sb[k] * cards[k];
                counter[k] = 0;
            }
        }
        Factor::new(scope, cards, values)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_picks_slice() {
        // scope (0, 1), cards (2, 3)
        let f = Factor::new(vec![0, 1], vec![2, 3], (0..6).map(f64::from).collect());
        assert_eq!(f.reduce(0, 1).values(), &[3.0, 4.0, 5.0]);
        assert_eq!(f.reduce(1, 2).values(), &[2.0, 5.0]);
        assert_eq!(f.reduce(7, 0), f);
    }

    #[test]
    fn sum_out_marginalizes() {
        let f = Factor::new(vec![0, 1], vec![2, 3], (0..6).map(f64::from).collect());
        assert_eq!(f.sum_out(1).values(), &[3.0, 12.0]);
        assert_eq!(f.sum_out(0).values(), &[3.0, 5.0, 7.0]);
    }

    #[test]
    fn product_aligns_shared_variables() {
        let a = Factor::new(vec![0], vec![2], vec![0.3, 0.7]);
        let b = Factor::new(vec![1, 0], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]);
        let p = a.product(&b);
        assert_eq!(p.scope(), &[0, 1]);
        // p(x0, x1) = a(x0) * b(x1, x0)
        assert_eq!(p.values(), &[0.3 * 1.0, 0.3 * 3.0, 0.7 * 2.0, 0.7 * 4.0]);
    }
}
