use crate::cpt::configuration_count;
use crate::dataset::DataTable;
use crate::error::Result;
use crate::variable::Variable;

/// Sufficient statistics `N(x, pa)` for one family, laid out like a CPT
/// (configuration-major, last parent fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub variable: Variable,
    pub parents: Vec<Variable>,
    pub counts: Vec<u64>,
    /// `N(pa)` per configuration.
    pub totals: Vec<u64>,
}

impl CountTable {
    pub fn from_data(data: &DataTable, variable: &str, parents: &[&str]) -> Result<Self> {
        let child = data.column_index(variable)?;
        let cols = parents
            .iter()
            .map(|p| data.column_index(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_columns(data, child, &cols))
    }

    pub(crate) fn from_columns(data: &DataTable, child: usize, parents: &[usize]) -> Self {
        let schema = data.schema();
        let variable = schema[child].clone();
        let parents: Vec<Variable> = parents.iter().map(|&p| schema[p].clone()).collect();
        let r = variable.cardinality();
        let q = configuration_count(&parents);
        let cols: Vec<usize> = parents
            .iter()
            .map(|p| data.column_index(p.name()).expect("parent column exists"))
            .collect();
        let mut counts = vec![0u64; q * r];
        let mut totals = vec![0u64; q];
        for row in data.rows() {
            let config = cols
                .iter()
                .zip(&parents)
                .fold(0, |acc, (&c, p)| acc * p.cardinality() + row[c]);
            counts[config * r + row[child]] += 1;
            totals[config] += 1;
        }
        CountTable {
            variable,
            parents,
            counts,
            totals,
        }
    }

    pub fn cardinality(&self) -> usize {
        self.variable.cardinality()
    }

    pub fn configurations(&self) -> usize {
        self.totals.len()
    }

    pub fn row(&self, config: usize) -> &[u64] {
        let r = self.cardinality();
        &self.counts[config * r..(config + 1) * r]
    }

    pub fn total(&self) -> u64 {
        self.totals.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_sum_to_rows() {
        let schema = vec![Variable::indexed("a", 2).unwrap(), Variable::indexed("b", 3).unwrap()];
        let rows = vec![vec![0, 2], vec![1, 2], vec![1, 0], vec![1, 2]];
        let data = DataTable::new(schema, rows).unwrap();
        let t = CountTable::from_data(&data, "b", &["a"]).unwrap();
        assert_eq!(t.total(), 4);
        assert_eq!(t.totals, vec![1, 3]);
        assert_eq!(t.row(1), &[1, 0, 2]);
        assert!(CountTable::from_data(&data, "c", &[]).is_err());
    }
}
