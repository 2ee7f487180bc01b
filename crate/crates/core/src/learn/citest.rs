//! Pearson chi-squared conditional independence test for categorical data.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dataset::DataTable;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CiTestResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// `p_value > alpha`.
    pub independent: bool,
}

/// Test `x ⟂ y | z`: one Pearson statistic per non-empty stratum of `z`,
/// summed. Each non-empty stratum adds `(r_x - 1)(r_y - 1)` degrees of
/// freedom; empty strata add none.
pub fn ci_test(data: &DataTable, x: &str, y: &str, z: &[&str], alpha: f64) -> Result<CiTestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let xi = data.column_index(x)?;
    let yi = data.column_index(y)?;
    let zi = z.iter().map(|n| data.column_index(n)).collect::<Result<Vec<_>>>()?;
    ci_test_columns(data, xi, yi, &zi, alpha)
}

pub(crate) fn ci_test_columns(data: &DataTable, x: usize, y: usize, z: &[usize], alpha: f64) -> Result<CiTestResult> {
    let schema = data.schema();
    let rx = schema[x].cardinality();
    let ry = schema[y].cardinality();
    let strata: usize = z.iter().map(|&c| schema[c].cardinality()).product();
    let cell = rx * ry;
    let mut counts = vec![0u64; strata * cell];
    for row in data.rows() {
        let s = z.iter().fold(0, |acc, &c| acc * schema[c].cardinality() + row[c]);
        counts[s * cell + row[x] * ry + row[y]] += 1;
    }

    let mut statistic = 0.0;
    let mut dof = 0;
    for table in counts.chunks(cell) {
        let n: u64 = table.iter().sum();
        if n == 0 {
            continue;
        }
        dof += (rx - 1) * (ry - 1);
        let n = n as f64;
        let row_sums: Vec<f64> = (0..rx)
            .map(|i| table[i * ry..(i + 1) * ry].iter().sum::<u64>() as f64)
            .collect();
        let col_sums: Vec<f64> = (0..ry)
            .map(|j| (0..rx).map(|i| table[i * ry + j]).sum::<u64>() as f64)
            .collect();
        for i in 0..rx {
            for j in 0..ry {
                let expected = row_sums[i] * col_sums[j] / n;
                if expected > 0.0 {
                    let d = table[i * ry + j] as f64 - expected;
                    statistic += d * d / expected;
                }
            }
        }
    }
    if dof == 0 {
        return Err(Error::InsufficientData);
    }
    let p_value = if statistic <= 0.0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .expect("dof is positive")
            .sf(statistic)
            .clamp(0.0, 1.0)
    };
    Ok(CiTestResult {
        statistic,
        dof,
        p_value,
        independent: p_value > alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variable::Variable;

    fn table(pairs: &[((usize, usize), usize)]) -> DataTable {
        let schema = vec![Variable::indexed("x", 2).unwrap(), Variable::indexed("y", 2).unwrap()];
        let rows = pairs
            .iter()
            .flat_map(|&((a, b), n)| std::iter::repeat_n(vec![a, b], n))
            .collect();
        DataTable::new(schema, rows).unwrap()
    }

    #[test]
    fn exact_independence() {
        let data = table(&[((0, 0), 25), ((0, 1), 25), ((1, 0), 25), ((1, 1), 25)]);
        let r = ci_test(&data, "x", "y", &[], 0.05).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(r.independent);
    }

    #[test]
    fn deterministic_copy() {
        let data = table(&[((0, 0), 50), ((1, 1), 50)]);
        let r = ci_test(&data, "x", "y", &[], 0.05).unwrap();
        assert!((r.statistic - 100.0).abs() < 1e-9);
        assert_eq!(r.dof, 1);
        assert!(r.p_value < 1e-20);
        assert!(!r.independent);
    }

    #[test]
    fn empty_data_is_insufficient() {
        let data = table(&[]);
        assert!(matches!(
            ci_test(&data, "x", "y", &[], 0.05),
            Err(Error::InsufficientData)
        ));
        let data = table(&[((0, 0), 1)]);
        assert!(matches!(
            ci_test(&data, "x", "y", &[], 1.5),
            Err(Error::InvalidAlpha(_))
        ));
    }
}
