use std::collections::BTreeSet;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::variable::{Assignment, Variable};

/// Fully categorical data: one state index per variable per row.
#[derive(Clone, Debug, PartialEq)]
pub struct DataTable {
    schema: Vec<Variable>,
    rows: Vec<Vec<usize>>,
}

impl DataTable {
    pub fn new(schema: Vec<Variable>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for v in &schema {
            if !names.insert(v.name()) {
                return Err(Error::DuplicateNode(v.name().to_string()));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(Error::SchemaMismatch(format!(
                    "row {r} has {} values for {} columns",
                    row.len(),
                    schema.len()
                )));
            }
            for (&s, v) in row.iter().zip(&schema) {
                if s >= v.cardinality() {
                    return Err(Error::StateOutOfRange {
                        variable: v.name().to_string(),
                        state: s,
                        cardinality: v.cardinality(),
                    });
                }
            }
        }
        Ok(DataTable { schema, rows })
    }

    pub fn schema(&self) -> &[Variable] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_columns(&self) -> usize {
        self.schema.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.schema.iter().map(Variable::name)
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.schema
            .iter()
            .position(|v| v.name() == name)
            .ok_or_else(|| Error::SchemaMismatch(format!("no column `{name}`")))
    }

    pub fn variable(&self, name: &str) -> Result<&Variable> {
        Ok(&self.schema[self.column_index(name)?])
    }

    pub fn column(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(move |r| r[i])
    }

    /// Count of each state of column `name`.
    pub fn state_counts(&self, name: &str) -> Result<Vec<usize>> {
        let i = self.column_index(name)?;
        let mut counts = vec![0; self.schema[i].cardinality()];
        for s in self.column(i) {
            counts[s] += 1;
        }
        Ok(counts)
    }

    /// Row `r` as an assignment over every column except those in `skip`.
    pub fn row_assignment(&self, r: usize, skip: &[&str]) -> Assignment {
        self.schema
            .iter()
            .zip(&self.rows[r])
            .filter(|(v, _)| !skip.contains(&v.name()))
            .map(|(v, &s)| (v.name(), s))
            .collect()
    }

    pub fn select_rows(&self, indices: &[usize]) -> DataTable {
        DataTable {
            schema: self.schema.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Keep only the named columns, in the given order.
    pub fn project(&self, names: &[&str]) -> Result<DataTable> {
        let idx = names.iter().map(|n| self.column_index(n)).collect::<Result<Vec<_>>>()?;
        Ok(DataTable {
            schema: idx.iter().map(|&i| self.schema[i].clone()).collect(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&i| r[i]).collect()).collect(),
        })
    }

    /// Seeded shuffle; the last `floor(n * ratio)` shuffled rows form the
    /// training set and the rest the test set. Both parts keep the original row order.
    pub fn split(&self, ratio: f64, seed: u64) -> Result<(DataTable, DataTable)> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidRatio(ratio));
        }
        let n = self.n_rows();
        // Training gets floor(n * ratio) rows, test the remainder. The small
        // slack absorbs representation error in products like 10 * 0.7.
        let n_train = ((n as f64 * ratio) + 1e-9).floor() as usize;
        let n_test = n - n_train.min(n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let (test, train) = order.split_at(n_test);
        let mut train = train.to_vec();
        let mut test = test.to_vec();
        train.sort_unstable();
        test.sort_unstable();
        Ok((self.select_rows(&train), self.select_rows(&test)))
    }

    /// Comma-separated, header row of variable names, cells are state labels.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv_to(file)
    }

    pub fn write_csv_to<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.names())?;
        for row in &self.rows {
            w.write_record(row.iter().zip(&self.schema).map(|(&s, v)| v.states()[s].as_str()))?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    /// Read a table written by [`DataTable::write_csv`]. Columns named in
    /// `known` use that variable's states; any other column takes its states
    /// from the sorted distinct labels found in the file.
    pub fn read_csv(path: impl AsRef<Path>, known: &[Variable]) -> Result<DataTable> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv_from(file, known)
    }

    pub fn read_csv_from<R: std::io::Read>(reader: R, known: &[Variable]) -> Result<DataTable> {
        let mut rdr = csv::Reader::from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut cells: Vec<Vec<String>> = Vec::new();
        for rec in rdr.records() {
            cells.push(rec?.iter().map(str::to_string).collect());
        }
        let schema = header
            .iter()
            .enumerate()
            .map(|(i, name)| match known.iter().find(|v| v.name() == name) {
                Some(v) => Ok(v.clone()),
                None => infer_variable(name, cells.iter().map(|r| r[i].as_str())),
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = cells
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&schema)
                    .map(|(c, v)| {
                        v.state_index(c).ok_or_else(|| Error::UnknownState {
                            variable: v.name().to_string(),
                            state: c.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DataTable::new(schema, rows)
    }
}

/// States are the distinct labels, numerically ordered when every label is a
/// number. A constant column gets a second placeholder state so it remains a
/// valid variable.
fn infer_variable<'a>(name: &str, labels: impl Iterator<Item = &'a str>) -> Result<Variable> {
    let distinct: BTreeSet<&str> = labels.collect();
    let mut states: Vec<String> = distinct.iter().map(|s| s.to_string()).collect();
    if states.iter().all(|s| s.parse::<f64>().is_ok()) {
        states.sort_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse::<f64>().unwrap()));
    }
    if states.len() < 2 {
        let filler = (0..).map(|i| i.to_string()).find(|s| !states.contains(s)).unwrap();
        states.push(filler);
    }
    Variable::new(name, states)
}
