use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::subspace::Subspace;
use super::vector::SparseVec;

/// Exact matrix over `ℚ(i)`, stored by sparse columns.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            rows: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        if let Some(j) = columns.iter().position(|c| c.support_end() > rows) {
            return Err(Error::usage(format!(
                "column {j} has entries beyond row {rows}"
            )));
        }
        Ok(ExactMatrix { rows, columns })
    }

    /// Row-major dense input.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("ragged rows"));
        }
        let columns = (0..cols)
            .map(|j| {
                SparseVec::from_pairs(
                    rows.iter()
                        .enumerate()
                        .filter(|(_, r)| !r[j].is_zero())
                        .map(|(i, r)| (i, r[j].clone()))
                        .collect(),
                )
            })
            .collect();
        Ok(ExactMatrix {
            rows: rows.len(),
            columns,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    /// `M v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = vec![Scalar::ZERO; self.rows];
        for (j, c) in v.entries() {
            for (i, x) in self.columns[*j].entries() {
                acc[*i] += &(c * x);
            }
        }
        SparseVec::from_dense(&acc)
    }

    /// `self · other`.
    pub fn compose(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if other.rows != self.cols() {
            return Err(Error::usage(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut pairs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.entries() {
                pairs[*i].push((j, x.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols(),
            columns: pairs.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::usage("hstack needs equal row counts"));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows,
            columns,
        })
    }

    /// Column space as a subspace of `ℚ(i)^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, self.columns.iter().cloned())
    }

    /// Row space as a subspace of `ℚ(i)^cols`.
    pub fn coimage(&self) -> Subspace {
        Subspace::from_vectors(self.cols(), self.transpose().columns)
    }

    /// Eliminates in whichever of the row and column spaces is smaller.
    pub fn rank(&self) -> usize {
        if self.cols() <= self.rows {
            self.coimage().dim()
        } else {
            self.image().dim()
        }
    }

    /// Null space as a subspace of `ℚ(i)^cols`.
    pub fn kernel(&self) -> Subspace {
        self.coimage().annihilator()
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols())?;
        for i in 0..self.rows.min(12) {
            let row: Vec<String> = (0..self.cols().min(12))
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
