//! Boolean nonzero patterns of (possibly rectangular) matrices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Set of structurally nonzero positions of an `n_rows × n_cols` matrix.
///
/// Positions are 0-based `(row, col)` pairs kept in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparsityPattern {
    n_rows: usize,
    n_cols: usize,
    nonzeros: BTreeSet<(usize, usize)>,
}

impl SparsityPattern {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            nonzeros: BTreeSet::new(),
        }
    }

    pub fn from_positions<I>(n_rows: usize, n_cols: usize, positions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = Self::new(n_rows, n_cols);
        for (i, j) in positions {
            p.insert(i, j)?;
        }
        Ok(p)
    }

    /// Square pattern built from positions that are mirrored across the diagonal.
    pub fn symmetric_from_positions<I>(n: usize, positions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = Self::new(n, n);
        for (i, j) in positions {
            p.insert(i, j)?;
            p.insert(j, i)?;
        }
        Ok(p)
    }

    pub fn insert(&mut self, row: usize, col: usize) -> Result<()> {
        if row >= self.n_rows || col >= self.n_cols {
            return Err(Error::InvalidPattern(format!(
                "position ({row}, {col}) outside {}x{}",
                self.n_rows, self.n_cols
            )));
        }
        self.nonzeros.insert((row, col));
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.nonzeros.contains(&(row, col))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.nonzeros.iter().all(|&(i, j)| self.contains(j, i))
    }

    pub fn transpose(&self) -> Self {
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            nonzeros: self.nonzeros.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// Strictly-lower-triangle positions `(row, col)` with `row > col`.
    pub fn strict_lower(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied().filter(|&(i, j)| i > j)
    }

    /// Pattern with the diagonal removed.
    pub fn off_diagonal(&self) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            nonzeros: self.nonzeros.iter().copied().filter(|&(i, j)| i != j).collect(),
        }
    }

    /// Checks that the square pattern's adjacency graph is connected.
    pub fn is_irreducible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.n_rows;
        if n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for (i, j) in self.iter().filter(|&(i, j)| i != j) {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Dense 0/1 rendering, one row per line. Intended for small patterns.
    pub fn to_dense_string(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n_rows {
            let row: Vec<&str> = (0..self.n_cols)
                .map(|j| if self.contains(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range_rejected() {
        let mut p = SparsityPattern::new(2, 3);
        assert!(p.insert(1, 2).is_ok());
        assert!(p.insert(2, 0).is_err());
    }

    #[test]
    fn transpose_and_symmetry() {
        let p = SparsityPattern::from_positions(2, 3, [(0, 1), (1, 2)]).unwrap();
        let t = p.transpose();
        assert_eq!(t.n_rows(), 3);
        assert!(t.contains(2, 1));
        assert!(!p.is_symmetric());
        let s = SparsityPattern::symmetric_from_positions(3, [(2, 0)]).unwrap();
        assert!(s.is_symmetric());
        assert_eq!(s.strict_lower().collect::<Vec<_>>(), vec![(2, 0)]);
    }

    #[test]
    fn irreducibility() {
        let chain = SparsityPattern::symmetric_from_positions(3, [(1, 0), (2, 1)]).unwrap();
        assert!(chain.is_irreducible());
        let split = SparsityPattern::symmetric_from_positions(4, [(1, 0), (3, 2)]).unwrap();
        assert!(!split.is_irreducible());
    }
}
