//! Quandle operation tables and the three-axiom check.
//!
//! A table of order `n` stores `x_i ▷ x_j = x_k` as entry `(i, j) = k`, with
//! every index 1-based so that printed matrices can be compared verbatim.

use std::fmt;

use thiserror::Error;

use crate::error::{QuandleError, Result};
use crate::perm::Permutation;

/// The first axiom failure found while scanning a candidate table.
///
/// Scan order: idempotence by row, then right-invertibility by column, then
/// self-distributivity lexicographically in `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("axiom (i) at i={i}: {i} ▷ {i} = {value}")]
    Idempotence { i: usize, value: usize },
    #[error("axiom (ii) at column {column}: value {value} repeats")]
    RightInvertibility { column: usize, value: usize },
    #[error("axiom (iii) at (i,j,k)=({i},{j},{k})")]
    SelfDistributivity { i: usize, j: usize, k: usize },
}

/// A finite quandle given by its operation matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    // row-major, 1-based entries
    data: Vec<usize>,
}

/// Parses and validates a raw integer matrix.
pub fn validate(rows: &[Vec<i64>]) -> Result<QuandleTable> {
    QuandleTable::validate(rows)
}

/// Scans `data` (row-major, 1-based entries already in range) for the first axiom failure.
pub(crate) fn first_violation(n: usize, data: &[usize]) -> Option<AxiomViolation> {
    let at = |i: usize, j: usize| data[(i - 1) * n + (j - 1)];
    for i in 1..=n {
        let value = at(i, i);
        if value != i {
            return Some(AxiomViolation::Idempotence { i, value });
        }
    }
    let mut seen = vec![false; n + 1];
    for column in 1..=n {
        seen.iter_mut().for_each(|s| *s = false);
        for i in 1..=n {
            let value = at(i, column);
            if seen[value] {
                return Some(AxiomViolation::RightInvertibility { column, value });
            }
            seen[value] = true;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let ij = at(i, j);
            for k in 1..=n {
                if at(ij, k) != at(at(i, k), at(j, k)) {
                    return Some(AxiomViolation::SelfDistributivity { i, j, k });
                }
            }
        }
    }
    None
}

impl QuandleTable {
    /// Accepts a square integer matrix iff it satisfies the three quandle axioms.
    pub fn validate(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuandleError::NotSquare { row: r + 1, len: row.len(), expected: n });
            }
            for (c, &value) in row.iter().enumerate() {
                if value < 1 || value > n as i64 {
                    return Err(QuandleError::EntryOutOfRange { row: r + 1, col: c + 1, value, n });
                }
                data.push(value as usize);
            }
        }
        Self::from_data(n, data)
    }

    /// Validates a row-major vector of 1-based entries.
    pub fn from_data(n: usize, data: Vec<usize>) -> Result<Self> {
        if data.len() != n * n {
            return Err(QuandleError::SizeMismatch { left: data.len(), right: n * n });
        }
        for (idx, &value) in data.iter().enumerate() {
            if value < 1 || value > n {
                return Err(QuandleError::EntryOutOfRange {
                    row: idx / n + 1,
                    col: idx % n + 1,
                    value: value as i64,
                    n,
                });
            }
        }
        match first_violation(n, &data) {
            Some(v) => Err(v.into()),
            None => Ok(QuandleTable { n, data }),
        }
    }

    /// Trusted constructor for tables that are quandles by construction.
    pub(crate) fn from_data_unchecked(n: usize, data: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        debug_assert_eq!(first_violation(n, &data), None);
        QuandleTable { n, data }
    }

    /// The empty quandle.
    pub fn empty() -> Self {
        QuandleTable { n: 0, data: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[usize] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.data[(i - 1) * self.n..i * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Unchecked `a ▷ b`; panics on out-of-range indices like slice indexing.
    #[inline]
    pub fn at(&self, a: usize, b: usize) -> usize {
        debug_assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n);
        self.data[(a - 1) * self.n + (b - 1)]
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.n {
            Err(QuandleError::IndexOutOfRange { index, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `a ▷ b`.
    pub fn op(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.at(a, b))
    }

    /// The unique `z` with `z ▷ b = a`.
    pub fn inv_op(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok((1..=self.n).find(|&z| self.at(z, b) == a).expect("columns are bijections"))
    }

    /// The dual quandle: every column replaced by its inverse permutation.
    pub fn dual(&self) -> QuandleTable {
        let n = self.n;
        let mut data = vec![0; n * n];
        for b in 1..=n {
            for a in 1..=n {
                let image = self.at(a, b);
                data[(image - 1) * n + (b - 1)] = a;
            }
        }
        QuandleTable::from_data_unchecked(n, data)
    }

    /// The right translation `f_b : a ↦ a ▷ b`.
    pub fn column_permutation(&self, b: usize) -> Result<Permutation> {
        self.check_index(b)?;
        Ok(self.column(b))
    }

    pub(crate) fn column(&self, b: usize) -> Permutation {
        Permutation::from_images_unchecked((1..=self.n).map(|a| self.at(a, b)).collect())
    }

    /// All right translations `f_1, ..., f_n`.
    pub fn columns(&self) -> Vec<Permutation> {
        (1..=self.n).map(|b| self.column(b)).collect()
    }

    /// The table transported along `p`: entry `(p(a), p(b))` becomes `p(a ▷ b)`.
    pub fn relabel(&self, p: &Permutation) -> Result<QuandleTable> {
        if p.len() != self.n {
            return Err(QuandleError::SizeMismatch { left: p.len(), right: self.n });
        }
        let n = self.n;
        let mut data = vec![0; n * n];
        for a in 1..=n {
            for b in 1..=n {
                data[(p.apply(a) - 1) * n + (p.apply(b) - 1)] = p.apply(self.at(a, b));
            }
        }
        Ok(QuandleTable::from_data_unchecked(n, data))
    }

    /// The subquandle on `subset`, relabelled `1..k` in ascending order of the original indices.
    pub fn restrict(&self, subset: &[usize]) -> Result<QuandleTable> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        for &x in &elems {
            self.check_index(x)?;
        }
        let mut local = vec![0; self.n + 1];
        for (pos, &x) in elems.iter().enumerate() {
            local[x] = pos + 1;
        }
        let k = elems.len();
        let mut data = Vec::with_capacity(k * k);
        for &a in &elems {
            for &b in &elems {
                let v = local[self.at(a, b)];
                if v == 0 {
                    return Err(QuandleError::NotClosed(elems));
                }
                data.push(v);
            }
        }
        Ok(QuandleTable::from_data_unchecked(k, data))
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuandleTable{:?}", self.rows())
    }
}
