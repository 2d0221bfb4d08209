//! Dense paper × reviewer matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::{Error, Result};

/// Row-major `rows × cols` real matrix. Rows are papers, columns reviewers.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, 0.0)
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape("row-major data length differs from rows × cols"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape("ragged rows"));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Entrywise `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Matrix, b: f64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrices differ in shape"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
        })
    }

    /// Largest entry, or `None` for an empty matrix.
    pub fn max(&self) -> Option<f64> {
        self.data.iter().copied().reduce(f64::max)
    }

    pub fn min(&self) -> Option<f64> {
        self.data.iter().copied().reduce(f64::min)
    }

    pub fn same_shape<T: Shaped>(&self, other: &T) -> bool {
        self.rows == other.shape().0 && self.cols == other.shape().1
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub trait Shaped {
    fn shape(&self) -> (usize, usize);
}

impl Shaped for Matrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// Binary paper → reviewer matrix.
///
/// Plays three roles: the final assignment `X`, the reviewers' bidding `Y`
/// and the editor's proposal `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Matching {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![true; rows * cols],
        }
    }

    /// Builds a matching from 0-based `(paper, reviewer)` edges.
    pub fn from_edges(rows: usize, cols: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut x = Self::empty(rows, cols);
        for &(i, j) in edges {
            if i >= rows || j >= cols {
                return Err(Error::Shape("edge index out of range"));
            }
            x.set(i, j, true);
        }
        Ok(x)
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape("ragged rows"));
            }
            bits.extend(row.iter().map(|&b| b != 0));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            bits,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.cols + j] = value;
    }

    /// 0-based edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / self.cols, k % self.cols))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.bits[i * self.cols..(i + 1) * self.cols]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Papers selected in column `j`, ascending.
    pub fn column_papers(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Number of entries set in both matrices (`⟨self, other⟩`).
    pub fn overlap(&self, other: &Matching) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(&a, &b)| a && b).count()
    }

    /// Entrywise `self ≤ other`.
    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn to_weights(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| if self.get(i, j) { 1.0 } else { 0.0 })
    }
}

impl Shaped for Matching {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// Edges the final assignment may use.
///
/// The consistency mask `E − Z + Y` allows every edge except those a reviewer
/// was proposed and declined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMask(Matching);

impl EdgeMask {
    pub fn full(rows: usize, cols: usize) -> Self {
        Self(Matching::full(rows, cols))
    }

    pub fn from_matching(allowed: Matching) -> Self {
        Self(allowed)
    }

    /// `E − Z + Y` for a proposal `Z` and a bidding `Y ≤ Z`.
    pub fn consistency(proposal: &Matching, bidding: &Matching) -> Result<Self> {
        if proposal.shape() != bidding.shape() {
            return Err(Error::Shape("proposal and bidding differ in shape"));
        }
        if !bidding.is_subset_of(proposal) {
            return Err(Error::InvalidParameter("bidding must be contained in the proposal"));
        }
        let mut allowed = Matching::full(proposal.rows(), proposal.cols());
        for (i, j) in proposal.edges() {
            if !bidding.get(i, j) {
                allowed.set(i, j, false);
            }
        }
        Ok(Self(allowed))
    }

    #[inline]
    pub fn allows(&self, i: usize, j: usize) -> bool {
        self.0.get(i, j)
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }

    pub fn as_matching(&self) -> &Matching {
        &self.0
    }

    /// A copy with edge `(i, j)` forbidden.
    pub fn without(&self, i: usize, j: usize) -> Self {
        let mut m = self.0.clone();
        m.set(i, j, false);
        Self(m)
    }
}

impl Shaped for EdgeMask {
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }
}
