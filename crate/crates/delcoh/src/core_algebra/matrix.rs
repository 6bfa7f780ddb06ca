//! Dense integer and rational matrices.
//!
//! Matrices are stored row-major with arbitrary-precision entries. The
//! operations here are deliberately simple and allocation-happy: every
//! matrix in this crate is small (cochain spaces of desk-sized complexes),
//! and exactness matters far more than speed.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Dense integer vector.
pub type IntVec = Vec<BigInt>;

/// Dense rational vector.
pub type RatVector = Vec<BigRational>;

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// A dense matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from a function of the index pair.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Convenience constructor from machine-integer rows (used heavily in
    /// tests).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    /// Builds a matrix whose columns are the given vectors. `rows` must be
    /// supplied explicitly so that an empty list of columns still has a
    /// well-defined shape.
    pub fn from_columns(rows: usize, columns: &[IntVec]) -> Self {
        for col in columns {
            assert_eq!(col.len(), rows, "column length mismatch");
        }
        IntMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    /// Extracts column `j` as a vector.
    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Extracts row `i` as a vector.
    pub fn row(&self, i: usize) -> IntVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Matrix-vector product with a rational vector.
    pub fn mul_rat_vec(&self, v: &[BigRational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += BigRational::from(self.get(i, k).clone()) * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[a | b | ...]`. All blocks must share the
    /// row count.
    pub fn hstack(blocks: &[&IntMatrix]) -> IntMatrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "row count mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zero(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        m
    }

    /// Vertical concatenation. All blocks must share the column count.
    pub fn vstack(blocks: &[&IntMatrix]) -> IntMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "column count mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = IntMatrix::zero(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m.set(offset + i, j, b.get(i, j).clone());
                }
            }
            offset += b.rows;
        }
        m
    }

    /// Block matrix assembly from a grid of blocks. Within each block row the
    /// blocks must agree on row count; within each block column, on column
    /// count.
    pub fn block(grid: &[&[&IntMatrix]]) -> IntMatrix {
        assert!(!grid.is_empty());
        let stacked: Vec<IntMatrix> = grid.iter().map(|r| IntMatrix::hstack(r)).collect();
        IntMatrix::vstack(&stacked.iter().collect::<Vec<_>>())
    }

    /// Converts to a rational matrix.
    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from(self.get(i, j).clone())
        })
    }

    // -- elementary row/column operations (used by the Smith reduction) -----

    pub(crate) fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub(crate) fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// `row[i] += lambda * row[j]`.
    pub(crate) fn row_addmul(&mut self, i: usize, j: usize, lambda: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.cols {
            let t = self.get(j, k) * lambda;
            let v = self.get(i, k) + t;
            self.set(i, k, v);
        }
    }

    /// `col[i] += lambda * col[j]`.
    pub(crate) fn col_addmul(&mut self, i: usize, j: usize, lambda: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.rows {
            let t = self.get(k, j) * lambda;
            let v = self.get(k, i) + t;
            self.set(k, i, v);
        }
    }

    pub(crate) fn row_negate(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            self.set(i, k, v);
        }
    }

    pub(crate) fn col_negate(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j).clone();
            self.set(k, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// RatMatrix
// ---------------------------------------------------------------------------

/// A dense matrix with arbitrary-precision rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut m = RatMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[RatVector]) -> Self {
        for col in columns {
            assert_eq!(col.len(), rows, "column length mismatch");
        }
        RatMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&RatMatrix]) -> RatMatrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "row count mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = RatMatrix::zero(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&RatMatrix]) -> RatMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "column count mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = RatMatrix::zero(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m.set(offset + i, j, b.get(i, j).clone());
                }
            }
            offset += b.rows;
        }
        m
    }

    /// Block matrix assembly from a grid of blocks.
    pub fn block(grid: &[&[&RatMatrix]]) -> RatMatrix {
        assert!(!grid.is_empty());
        let stacked: Vec<RatMatrix> = grid.iter().map(|r| RatMatrix::hstack(r)).collect();
        RatMatrix::vstack(&stacked.iter().collect::<Vec<_>>())
    }

    /// Scales every column by a positive integer so that all entries become
    /// integers, and returns the resulting integer matrix. Column scaling
    /// preserves the left kernel, which is the only use this has.
    pub fn clear_denominators_columnwise(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for j in 0..self.cols {
            let mut lcm = BigInt::one();
            for i in 0..self.rows {
                lcm = num::integer::lcm(lcm, self.get(i, j).denom().abs());
            }
            for i in 0..self.rows {
                let scaled = self.get(i, j) * BigRational::from(lcm.clone());
                debug_assert!(scaled.is_integer());
                m.set(i, j, scaled.to_integer());
            }
        }
        m
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

/// Pairing of a rational vector against an integer vector of the same length.
pub(crate) fn dot_rat_int(t: &[BigRational], z: &[BigInt]) -> BigRational {
    assert_eq!(t.len(), z.len(), "dimension mismatch");
    let mut acc = BigRational::zero();
    for (a, b) in t.iter().zip(z.iter()) {
        acc += a * BigRational::from(b.clone());
    }
    acc
}
