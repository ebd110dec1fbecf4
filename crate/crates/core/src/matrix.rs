//! Dense matrices over a [`Scalar`] field and tensor-slot embeddings.
//!
//! Tensor products use lexicographic basis ordering with slot 0 slowest:
//! a basis index of `V_0 ⊗ V_1 ⊗ … ⊗ V_{k-1}` is the mixed-radix number
//! whose most significant digit belongs to slot 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::operator::{Operator, Shape};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Matrix unit `e_{i,j}` (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, T::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged or empty.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn scalar(n: usize, value: T) -> Self {
        Self::identity(n).map(|x| x.mul(&value))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix dimensions differ"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                // exact-mode operators are mostly sparse (permutations, units)
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| {
                    a.get(p, col)
                        .pivot_weight()
                        .total_cmp(&a.get(q, col).pivot_weight())
                })
                .filter(|&p| !a.get(p, col).is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let scale = a.get(col, col).recip()?;
            a.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for row in 0..n {
                if row == col || a.get(row, col).is_zero() {
                    continue;
                }
                let factor = a.get(row, col).clone();
                a.sub_row_multiple(row, col, &factor);
                inv.sub_row_multiple(row, col, &factor);
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n)
                .max_by(|&p, &q| {
                    a.get(p, col)
                        .pivot_weight()
                        .total_cmp(&a.get(q, col).pivot_weight())
                })
                .filter(|&p| !a.get(p, col).is_zero())
            else {
                return T::zero();
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let inv = p.recip().expect("nonzero pivot");
            for row in col + 1..n {
                if a.get(row, col).is_zero() {
                    continue;
                }
                let factor = a.get(row, col).mul(&inv);
                a.sub_row_multiple(row, col, &factor);
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, row: usize, c: &T) {
        for j in 0..self.cols {
            let idx = row * self.cols + j;
            self.data[idx] = self.data[idx].mul(c);
        }
    }

    // row_target -= factor * row_source
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).sub(&factor.mul(s));
            self.set(target, j, v);
        }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols)
                .mul(rhs.get(i % rhs.rows, j % rhs.cols))
        })
    }

    /// Block `(a, b)` when the matrix acts on `C^outer ⊗ W`: the operator on
    /// `W` multiplying `e_{a,b}` in the slowest factor.
    pub fn block(&self, outer: usize, a: usize, b: usize) -> Self {
        assert!(self.is_square() && self.rows % outer == 0);
        let inner = self.rows / outer;
        Self::from_fn(inner, inner, |i, j| {
            self.get(a * inner + i, b * inner + j).clone()
        })
    }

    /// Assemble `Σ_{a,b} e_{a,b} ⊗ blocks[a][b]`.
    pub fn from_blocks(blocks: &[Vec<Self>]) -> Self {
        let outer = blocks.len();
        let inner = blocks[0][0].rows;
        Self::from_fn(outer * inner, outer * inner, |i, j| {
            blocks[i / inner][j / inner].get(i % inner, j % inner).clone()
        })
    }

    /// Trace over the slowest tensor factor of dimension `outer`.
    pub fn partial_trace_first(&self, outer: usize) -> Self {
        let inner = self.rows / outer;
        (0..outer).fold(Self::zeros(inner, inner), |acc, a| {
            acc.zip_with(&self.block(outer, a, a), |x, y| x.add(y))
        })
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }
}

impl<T: Scalar> Operator for Matrix<T> {
    fn shape(&self) -> Shape {
        Shape::Dense {
            rows: self.rows,
            cols: self.cols,
        }
    }
    fn zero_like(&self) -> Self {
        Self::zeros(self.rows, self.cols)
    }
    fn identity_like(&self) -> Self {
        Self::identity(self.rows)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.add(b))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.sub(b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.matmul(rhs)
    }
    fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }
    fn scale(&self, c: &Rational) -> Self {
        let c = T::from_rational(c);
        self.map(|x| x.mul(&c))
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
    fn max_abs(&self) -> f64 {
        self.max_abs_entry()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

/// Embed `op`, acting on the tensor factors listed in `slots` (in that
/// order), into a product of factors with dimensions `dims`; identity on the
/// remaining factors.
pub fn kron_embed_dims<T: Scalar>(op: &Matrix<T>, slots: &[usize], dims: &[usize]) -> Result<Matrix<T>> {
    let total = dims.len();
    for (k, &s) in slots.iter().enumerate() {
        if s >= total {
            return Err(Error::SlotOutOfRange { slot: s, total });
        }
        if slots[..k].contains(&s) {
            return Err(Error::SlotCollision(s));
        }
    }
    let local: usize = slots.iter().map(|&s| dims[s]).product();
    if op.rows != local || op.cols != local {
        return Err(Error::ShapeMismatch(
            op.shape(),
            Shape::Dense {
                rows: local,
                cols: local,
            },
        ));
    }
    let dim: usize = dims.iter().product();
    // strides[s] = product of dims of the faster slots
    let mut strides = vec![1usize; total];
    for s in (0..total.saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let digit = |index: usize, s: usize| (index / strides[s]) % dims[s];
    let local_index = |index: usize| slots.iter().fold(0, |acc, &s| acc * dims[s] + digit(index, s));
    let rest_mask = |index: usize| -> usize {
        (0..total)
            .filter(|s| !slots.contains(s))
            .fold(0, |acc, s| acc * dims[s] + digit(index, s))
    };

    let mut out = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let (li, ri) = (local_index(i), rest_mask(i));
        for j in 0..dim {
            if rest_mask(j) != ri {
                continue;
            }
            let v = op.get(li, local_index(j));
            if !v.is_zero() {
                out.set(i, j, v.clone());
            }
        }
    }
    Ok(out)
}

/// Uniform-dimension form of [`kron_embed_dims`]: `total` factors of
/// dimension `local_dim`, slots 0-based.
pub fn kron_embed<T: Scalar>(op: &Matrix<T>, slots: &[usize], total: usize, local_dim: usize) -> Result<Matrix<T>> {
    kron_embed_dims(op, slots, &vec![local_dim; total])
}

/// The swap `P(u ⊗ v) = v ⊗ u` on `C^n ⊗ C^n`, i.e. `Σ e_{i,j} ⊗ e_{j,i}`.
pub fn permutation_op<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (r / n, r % n);
        if c == j * n + i {
            T::one()
        } else {
            T::zero()
        }
    })
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 1 && self.cols == 1 {
            return write!(f, "{}", self.data[0]);
        }
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}
