//! From-scratch dense kernels over `f64` and `Complex64`.
//!
//! These back the (α)-complex toolbox: partial-pivot LU, a Hermitian
//! Jacobi eigensolver, a one-sided Jacobi SVD, and a complex Schur engine
//! for general eigenproblems and matrix square roots. Everything is plain
//! O(p³) row-major code; the sizes this crate targets never justify
//! blocking.

pub(crate) mod jacobi;
pub(crate) mod lu;
pub(crate) mod schur;

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar the dense kernels are generic over: `f64` or `Complex64`.
pub(crate) trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn abs(self) -> f64;
    fn abs_sq(self) -> f64;
    fn scale(self, f: f64) -> Self;
    fn from_re(re: f64) -> Self;
    fn re(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn conj(self) -> Self {
        self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn from_re(re: f64) -> Self {
        re
    }
    fn re(self) -> f64 {
        self
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn from_re(re: f64) -> Self {
        Complex64::new(re, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| x - y)
                .collect(),
        }
    }

    pub fn scale(&self, f: f64) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x.scale(f)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|&x| x.abs_sq()).sum::<f64>().sqrt()
    }

    /// Orthonormality defect `‖M^H M − I‖∞`.
    #[cfg(test)]
    pub fn unitary_defect(&self) -> f64 {
        let g = self.conj_transpose().matmul(self);
        let mut worst = 0.0f64;
        for i in 0..g.rows {
            for j in 0..g.cols {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }
}

impl Mat<f64> {
    pub fn to_complex(&self) -> Mat<Complex64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }
}

impl Mat<Complex64> {
    pub fn re_part(&self) -> Mat<f64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }

    pub fn im_part(&self) -> Mat<f64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.im).collect(),
        }
    }

    pub fn max_im_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
