use super::{Mat, Scalar};

/// LU factorization with partial pivoting: `P·A = L·U` with `perm` mapping
/// output rows to input rows (`(PA)[i] = A[perm[i]]`), `L` unit lower
/// triangular, `U` upper triangular. `sign` is the permutation signature.
///
/// Pivoting picks the largest absolute value in the active column; ties
/// keep the lowest row index. Rank-deficient inputs still factor (zero
/// pivots stay in `U`).
pub(crate) struct Lu<T> {
    pub perm: Vec<usize>,
    pub l: Mat<T>,
    pub u: Mat<T>,
    pub sign: i32,
}

pub(crate) fn lu_partial<T: Scalar>(a: &Mat<T>) -> Lu<T> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut u = a.clone();
    let mut l = Mat::<T>::identity(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i32;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = u[(k, k)].abs();
        for r in (k + 1)..n {
            let mag = u[(r, k)].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_row != k {
            for j in 0..n {
                u.data.swap(k * n + j, pivot_row * n + j);
            }
            for j in 0..k {
                l.data.swap(k * n + j, pivot_row * n + j);
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = u[(k, k)];
        if pivot.abs() == 0.0 {
            continue;
        }
        for r in (k + 1)..n {
            let factor = u[(r, k)] / pivot;
            l[(r, k)] = factor;
            u[(r, k)] = T::zero();
            for j in (k + 1)..n {
                u[(r, j)] = u[(r, j)] - factor * u[(k, j)];
            }
        }
    }

    Lu { perm, l, u, sign }
}

impl<T: Scalar> Lu<T> {
    /// The permutation as a matrix: `P[i, perm[i]] = 1`.
    pub fn perm_matrix(&self) -> Mat<T> {
        let n = self.perm.len();
        let mut p = Mat::zeros(n, n);
        for (i, &src) in self.perm.iter().enumerate() {
            p[(i, src)] = T::one();
        }
        p
    }

    /// Solve `A x = b` for one right-hand side (in place on a copy).
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let n = self.perm.len();
        let scale = self.u.max_abs().max(1.0);
        let mut y: Vec<T> = self.perm.iter().map(|&src| b[src]).collect();
        // forward: L y' = y
        for i in 0..n {
            for j in 0..i {
                let lij = self.l[(i, j)];
                y[i] = y[i] - lij * y[j];
            }
        }
        // back: U x = y'
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let uij = self.u[(i, j)];
                y[i] = y[i] - uij * y[j];
            }
            let pivot = self.u[(i, i)];
            if pivot.abs() <= 1e-13 * scale {
                return None;
            }
            y[i] = y[i] / pivot;
        }
        Some(y)
    }
}

/// Matrix inverse through partial-pivot LU; `None` when some pivot falls
/// below `1e-13` of the matrix scale.
pub(crate) fn inverse<T: Scalar>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.rows;
    let lu = lu_partial(a);
    let mut out = Mat::zeros(n, n);
    let mut e = vec![T::zero(); n];
    for col in 0..n {
        e[col] = T::one();
        let x = lu.solve(&e)?;
        e[col] = T::zero();
        for (row, &value) in x.iter().enumerate() {
            out[(row, col)] = value;
        }
    }
    Some(out)
}
