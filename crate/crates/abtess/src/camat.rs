//! Dense kernels over (α)-complex matrices `X = A + B·i`, `i² = α`.
//!
//! Every routine reduces to real or standard-complex computations: for
//! `alpha < 0` through the rescaled complex matrix `Ẋ = A + √|α|·B·𝒾`,
//! for `alpha > 0` through the two real split matrices `A ± √α·B`. The
//! tessarine layer calls these once per idempotent channel.

use num_complex::Complex64;

use crate::dense::{jacobi, lu, schur, Mat};
use crate::error::{Error, Result};

type C = Complex64;

/// Dense (α)-complex matrix, stored as two real component planes.
#[derive(Debug, Clone, PartialEq)]
pub struct CAMat {
    pub alpha: f64,
    pub rows: usize,
    pub cols: usize,
    pub(crate) re: Mat<f64>,
    pub(crate) im: Mat<f64>,
}

/// (α)-complex matrix with complex coefficient planes `Z = Z₁ + Z₂·i`
/// (the complex unit inside `Z₁`, `Z₂` is the commuting `ε`). Produced by
/// square roots and eigendecompositions in the `alpha > 0` regime.
#[derive(Debug, Clone)]
pub struct CAGMat {
    pub alpha: f64,
    pub rows: usize,
    pub cols: usize,
    pub(crate) c1: Mat<C>,
    pub(crate) c2: Mat<C>,
}

/// Partial-pivot LU of an (α)-complex matrix: `P·X = L·U` plus the
/// permutation signatures of the underlying pivot sequences (one for
/// `alpha < 0`, two for `alpha > 0`).
#[derive(Debug, Clone)]
pub struct CALu {
    pub p: CAMat,
    pub l: CAMat,
    pub u: CAMat,
    pub gammas: Vec<i32>,
}

/// Eigenpairs of an (α)-complex matrix. `values[k] = (v₁, v₂)` encodes
/// `λ = v₁ + v₂·i`; the eigenvector matrix is `vectors.0 + vectors.1·i`.
/// Coefficients are complex only in the `alpha > 0` regime (the `ε`
/// direction); for `alpha < 0` their imaginary parts are exactly zero.
/// `orders` records the canonical sort permutation applied to each
/// underlying kernel (one for `alpha < 0`, two for `alpha > 0`).
#[derive(Debug, Clone)]
pub struct CaEig {
    pub values: Vec<(C, C)>,
    pub vectors: CAGMat,
    pub orders: Vec<Vec<usize>>,
}

/// SVD `X = U Σ V^{H_θ¹}` with `θ = 1` for `alpha > 0` and `θ = −1` for
/// `alpha < 0`. `sigma_channels` holds the per-kernel singular values in
/// the order they were placed on the diagonal.
#[derive(Debug, Clone)]
pub struct CaSvd {
    pub u: CAMat,
    pub sigma: CAMat,
    pub v: CAMat,
    pub sigma_channels: Vec<Vec<f64>>,
}

impl CAMat {
    pub fn new(alpha: f64, rows: usize, cols: usize, re: Vec<f64>, im: Vec<f64>) -> Self {
        assert_eq!(re.len(), rows * cols);
        assert_eq!(im.len(), rows * cols);
        CAMat {
            alpha,
            rows,
            cols,
            re: Mat {
                rows,
                cols,
                data: re,
            },
            im: Mat {
                rows,
                cols,
                data: im,
            },
        }
    }

    pub(crate) fn from_planes(alpha: f64, re: Mat<f64>, im: Mat<f64>) -> Self {
        assert_eq!((re.rows, re.cols), (im.rows, im.cols));
        CAMat {
            alpha,
            rows: re.rows,
            cols: re.cols,
            re,
            im,
        }
    }

    pub fn identity(alpha: f64, n: usize) -> Self {
        CAMat::from_planes(alpha, Mat::identity(n), Mat::zeros(n, n))
    }

    pub fn zeros(alpha: f64, rows: usize, cols: usize) -> Self {
        CAMat::from_planes(alpha, Mat::zeros(rows, cols), Mat::zeros(rows, cols))
    }

    pub fn entry(&self, i: usize, j: usize) -> (f64, f64) {
        (self.re[(i, j)], self.im[(i, j)])
    }

    /// Rescaled standard-complex image `Ẋ = A + √|α|·B·𝒾`.
    pub(crate) fn scaled_complex(&self) -> Mat<C> {
        let s = self.alpha.abs().sqrt();
        Mat::from_fn(self.rows, self.cols, |i, j| {
            C::new(self.re[(i, j)], s * self.im[(i, j)])
        })
    }

    pub(crate) fn from_scaled_complex(alpha: f64, m: &Mat<C>) -> Self {
        let s = alpha.abs().sqrt();
        CAMat::from_planes(alpha, m.re_part(), m.im_part().scale(1.0 / s))
    }

    /// Real splits `(A + √α·B, A − √α·B)`; `alpha > 0` only.
    pub(crate) fn real_splits(&self) -> (Mat<f64>, Mat<f64>) {
        debug_assert!(self.alpha > 0.0);
        let s = self.alpha.sqrt();
        (
            self.re.add(&self.im.scale(s)),
            self.re.sub(&self.im.scale(s)),
        )
    }

    pub(crate) fn from_real_splits(alpha: f64, e: &Mat<f64>, f: &Mat<f64>) -> Self {
        let s = alpha.sqrt();
        CAMat::from_planes(alpha, e.add(f).scale(0.5), e.sub(f).scale(0.5 / s))
    }

    /// (α)-complex matrix product.
    pub fn matmul(&self, other: &CAMat) -> CAMat {
        assert_eq!(self.cols, other.rows);
        let re = self
            .re
            .matmul(&other.re)
            .add(&self.im.matmul(&other.im).scale(self.alpha));
        let im = self.re.matmul(&other.im).add(&self.im.matmul(&other.re));
        CAMat::from_planes(self.alpha, re, im)
    }

    /// Hermitian transpose `X^{H_θ¹}`: transpose, with the i-part negated
    /// when `θ < 0`.
    pub fn hermitian(&self, theta: f64) -> CAMat {
        let im = if theta < 0.0 {
            self.im.transpose().scale(-1.0)
        } else {
            self.im.transpose()
        };
        CAMat::from_planes(self.alpha, self.re.transpose(), im)
    }

    pub fn add(&self, other: &CAMat) -> CAMat {
        CAMat::from_planes(self.alpha, self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &CAMat) -> CAMat {
        CAMat::from_planes(self.alpha, self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }

    /// Embed into the generalized form with zero `ε` planes.
    pub fn to_cagmat(&self) -> CAGMat {
        CAGMat {
            alpha: self.alpha,
            rows: self.rows,
            cols: self.cols,
            c1: self.re.to_complex(),
            c2: self.im.to_complex(),
        }
    }
}

impl CAGMat {
    pub fn matmul(&self, other: &CAGMat) -> CAGMat {
        assert_eq!(self.cols, other.rows);
        let c1 = self
            .c1
            .matmul(&other.c1)
            .add(&self.c2.matmul(&other.c2).scale(self.alpha));
        let c2 = self.c1.matmul(&other.c2).add(&self.c2.matmul(&other.c1));
        CAGMat {
            alpha: self.alpha,
            rows: self.rows,
            cols: other.cols,
            c1,
            c2,
        }
    }

    pub fn sub(&self, other: &CAGMat) -> CAGMat {
        CAGMat {
            alpha: self.alpha,
            rows: self.rows,
            cols: self.cols,
            c1: self.c1.sub(&other.c1),
            c2: self.c2.sub(&other.c2),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c1.max_abs().max(self.c2.max_abs())
    }

    /// Largest `ε` component across both coefficient planes.
    pub fn max_eps_abs(&self) -> f64 {
        self.c1.max_im_abs().max(self.c2.max_im_abs())
    }

    /// Collapse to a plain (α)-complex matrix when the `ε` parts vanish.
    pub fn to_camat(&self, tol: f64) -> Option<CAMat> {
        if self.max_eps_abs() <= tol * self.max_abs().max(1.0) {
            Some(CAMat::from_planes(
                self.alpha,
                self.c1.re_part(),
                self.c2.re_part(),
            ))
        } else {
            None
        }
    }
}

/// Inverse per the regime: complex inversion of `Ẋ`, or the two real
/// split inverses recombined. Errors carry the split tag `"c"` (complex),
/// `"+"` or `"-"` for the caller to rename into a channel.
pub fn ca_inverse(x: &CAMat) -> Result<CAMat> {
    assert_eq!(x.rows, x.cols);
    if x.alpha < 0.0 {
        let inv = lu::inverse(&x.scaled_complex()).ok_or(Error::Singular {
            channel: "c".to_string(),
        })?;
        Ok(CAMat::from_scaled_complex(x.alpha, &inv))
    } else {
        let (e, f) = x.real_splits();
        let ei = lu::inverse(&e).ok_or(Error::Singular {
            channel: "+".to_string(),
        })?;
        let fi = lu::inverse(&f).ok_or(Error::Singular {
            channel: "-".to_string(),
        })?;
        Ok(CAMat::from_real_splits(x.alpha, &ei, &fi))
    }
}

/// Principal square root per the regime. The result is generalized: for
/// `alpha > 0` the split roots may be complex and the imaginary direction
/// becomes the commuting `ε`; for `alpha < 0` the `ε` planes are exactly
/// zero.
pub fn ca_sqrt(x: &CAMat) -> Result<CAGMat> {
    assert_eq!(x.rows, x.cols);
    let n = x.rows;
    if x.alpha < 0.0 {
        let root = schur::sqrtm(&x.scaled_complex()).ok_or(Error::NoSquareRoot {
            channel: "c".to_string(),
        })?;
        let s = x.alpha.abs().sqrt();
        Ok(CAGMat {
            alpha: x.alpha,
            rows: n,
            cols: n,
            c1: root.re_part().to_complex(),
            c2: root.im_part().scale(1.0 / s).to_complex(),
        })
    } else {
        let (e, f) = x.real_splits();
        let re = schur::sqrtm(&e.to_complex()).ok_or(Error::NoSquareRoot {
            channel: "+".to_string(),
        })?;
        let rf = schur::sqrtm(&f.to_complex()).ok_or(Error::NoSquareRoot {
            channel: "-".to_string(),
        })?;
        let sa = x.alpha.sqrt();
        let c1 = re.add(&rf).scale(0.5);
        let c2 = re.sub(&rf).scale(0.5 / sa);
        Ok(CAGMat {
            alpha: x.alpha,
            rows: n,
            cols: n,
            c1,
            c2,
        })
    }
}

/// LU with partial pivoting (largest absolute pivot, ties keep the lowest
/// row). Never fails; rank-deficient inputs leave zero pivots in `U`.
pub fn ca_lu(x: &CAMat) -> CALu {
    assert_eq!(x.rows, x.cols);
    if x.alpha < 0.0 {
        let f = lu::lu_partial(&x.scaled_complex());
        let p = f.perm_matrix();
        CALu {
            p: CAMat::from_planes(x.alpha, p.re_part(), Mat::zeros(x.rows, x.cols)),
            l: CAMat::from_scaled_complex(x.alpha, &f.l),
            u: CAMat::from_scaled_complex(x.alpha, &f.u),
            gammas: vec![f.sign],
        }
    } else {
        let (e, f) = x.real_splits();
        let fe = lu::lu_partial(&e);
        let ff = lu::lu_partial(&f);
        CALu {
            p: CAMat::from_real_splits(x.alpha, &fe.perm_matrix(), &ff.perm_matrix()),
            l: CAMat::from_real_splits(x.alpha, &fe.l, &ff.l),
            u: CAMat::from_real_splits(x.alpha, &fe.u, &ff.u),
            gammas: vec![fe.sign, ff.sign],
        }
    }
}

/// Canonical per-kernel eigen ordering: descending magnitude, ties by
/// descending real part, then original index.
fn sort_eigenpairs(values: Vec<C>, vectors: Mat<C>) -> (Vec<C>, Mat<C>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| {
        values[y]
            .norm()
            .partial_cmp(&values[x].norm())
            .unwrap()
            .then(values[y].re.partial_cmp(&values[x].re).unwrap())
            .then(x.cmp(&y))
    });
    let sorted_vals: Vec<C> = order.iter().map(|&i| values[i]).collect();
    let sorted_vecs = Mat::from_fn(vectors.rows, vectors.cols, |r, cidx| {
        vectors[(r, order[cidx])]
    });
    (sorted_vals, sorted_vecs, order)
}

/// Eigenpairs per the regime, canonically ordered within each underlying
/// kernel.
pub fn ca_eig(x: &CAMat) -> CaEig {
    assert_eq!(x.rows, x.cols);
    let n = x.rows;
    if x.alpha < 0.0 {
        let (vals, vecs, order) = {
            let (v, w) = schur::eig(&x.scaled_complex());
            sort_eigenpairs(v, w)
        };
        let s = x.alpha.abs().sqrt();
        let values = vals
            .iter()
            .map(|lam| (C::new(lam.re, 0.0), C::new(lam.im / s, 0.0)))
            .collect();
        CaEig {
            values,
            vectors: CAGMat {
                alpha: x.alpha,
                rows: n,
                cols: n,
                c1: vecs.re_part().to_complex(),
                c2: vecs.im_part().scale(1.0 / s).to_complex(),
            },
            orders: vec![order],
        }
    } else {
        let (e, f) = x.real_splits();
        let (ve, we, order_e) = {
            let (v, w) = schur::eig(&e.to_complex());
            sort_eigenpairs(v, w)
        };
        let (vf, wf, order_f) = {
            let (v, w) = schur::eig(&f.to_complex());
            sort_eigenpairs(v, w)
        };
        let sa = x.alpha.sqrt();
        let values = ve
            .iter()
            .zip(&vf)
            .map(|(le, lf)| {
                let l1 = (le + lf) * 0.5;
                let l2 = (le - l1) / sa;
                (l1, l2)
            })
            .collect();
        let c1 = we.add(&wf).scale(0.5);
        let c2 = we.sub(&wf).scale(0.5 / sa);
        CaEig {
            values,
            vectors: CAGMat {
                alpha: x.alpha,
                rows: n,
                cols: n,
                c1,
                c2,
            },
            orders: vec![order_e, order_f],
        }
    }
}

fn check_perm(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::BadPermutation {
            reason: format!("expected length {len}, got {}", perm.len()),
        });
    }
    for &idx in perm {
        if idx >= len || seen[idx] {
            return Err(Error::BadPermutation {
                reason: format!("not a permutation of 0..{len}"),
            });
        }
        seen[idx] = true;
    }
    Ok(())
}

fn apply_perm<T: crate::dense::Scalar>(
    u: &Mat<T>,
    sigma: &[f64],
    v: &Mat<T>,
    perm: &[usize],
) -> (Mat<T>, Vec<f64>, Mat<T>) {
    let r = sigma.len();
    let up = Mat::from_fn(u.rows, u.cols, |i, j| {
        if j < r {
            u[(i, perm[j])]
        } else {
            u[(i, j)]
        }
    });
    let vp = Mat::from_fn(v.rows, v.cols, |i, j| {
        if j < r {
            v[(i, perm[j])]
        } else {
            v[(i, j)]
        }
    });
    let sp: Vec<f64> = perm.iter().map(|&k| sigma[k]).collect();
    (up, sp, vp)
}

fn diag_rect(rows: usize, cols: usize, values: &[f64]) -> Mat<f64> {
    Mat::from_fn(rows, cols, |i, j| {
        if i == j && i < values.len() {
            values[i]
        } else {
            0.0
        }
    })
}

/// SVD per the regime. `perms` optionally reorders the singular triples
/// of each underlying kernel (one list for `alpha < 0`, two for
/// `alpha > 0`); identity keeps them nonincreasing.
pub fn ca_svd(x: &CAMat, perms: Option<&[Vec<usize>]>) -> Result<CaSvd> {
    let (p, q) = (x.rows, x.cols);
    let r = p.min(q);
    let expect = if x.alpha < 0.0 { 1 } else { 2 };
    if let Some(ps) = perms {
        if ps.len() != expect {
            return Err(Error::BadPermutation {
                reason: format!("expected {expect} permutation lists, got {}", ps.len()),
            });
        }
        for perm in ps {
            check_perm(perm, r)?;
        }
    }
    let identity: Vec<usize> = (0..r).collect();
    let perm_for = |idx: usize| -> &[usize] {
        match perms {
            Some(ps) => &ps[idx],
            None => &identity,
        }
    };

    if x.alpha < 0.0 {
        let f = jacobi::svd(&x.scaled_complex());
        let (u, sig, v) = apply_perm(&f.u, &f.sigma, &f.v, perm_for(0));
        Ok(CaSvd {
            u: CAMat::from_scaled_complex(x.alpha, &u),
            sigma: CAMat::from_planes(x.alpha, diag_rect(p, q, &sig), Mat::zeros(p, q)),
            v: CAMat::from_scaled_complex(x.alpha, &v),
            sigma_channels: vec![sig],
        })
    } else {
        let (e, f) = x.real_splits();
        let fe = jacobi::svd(&e);
        let ff = jacobi::svd(&f);
        let (ue, se, ve) = apply_perm(&fe.u, &fe.sigma, &fe.v, perm_for(0));
        let (uf, sf, vf) = apply_perm(&ff.u, &ff.sigma, &ff.v, perm_for(1));
        Ok(CaSvd {
            u: CAMat::from_real_splits(x.alpha, &ue, &uf),
            sigma: CAMat::from_real_splits(x.alpha, &diag_rect(p, q, &se), &diag_rect(p, q, &sf)),
            v: CAMat::from_real_splits(x.alpha, &ve, &vf),
            sigma_channels: vec![se, sf],
        })
    }
}
