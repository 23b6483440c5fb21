use super::{Mat, Scalar};

/// Squared column norms below this are treated as exact zeros.
const ZERO_COL_SQ: f64 = 1e-280;

/// Jacobi rotation parameters zeroing the off-diagonal of the 2×2
/// Hermitian block `[[a, h], [h, b]]` with `h > 0`.
fn rotation(a: f64, b: f64, h: f64) -> (f64, f64, f64) {
    let theta = (b - a) / (2.0 * h);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, t)
}

/// Eigendecomposition of a Hermitian (or real symmetric) matrix by cyclic
/// two-sided Jacobi: `A = V · diag(values) · V^H` with unitary `V`.
///
/// Values are sorted by descending magnitude (ties by descending value),
/// columns of `V` aligned.
pub(crate) fn herm_eig<T: Scalar>(a: &Mat<T>) -> (Vec<f64>, Mat<T>) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Mat::<T>::identity(n);
    let fro = m.norm_fro().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].abs_sq();
            }
        }
        if off.sqrt() <= 1e-14 * fro {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[(p, q)];
                let h = g.abs();
                let app = m[(p, p)].re();
                let aqq = m[(q, q)].re();
                if h <= 1e-16 * (app.abs() + aqq.abs()).max(f64::MIN_POSITIVE) {
                    continue;
                }
                let u = g / T::from_re(h);
                let (c, s, t) = rotation(app, aqq, h);
                let (cu, su) = (u.conj().scale(s), u.scale(s));
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let mp = m[(r, p)];
                    let mq = m[(r, q)];
                    m[(r, p)] = mp.scale(c) - cu * mq;
                    m[(r, q)] = su * mp + mq.scale(c);
                    m[(p, r)] = m[(r, p)].conj();
                    m[(q, r)] = m[(r, q)].conj();
                }
                m[(p, p)] = T::from_re(app - t * h);
                m[(q, q)] = T::from_re(aqq + t * h);
                m[(p, q)] = T::zero();
                m[(q, p)] = T::zero();
                for r in 0..n {
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = vp.scale(c) - cu * vq;
                    v[(r, q)] = su * vp + vq.scale(c);
                }
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|i| m[(i, i)].re()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        values[y]
            .abs()
            .partial_cmp(&values[x].abs())
            .unwrap()
            .then(values[y].partial_cmp(&values[x]).unwrap())
            .then(x.cmp(&y))
    });
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let vs = Mat::from_fn(n, n, |r, cidx| v[(r, order[cidx])]);
    (sorted, vs)
}

/// Full singular value decomposition `A = U Σ V^H` by one-sided Jacobi.
///
/// `u` is `p×p`, `v` is `q×q` (both unitary), `sigma` holds the
/// `min(p, q)` singular values in nonincreasing order.
pub(crate) struct SvdFull<T> {
    pub u: Mat<T>,
    pub sigma: Vec<f64>,
    pub v: Mat<T>,
}

pub(crate) fn svd<T: Scalar>(a: &Mat<T>) -> SvdFull<T> {
    if a.rows < a.cols {
        let t = svd(&a.conj_transpose());
        return SvdFull {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let (p, q) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut v = Mat::<T>::identity(q);

    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..q {
            for j in (i + 1)..q {
                let mut aii = 0.0f64;
                let mut ajj = 0.0f64;
                let mut g = T::zero();
                for r in 0..p {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    aii += wi.abs_sq();
                    ajj += wj.abs_sq();
                    g = g + wi.conj() * wj;
                }
                let h = g.abs();
                // columns this small are numerically zero; rotating them
                // risks denormal blowups and cannot change any meaningful
                // singular value
                if aii <= ZERO_COL_SQ || ajj <= ZERO_COL_SQ {
                    continue;
                }
                if h <= 1e-14 * (aii * ajj).sqrt() {
                    continue;
                }
                rotated = true;
                let u = g / T::from_re(h);
                let (c, s, _) = rotation(aii, ajj, h);
                let (cu, su) = (u.conj().scale(s), u.scale(s));
                for r in 0..p {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    w[(r, i)] = wi.scale(c) - cu * wj;
                    w[(r, j)] = su * wi + wj.scale(c);
                }
                for r in 0..q {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)];
                    v[(r, i)] = vi.scale(c) - cu * vj;
                    v[(r, j)] = su * vi + vj.scale(c);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<f64> = (0..q)
        .map(|j| (0..p).map(|r| w[(r, j)].abs_sq()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap().then(x.cmp(&y)));
    let wp = Mat::from_fn(p, q, |r, cidx| w[(r, order[cidx])]);
    let vp = Mat::from_fn(q, q, |r, cidx| v[(r, order[cidx])]);
    norms = order.iter().map(|&i| norms[i]).collect();

    let sigma_tol = norms.first().copied().unwrap_or(0.0) * 1e-13;
    let mut u = Mat::<T>::zeros(p, p);
    let mut filled = vec![false; p];
    for j in 0..q {
        if norms[j] > sigma_tol && norms[j] > 0.0 {
            for r in 0..p {
                u[(r, j)] = wp[(r, j)].scale(1.0 / norms[j]);
            }
            filled[j] = true;
        }
    }
    complete_basis(&mut u, &mut filled);

    SvdFull {
        u,
        sigma: norms,
        v: vp,
    }
}

/// Fill the unfilled columns of `u` with an orthonormal completion, built
/// deterministically from identity candidates by twice-iterated
/// Gram-Schmidt.
fn complete_basis<T: Scalar>(u: &mut Mat<T>, filled: &mut [bool]) {
    let p = u.rows;
    let mut candidate = 0usize;
    for j in 0..p {
        if filled[j] {
            continue;
        }
        while candidate < p {
            let mut vec: Vec<T> = (0..p)
                .map(|r| if r == candidate { T::one() } else { T::zero() })
                .collect();
            for _pass in 0..2 {
                for k in 0..p {
                    if !filled[k] {
                        continue;
                    }
                    let mut proj = T::zero();
                    for r in 0..p {
                        proj = proj + u[(r, k)].conj() * vec[r];
                    }
                    for r in 0..p {
                        vec[r] = vec[r] - u[(r, k)] * proj;
                    }
                }
            }
            let norm = vec.iter().map(|&x| x.abs_sq()).sum::<f64>().sqrt();
            candidate += 1;
            if norm > 1e-6 {
                for r in 0..p {
                    u[(r, j)] = vec[r].scale(1.0 / norm);
                }
                filled[j] = true;
                break;
            }
        }
        assert!(filled[j], "orthonormal completion exhausted candidates");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn xorshift(seed: &mut u64) -> f64 {
        *seed ^= *seed << 13;
        *seed ^= *seed >> 7;
        *seed ^= *seed << 17;
        (*seed as f64 / u64::MAX as f64) * 2.0 - 1.0
    }

    #[test]
    fn hermitian_eig_reconstructs() {
        let n = 7;
        let mut s = 42u64;
        let raw = Mat::from_fn(n, n, |_, _| {
            Complex64::new(xorshift(&mut s), xorshift(&mut s))
        });
        let a = raw.add(&raw.conj_transpose()).scale(0.5);
        let (vals, v) = herm_eig(&a);
        assert!(v.unitary_defect() < 1e-12);
        let lam = Mat::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(vals[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rec = v.matmul(&lam).matmul(&v.conj_transpose());
        assert!(a.sub(&rec).max_abs() < 1e-12 * a.max_abs().max(1.0));
        for w in vals.windows(2) {
            assert!(w[0].abs() >= w[1].abs() - 1e-12);
        }
    }

    #[test]
    fn svd_reconstructs_tall_wide_and_deficient() {
        let mut s = 7u64;
        for (p, q) in [(6, 4), (4, 6), (5, 5)] {
            let a = Mat::from_fn(p, q, |_, _| {
                Complex64::new(xorshift(&mut s), xorshift(&mut s))
            });
            check_svd(&a);
        }
        // rank-1 and zero matrices
        let u0: Vec<f64> = (0..5).map(|i| i as f64 + 1.0).collect();
        let v0: Vec<f64> = (0..3).map(|i| 2.0 - i as f64).collect();
        let rank1 = Mat::from_fn(5, 3, |i, j| Complex64::new(u0[i] * v0[j], 0.0));
        check_svd(&rank1);
        check_svd(&Mat::<Complex64>::zeros(4, 3));

        let real = Mat::from_fn(6, 3, |_, _| xorshift(&mut s));
        let f = svd(&real);
        assert!(f.u.unitary_defect() < 1e-12);
    }

    fn check_svd(a: &Mat<Complex64>) {
        let f = svd(a);
        assert!(f.u.unitary_defect() < 1e-12);
        assert!(f.v.unitary_defect() < 1e-12);
        let sig = Mat::from_fn(a.rows, a.cols, |i, j| {
            if i == j && i < f.sigma.len() {
                Complex64::new(f.sigma[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rec = f.u.matmul(&sig).matmul(&f.v.conj_transpose());
        assert!(a.sub(&rec).max_abs() <= 1e-12 * a.max_abs().max(1.0));
        for w in f.sigma.windows(2) {
            assert!(w[0] >= w[1] - 1e-13);
        }
    }
}
