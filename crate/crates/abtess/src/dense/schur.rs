use num_complex::Complex64;

use super::Mat;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

/// Complex Schur decomposition `A = Z T Z^H` with `T` upper triangular.
pub(crate) struct Schur {
    pub z: Mat<C>,
    pub t: Mat<C>,
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// unitary transform.
fn hessenberg(a: &Mat<C>) -> (Mat<C>, Mat<C>) {
    let n = a.rows;
    let mut h = a.clone();
    let mut q = Mat::<C>::identity(n);
    for k in 0..n.saturating_sub(2) {
        let norm_x: f64 = ((k + 1)..n)
            .map(|r| h[(r, k)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C::new(1.0, 0.0)
        };
        // v = x + phase·‖x‖·e1, reflector P = I − 2 v v^H / ‖v‖²
        let mut v: Vec<C> = ((k + 1)..n).map(|r| h[(r, k)]).collect();
        v[0] += phase * norm_x;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // left: H[k+1.., k..] ← P · H[k+1.., k..]
        for col in k..n {
            let mut dot = czero();
            for (idx, vr) in v.iter().enumerate() {
                dot += vr.conj() * h[(k + 1 + idx, col)];
            }
            let dot = dot * beta;
            for (idx, vr) in v.iter().enumerate() {
                let cur = h[(k + 1 + idx, col)];
                h[(k + 1 + idx, col)] = cur - vr * dot;
            }
        }
        // right: H[.., k+1..] ← H[.., k+1..] · P
        for row in 0..n {
            let mut dot = czero();
            for (idx, vr) in v.iter().enumerate() {
                dot += h[(row, k + 1 + idx)] * *vr;
            }
            let dot = dot * beta;
            for (idx, vr) in v.iter().enumerate() {
                let cur = h[(row, k + 1 + idx)];
                h[(row, k + 1 + idx)] = cur - dot * vr.conj();
            }
        }
        // accumulate Q ← Q · P
        for row in 0..n {
            let mut dot = czero();
            for (idx, vr) in v.iter().enumerate() {
                dot += q[(row, k + 1 + idx)] * *vr;
            }
            let dot = dot * beta;
            for (idx, vr) in v.iter().enumerate() {
                let cur = q[(row, k + 1 + idx)];
                q[(row, k + 1 + idx)] = cur - dot * vr.conj();
            }
        }
        for r in (k + 2)..n {
            h[(r, k)] = czero();
        }
    }
    (q, h)
}

/// Complex Givens pair `(c, s)` with `c` real such that
/// `[c, s; −s̄, c]^H? · [f; g] = [r; 0]` under the row update
/// `row_k ← c·row_k + s·row_{k+1}`, `row_{k+1} ← −s̄·row_k + c·row_{k+1}`.
fn givens(f: C, g: C) -> (f64, C) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, czero());
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let r = (fn_ * fn_ + gn * gn).sqrt();
    (fn_ / r, (f / fn_) * g.conj() / r)
}

/// Eigenvalue of the 2×2 block closest to its lower-right entry
/// (Wilkinson shift).
fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    let tr_half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Shifted QR iteration on a Hessenberg matrix, deflating to triangular
/// form. `z` accumulates every unitary transform applied.
pub(crate) fn schur(a: &Mat<C>) -> Schur {
    let n = a.rows;
    assert_eq!(n, a.cols);
    if n == 0 {
        return Schur {
            z: Mat::identity(0),
            t: Mat::identity(0),
        };
    }
    let (mut z, mut t) = hessenberg(a);
    let scale = t.max_abs().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;

    let mut hi = n - 1;
    let mut stalled = 0usize;
    let mut total_iter = 0usize;
    let max_total = 60 * n.max(4);

    'outer: loop {
        // deflate converged subdiagonals at the active bottom
        loop {
            if hi == 0 {
                break 'outer;
            }
            let sub = t[(hi, hi - 1)].norm();
            let local = t[(hi - 1, hi - 1)].norm() + t[(hi, hi)].norm();
            if sub <= eps * local.max(scale * eps) {
                t[(hi, hi - 1)] = czero();
                hi -= 1;
                stalled = 0;
            } else {
                break;
            }
        }
        // find the top of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let local = t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm();
            if sub <= eps * local.max(scale * eps) {
                t[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }

        total_iter += 1;
        stalled += 1;
        let mu = if stalled.is_multiple_of(12) {
            // exceptional shift breaks rare symmetric cycles
            t[(hi, hi)] + C::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };
        if total_iter > max_total {
            // force deflation of the smallest stubborn subdiagonal; the
            // residual checks downstream would flag any quality loss
            let mut kmin = lo + 1;
            let mut vmin = f64::INFINITY;
            for k in (lo + 1)..=hi {
                if t[(k, k - 1)].norm() < vmin {
                    vmin = t[(k, k - 1)].norm();
                    kmin = k;
                }
            }
            t[(kmin, kmin - 1)] = czero();
            continue;
        }

        // explicit single-shift QR sweep on [lo..=hi]
        for i in lo..=hi {
            t[(i, i)] -= mu;
        }
        let mut rots: Vec<(f64, C)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(t[(k, k)], t[(k + 1, k)]);
            rots.push((c, s));
            for col in k..n {
                let x = t[(k, col)];
                let y = t[(k + 1, col)];
                t[(k, col)] = x.scale(c) + s * y;
                t[(k + 1, col)] = -s.conj() * x + y.scale(c);
            }
        }
        for (offset, &(c, s)) in rots.iter().enumerate() {
            let k = lo + offset;
            let row_end = (k + 2).min(hi);
            for row in 0..=row_end {
                let x = t[(row, k)];
                let y = t[(row, k + 1)];
                t[(row, k)] = x.scale(c) + y * s.conj();
                t[(row, k + 1)] = y.scale(c) - s * x;
            }
            for row in 0..n {
                let x = z[(row, k)];
                let y = z[(row, k + 1)];
                z[(row, k)] = x.scale(c) + y * s.conj();
                z[(row, k + 1)] = y.scale(c) - s * x;
            }
        }
        for i in lo..=hi {
            t[(i, i)] += mu;
        }
        // restore exact Hessenberg zeros below the first subdiagonal
        for k in lo..hi {
            for r in (k + 2)..=hi {
                t[(r, k)] = czero();
            }
        }
    }

    Schur { z, t }
}

/// Eigenvalues and eigenvectors of a general complex matrix via Schur
/// form plus triangular back-substitution. Vectors are unit 2-norm with
/// the largest component rotated to the positive real axis.
pub(crate) fn eig(a: &Mat<C>) -> (Vec<C>, Mat<C>) {
    let n = a.rows;
    let Schur { z, t } = schur(a);
    let scale = t.max_abs().max(f64::MIN_POSITIVE);
    let values: Vec<C> = (0..n).map(|i| t[(i, i)]).collect();
    let mut vectors = Mat::<C>::zeros(n, n);
    for k in 0..n {
        let lambda = values[k];
        let mut y = vec![czero(); n];
        y[k] = C::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut rhs = czero();
            for j in (i + 1)..=k {
                rhs += t[(i, j)] * y[j];
            }
            let mut den = t[(i, i)] - lambda;
            if den.norm() < f64::EPSILON * scale {
                den = C::new(f64::EPSILON * scale, 0.0);
            }
            y[i] = -rhs / den;
        }
        // u = Z y, normalized with a deterministic phase
        let mut u = vec![czero(); n];
        for r in 0..n {
            let mut acc = czero();
            for j in 0..=k {
                acc += z[(r, j)] * y[j];
            }
            u[r] = acc;
        }
        let norm: f64 = u.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let lead = u
            .iter()
            .cloned()
            .max_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap())
            .unwrap_or(C::new(1.0, 0.0));
        let phase = if lead.norm() > 0.0 {
            lead.conj() / lead.norm()
        } else {
            C::new(1.0, 0.0)
        };
        for r in 0..n {
            vectors[(r, k)] = u[r] * phase / norm;
        }
    }
    (values, vectors)
}

/// Principal matrix square root via the Schur form: root the triangular
/// factor by the standard recurrence, then transform back. Fails when the
/// recurrence divides by a vanishing `s_ii + s_jj` (e.g. a defective zero
/// eigenvalue).
pub(crate) fn sqrtm(a: &Mat<C>) -> Option<Mat<C>> {
    let n = a.rows;
    let Schur { z, t } = schur(a);
    let mut s = Mat::<C>::zeros(n, n);
    for i in 0..n {
        s[(i, i)] = t[(i, i)].sqrt();
    }
    let scale = (0..n)
        .map(|i| s[(i, i)].norm())
        .fold(t.max_abs().sqrt(), f64::max);
    for off in 1..n {
        for i in 0..(n - off) {
            let j = i + off;
            let mut acc = t[(i, j)];
            for k in (i + 1)..j {
                acc -= s[(i, k)] * s[(k, j)];
            }
            let den = s[(i, i)] + s[(j, j)];
            if den.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
                return None;
            }
            s[(i, j)] = acc / den;
        }
    }
    Some(z.matmul(&s).matmul(&z.conj_transpose()))
}
