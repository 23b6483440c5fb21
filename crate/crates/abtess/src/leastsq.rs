//! Least-squares projections onto the column space of a tessarine
//! matrix: the normal-equation route, the pseudoinverse route, and the
//! sequential (Levinson-type) recursion for n-Hermitian Toeplitz Gram
//! matrices.

use crate::error::{Error, Result};
use crate::factor::inverse;
use crate::matrix::{TMat, TVec};
use crate::params::Params;
use crate::scalar::Tessarine;
use crate::spectral::pseudoinverse;

/// Least-squares solution: coefficients, projection, and the squared
/// residual norm.
#[derive(Debug, Clone)]
pub struct LsSolution {
    pub h: TVec,
    pub y_hat: TVec,
    pub eps: f64,
}

/// One stage of the sequential recursion: the one-step coefficient
/// vector `f(i)`, its last entry `λ(i)`, and the one-step error `ε₁(i)`.
#[derive(Debug, Clone)]
pub struct LevinsonStage {
    pub f: Vec<Tessarine>,
    pub lambda: Tessarine,
    pub eps1: Tessarine,
}

/// Full recursion trace. The fixed-point quantities `g(i)`, `ε₂(i)`
/// derive from stage `i−1` via [`fixed_point_projection`].
#[derive(Debug, Clone)]
pub struct LevinsonTrace {
    params: Params,
    pub pi: Vec<Tessarine>,
    pub eps1_0: Tessarine,
    pub stages: Vec<LevinsonStage>,
}

fn eps_of(y: &TVec, y_hat: &TVec, n: u8) -> Result<f64> {
    let yy = y.inner_product(y, n)?;
    let yh = y.inner_product(y_hat, n)?;
    Ok((yy - yh).re())
}

/// Normal-equation projection: `h = (X^{H}X)⁻¹ X^{H} y`,
/// `ε = Re{y^{H}y − y^{H}Xh}`.
pub fn lstsq_normal(x: &TMat, y: &TVec) -> Result<LsSolution> {
    let p = x.params();
    let n = p.herm_index();
    if y.rows() != x.rows() || y.cols() != 1 {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", x.rows(), x.cols()),
            right: format!("{}x{}", y.rows(), y.cols()),
        });
    }
    let xh = x.hermitian(n);
    let gram = xh.mul(x)?;
    let gram_inv = inverse(&gram)?;
    let h = gram_inv.mul(&xh.mul(y)?)?;
    let y_hat = x.mul(&h)?;
    let eps = eps_of(y, &y_hat, n)?;
    Ok(LsSolution { h, y_hat, eps })
}

/// Pseudoinverse projection `h = P·y`; coincides with the normal
/// equations whenever the Gram matrix is invertible, and still defined
/// otherwise.
pub fn lstsq_pinv(x: &TMat, y: &TVec) -> Result<LsSolution> {
    let p = x.params();
    let n = p.herm_index();
    if y.rows() != x.rows() || y.cols() != 1 {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", x.rows(), x.cols()),
            right: format!("{}x{}", y.rows(), y.cols()),
        });
    }
    let _ = p;
    let h = pseudoinverse(x).mul(y)?;
    let y_hat = x.mul(&h)?;
    let eps = eps_of(y, &y_hat, n)?;
    Ok(LsSolution { h, y_hat, eps })
}

/// Gram matrix `T = X^{H}X` with its Toeplitz structure verified, plus
/// the first-column values `π(0..p−1)`.
pub fn toeplitz_gram(x: &TMat) -> Result<(TMat, Vec<Tessarine>)> {
    let p = x.params();
    let n = p.herm_index();
    let t = x.hermitian(n).mul(x)?;
    let size = t.rows();
    let tol = 1e-10 * t.max_abs().max(1.0);
    for i in 0..size.saturating_sub(1) {
        for j in 0..size - 1 {
            let dev = (t.entry(i, j) - t.entry(i + 1, j + 1)).max_abs();
            if dev > tol {
                return Err(Error::NotToeplitz { i, j, dev });
            }
        }
    }
    // Gram matrices are n-Hermitian up to roundoff; verify anyway.
    if !t.is_n_hermitian(n) {
        return Err(Error::NotHermitian { n });
    }
    let pi: Vec<Tessarine> = (0..size).map(|i| t.entry(i, 0)).collect();
    Ok((t, pi))
}

/// `π(i)` for any integer index: stored values for `i ≥ 0`, the regime
/// conjugate of `π(−i)` for `i < 0`.
pub fn pi_at(pi: &[Tessarine], idx: isize, params: Params) -> Tessarine {
    if idx >= 0 {
        pi[idx as usize]
    } else {
        pi[(-idx) as usize].regime_conj(params)
    }
}

impl LevinsonTrace {
    /// Start an empty trace over the first-column values `π`.
    pub fn new(pi: &[Tessarine], params: Params) -> Self {
        LevinsonTrace {
            params,
            pi: pi.to_vec(),
            eps1_0: pi[0],
            stages: Vec::new(),
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Extend the recursion by one stage (O(i) work at stage `i`).
    ///
    /// Stage 1 seeds `λ(1) = π(−1)·π(0)⁻¹`; stage `i` extends `f(i−1)`
    /// with `λ(i) = [π(−i) − 𝛑(i)·f(i−1)]·ε₁(i−1)⁻¹` and the
    /// reversed-conjugate correction, and contracts the error by
    /// `1 − λ(i)·λ(i)^{(3−2n,1)}`.
    ///
    /// The index alignment of the reversal (`ρ_j(i) = g(i−j, i)
    /// = f(i−j, i−1)^{(3−2n,1)}`) is pinned by agreement with the direct
    /// normal-equation solve at every stage.
    pub fn extend_stage(&mut self) -> Result<()> {
        let params = self.params;
        let i = self.stages.len() + 1;
        if i >= self.pi.len() {
            return Err(Error::StageOutOfRange {
                stage: i,
                max: self.pi.len() - 1,
            });
        }
        let conj = |x: &Tessarine| x.regime_conj(params);
        let named_zero = |stage: usize, what: &str, e: Error| match e {
            Error::ZeroDivisor { channel, .. } => Error::ZeroDivisor {
                channel,
                context: Some(format!("{what} at stage {stage}")),
            },
            other => other,
        };
        let one = Tessarine::ONE;
        let pi = &self.pi;

        if i == 1 {
            let pi0_inv = pi[0]
                .inverse(params)
                .map_err(|e| named_zero(1, "pi(0)", e))?;
            let lambda = pi_at(pi, -1, params).mul(&pi0_inv, params);
            let eps1 = self
                .eps1_0
                .mul(&(one - lambda.mul(&conj(&lambda), params)), params);
            self.stages.push(LevinsonStage {
                f: vec![lambda],
                lambda,
                eps1,
            });
            return Ok(());
        }

        let (prev_f, prev_eps) = {
            let prev = &self.stages[i - 2];
            (prev.f.clone(), prev.eps1)
        };
        let eps_inv = prev_eps
            .inverse(params)
            .map_err(|e| named_zero(i, "eps1(i-1)", e))?;
        // numerator π(−i) − Σ_j π(j−i) f_j(i−1)
        let mut num = pi_at(pi, -(i as isize), params);
        for (j, fj) in prev_f.iter().enumerate() {
            let pij = pi_at(pi, (j + 1) as isize - i as isize, params);
            num = num - pij.mul(fj, params);
        }
        let lambda = num.mul(&eps_inv, params);

        // 𝛌_j(i) = f_j(i−1) − λ(i)·conj(f_{i−j}(i−1))
        let mut f: Vec<Tessarine> = Vec::with_capacity(i);
        for j in 1..i {
            let rho_j = conj(&prev_f[i - j - 1]);
            f.push(prev_f[j - 1] - lambda.mul(&rho_j, params));
        }
        f.push(lambda);

        let eps1 = prev_eps.mul(&(one - lambda.mul(&conj(&lambda), params)), params);
        self.stages.push(LevinsonStage { f, lambda, eps1 });
        Ok(())
    }
}

/// Sequential recursion for the one-step projection coefficients on an
/// n-Hermitian Toeplitz system with first column `π`: seeds a trace and
/// extends it stage by stage.
pub fn levinson_solve(pi: &[Tessarine], params: Params, stages: usize) -> Result<LevinsonTrace> {
    assert!(stages < pi.len(), "stage {stages} needs pi(0..={stages})");
    let mut trace = LevinsonTrace::new(pi, params);
    for _ in 0..stages {
        trace.extend_stage()?;
    }
    Ok(trace)
}

/// Fixed-point quantities at stage `i ≥ 2`: `g(i)` is the entrywise
/// regime conjugate of `f(i−1)` (order preserved) and `ε₂(i) = ε₁(i−1)`.
pub fn fixed_point_projection(
    trace: &LevinsonTrace,
    i: usize,
) -> Result<(Vec<Tessarine>, Tessarine)> {
    if i < 2 || i - 1 > trace.stages.len() {
        return Err(Error::StageOutOfRange {
            stage: i,
            max: trace.stages.len() + 1,
        });
    }
    let prev = &trace.stages[i - 2];
    let g = prev.f.iter().map(|x| x.regime_conj(trace.params)).collect();
    Ok((g, prev.eps1))
}
