//! Spectral theory: eigendecomposition, positive definiteness, the power
//! method, SVD, singular values and rank, rank-k approximation, and the
//! pseudoinverse.

use num_complex::Complex64;

use crate::camat::{ca_eig, ca_svd};
use crate::dense::{jacobi, Mat};
use crate::error::{Error, Result};
use crate::factor::{g_matrix_inverse, inverse};
use crate::gscalar::GTessarine;
use crate::matrix::{GTMat, TMat, TVec};
use crate::params::Params;
use crate::scalar::{ChannelSet, Tessarine};

type C = Complex64;

/// Eigendecomposition `X = U Λ U⁻¹` (general) or `X = U Λ U^{H}`
/// (Hermitian path). Eigenvalues are generalized in the non-Hermitian
/// `alpha > 0` case and collapse otherwise; `pairing` records the
/// canonical sort permutation applied to each channel spectrum.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub lambdas: Vec<GTessarine>,
    pub u: GTMat,
    pub u_inv_or_h: GTMat,
    pub hermitian_path: bool,
    pub pairing: Vec<Vec<usize>>,
}

/// SVD `X = U Σ V^{H}` with per-channel permutation freedom. `sigmas` is
/// the diagonal of `Σ` as tessarines; `sigma_channels` the per-channel
/// singular values in diagonal order.
#[derive(Debug, Clone)]
pub struct SvdDecomp {
    pub u: TMat,
    pub v: TMat,
    pub sigmas: Vec<Tessarine>,
    pub sigma_channels: Vec<Vec<f64>>,
}

/// Power-method output: the Rayleigh value at termination, the final
/// iterate, the per-iteration Rayleigh trace, and a flag raised when two
/// leading channel eigenvalues are too close for the dominance
/// assumption.
#[derive(Debug, Clone)]
pub struct PowerMethod {
    pub lambda: Tessarine,
    pub x: TVec,
    pub iters: usize,
    pub near_degenerate: bool,
    pub trace: Vec<Tessarine>,
}

fn assemble_lambda(p: Params, chans: &[C]) -> GTessarine {
    if p.is_split() {
        GTessarine::from_complex_channels([chans[0], chans[1], chans[2], chans[3]], p)
    } else {
        let re = ChannelSet::TwoComplex {
            s: chans[0],
            d: chans[1],
        };
        GTessarine::from_tessarine(Tessarine::from_channels(&re, p).expect("regime fixed"))
    }
}

/// General eigendecomposition via the channel split: each channel is
/// factored by the (α)-complex kernel with the canonical ordering, the
/// results recombine entrywise, and `U⁻¹` closes the decomposition.
pub fn eig(x: &TMat) -> Result<EigenDecomp> {
    debug_assert!(x.is_square());
    let p = x.params();
    let n = x.rows();
    let (xs, xd) = x.split();
    let es = ca_eig(&xs);
    let ed = ca_eig(&xd);

    let mut pairing = es.orders.clone();
    pairing.extend(ed.orders.iter().cloned());

    let (lambdas, u) = if p.is_split() {
        // recover the four channel spectra from the two split recombinations
        let sa = p.sqrt_alpha();
        let lambdas: Vec<GTessarine> = (0..n)
            .map(|i| {
                let (s1, s2) = es.values[i];
                let (d1, d2) = ed.values[i];
                let chans = [s1 + s2 * sa, s1 - s2 * sa, d1 + d2 * sa, d1 - d2 * sa];
                assemble_lambda(p, &chans)
            })
            .collect();
        let v1 = es.vectors.c1.add(&es.vectors.c2.scale(sa));
        let v2 = es.vectors.c1.sub(&es.vectors.c2.scale(sa));
        let v3 = ed.vectors.c1.add(&ed.vectors.c2.scale(sa));
        let v4 = ed.vectors.c1.sub(&ed.vectors.c2.scale(sa));
        let u = GTMat::from_complex_channels([&v1, &v2, &v3, &v4], p);
        (lambdas, u)
    } else {
        let sa = p.sqrt_abs_alpha();
        let lambdas: Vec<GTessarine> = (0..n)
            .map(|i| {
                let (s1, s2) = es.values[i];
                let (d1, d2) = ed.values[i];
                let chans = [C::new(s1.re, s2.re * sa), C::new(d1.re, d2.re * sa)];
                assemble_lambda(p, &chans)
            })
            .collect();
        let ms = Mat::from_fn(n, n, |i, j| {
            C::new(es.vectors.c1[(i, j)].re, es.vectors.c2[(i, j)].re * sa)
        });
        let md = Mat::from_fn(n, n, |i, j| {
            C::new(ed.vectors.c1[(i, j)].re, ed.vectors.c2[(i, j)].re * sa)
        });
        let u = GTMat::from_tmat(TMat::from_complex_channels([&ms, &md], p));
        (lambdas, u)
    };

    let u_inv = if p.is_split() {
        g_matrix_inverse(&u).map_err(|e| match e {
            Error::Singular { channel } => Error::DefectiveChannel { channel },
            other => other,
        })?
    } else {
        let inv = inverse(&u.x1).map_err(|e| match e {
            Error::Singular { channel } => Error::DefectiveChannel { channel },
            other => other,
        })?;
        GTMat::from_tmat(inv)
    };

    Ok(EigenDecomp {
        lambdas,
        u,
        u_inv_or_h: u_inv,
        hermitian_path: false,
        pairing,
    })
}

/// Channel matrices of an n-Hermitian input, symmetrized to clean
/// roundoff: four real symmetric (`alpha > 0`) or two complex Hermitian
/// (`alpha < 0`).
fn hermitian_channel_eigs(x: &TMat) -> Vec<(Vec<f64>, Mat<C>)> {
    let p = x.params();
    if p.is_split() {
        x.real_channels()
            .iter()
            .map(|m| {
                let sym = m.add(&m.transpose()).scale(0.5);
                let (vals, vecs) = jacobi::herm_eig(&sym);
                (vals, vecs.to_complex())
            })
            .collect()
    } else {
        x.complex_channels()
            .iter()
            .map(|m| {
                let herm = m.add(&m.conj_transpose()).scale(0.5);
                jacobi::herm_eig(&herm)
            })
            .collect()
    }
}

/// Eigendecomposition of an n-Hermitian matrix: real channel spectra,
/// unitary `U`, and `X = U Λ U^{H}` with no inversion involved.
pub fn eig_hermitian(x: &TMat) -> Result<EigenDecomp> {
    let p = x.params();
    let n = p.herm_index();
    if !x.is_n_hermitian(n) {
        return Err(Error::NotHermitian { n });
    }
    let size = x.rows();
    let chans = hermitian_channel_eigs(x);

    let lambdas: Vec<GTessarine> = (0..size)
        .map(|i| {
            let vals: Vec<C> = chans.iter().map(|(v, _)| C::new(v[i], 0.0)).collect();
            assemble_lambda(p, &vals)
        })
        .collect();
    let u = if p.is_split() {
        let re: Vec<Mat<f64>> = chans.iter().map(|(_, w)| w.re_part()).collect();
        GTMat::from_tmat(TMat::from_real_channels(
            [&re[0], &re[1], &re[2], &re[3]],
            p,
        ))
    } else {
        GTMat::from_tmat(TMat::from_complex_channels([&chans[0].1, &chans[1].1], p))
    };
    let u_h = GTMat::from_tmat(u.x1.hermitian(n));

    Ok(EigenDecomp {
        lambdas,
        u,
        u_inv_or_h: u_h,
        hermitian_path: true,
        pairing: vec![],
    })
}

/// Positive definiteness: n-Hermitian with every channel matrix positive
/// definite (all channel eigenvalues above `1e-12` of the channel scale).
pub fn is_positive_definite(x: &TMat) -> bool {
    if !x.is_square() {
        return false;
    }
    let p = x.params();
    if !x.is_n_hermitian(p.herm_index()) {
        return false;
    }
    hermitian_channel_eigs(x).iter().all(|(vals, _)| {
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        vals.iter().all(|&v| v > 1e-12 * scale)
    })
}

/// The unique positive definite square root of a positive definite
/// matrix: channelwise square roots of the eigenvalues.
pub fn pd_sqrt(x: &TMat) -> Result<TMat> {
    if !is_positive_definite(x) {
        return Err(Error::NotPositiveDefinite);
    }
    let p = x.params();
    let dec = eig_hermitian(x)?;
    let u = &dec.u.x1;
    let n = p.herm_index();
    let size = x.rows();
    // U · Λ^{1/2} · U^{H} with Λ^{1/2} the channelwise roots
    let mut lam_root = TMat::zeros(p, size, size);
    for (i, lam) in dec.lambdas.iter().enumerate() {
        let root = lam.x1.sqrt(p);
        debug_assert!(root.x2.max_abs() <= 1e-12 * root.max_abs().max(1.0));
        lam_root.set(i, i, root.x1);
    }
    u.mul(&lam_root)?.mul(&u.hermitian(n))
}

/// Largest-two channel-eigenvalue gap check for the dominance assumption.
fn dominance_near_degenerate(x: &TMat) -> bool {
    hermitian_channel_eigs(x).iter().any(|(vals, _)| {
        if vals.len() < 2 {
            return false;
        }
        let top = vals[0].abs();
        let second = vals[1].abs();
        top > 0.0 && (top - second).abs() <= 1e-8 * top
    })
}

/// Power method on an n-Hermitian matrix: iterate
/// `x_m = X·x_{m−1} / |X·x_{m−1}|ₙ` and report the Rayleigh value
/// `x_m^{H} X x_m`, recomputed every iteration into `trace`.
///
/// Terminates when every component of the Rayleigh value changes by less
/// than `tol`, or after `max_iter` iterations.
pub fn power_method(x: &TMat, x0: &TVec, max_iter: usize, tol: f64) -> Result<PowerMethod> {
    let p = x.params();
    let n = p.herm_index();
    if !x.is_n_hermitian(n) {
        return Err(Error::NotHermitian { n });
    }
    debug_assert_eq!(x0.cols(), 1);
    debug_assert_eq!(x0.rows(), x.rows());

    let zero_div = |i: usize, e: Error| match e {
        Error::ZeroDivisor { channel, .. } => Error::ZeroDivisor {
            channel,
            context: Some(format!("power iteration {i}")),
        },
        other => other,
    };

    // normalize the seed to unit modulus
    let m0 = x0.modulus_vec(n);
    let mut xv = x0.scale_tess(&m0.inverse(p).map_err(|e| zero_div(0, e))?);

    let mut trace: Vec<Tessarine> = Vec::new();
    let mut iters = 0usize;
    for m in 1..=max_iter {
        let y = x.mul(&xv)?;
        let modulus = y.modulus_vec(n);
        let inv = modulus.inverse(p).map_err(|e| zero_div(m, e))?;
        xv = y.scale_tess(&inv);
        let ray = xv.hermitian(n).mul(&x.mul(&xv)?)?.entry(0, 0);
        trace.push(ray);
        iters = m;
        if m >= 2 {
            let prev = trace[m - 2];
            if (ray - prev).max_abs() < tol {
                break;
            }
        }
    }

    Ok(PowerMethod {
        lambda: *trace.last().expect("max_iter >= 1"),
        x: xv,
        iters,
        near_degenerate: dominance_near_degenerate(x),
        trace,
    })
}

/// SVD via channelwise kernels. `perms` optionally reorders the singular
/// triples per channel (2 lists for `alpha < 0`, 4 for `alpha > 0`);
/// default is the canonical nonincreasing order in every channel.
pub fn svd(x: &TMat, perms: Option<&[Vec<usize>]>) -> Result<SvdDecomp> {
    let p = x.params();
    let expect = p.channel_count();
    if let Some(ps) = perms {
        if ps.len() != expect {
            return Err(Error::BadPermutation {
                reason: format!("expected {expect} permutation lists, got {}", ps.len()),
            });
        }
    }
    let (xs, xd) = x.split();
    let (ps_s, ps_d) = match perms {
        None => (None, None),
        Some(ps) if p.is_split() => (Some(ps[0..2].to_vec()), Some(ps[2..4].to_vec())),
        Some(ps) => (Some(ps[0..1].to_vec()), Some(ps[1..2].to_vec())),
    };
    let fs = ca_svd(&xs, ps_s.as_deref())?;
    let fd = ca_svd(&xd, ps_d.as_deref())?;

    let u = TMat::join(&fs.u, &fd.u, p)?;
    let v = TMat::join(&fs.v, &fd.v, p)?;
    let mut sigma_channels = fs.sigma_channels.clone();
    sigma_channels.extend(fd.sigma_channels.iter().cloned());

    let r = x.rows().min(x.cols());
    let sigmas: Vec<Tessarine> = (0..r)
        .map(|i| {
            if p.is_split() {
                Tessarine::from_channels(
                    &ChannelSet::FourReal {
                        ch: [
                            sigma_channels[0][i],
                            sigma_channels[1][i],
                            sigma_channels[2][i],
                            sigma_channels[3][i],
                        ],
                    },
                    p,
                )
                .expect("regime fixed")
            } else {
                Tessarine::from_channels(
                    &ChannelSet::TwoComplex {
                        s: C::new(sigma_channels[0][i], 0.0),
                        d: C::new(sigma_channels[1][i], 0.0),
                    },
                    p,
                )
                .expect("regime fixed")
            }
        })
        .collect();

    Ok(SvdDecomp {
        u,
        v,
        sigmas,
        sigma_channels,
    })
}

/// Canonical singular values as tessarines (channelwise, index-aligned).
pub fn singular_values(x: &TMat) -> Vec<Tessarine> {
    svd(x, None).expect("default perms").sigmas
}

fn sigma_max(sigma_channels: &[Vec<f64>]) -> f64 {
    sigma_channels
        .iter()
        .filter_map(|v| v.first())
        .fold(0.0f64, |m, &v| m.max(v))
}

/// Rank: the maximum over channels of the count of singular values above
/// `1e-10·σ_max`.
pub fn rank(x: &TMat) -> usize {
    let dec = svd(x, None).expect("default perms");
    let smax = sigma_max(&dec.sigma_channels);
    if smax == 0.0 {
        return 0;
    }
    dec.sigma_channels
        .iter()
        .map(|ch| ch.iter().filter(|&&s| s > 1e-10 * smax).count())
        .max()
        .unwrap_or(0)
}

fn truncated_from(dec: &SvdDecomp, p: Params, k: usize) -> Result<TMat> {
    let n_herm = p.herm_index();
    let uk = leading_columns(&dec.u, k);
    let vk = leading_columns(&dec.v, k);
    // U_k · (Σ_k V_k^{H})
    let vkh = vk.hermitian(n_herm);
    let svh = TMat::from_fn(p, k, vkh.cols(), |i, j| {
        dec.sigmas[i].mul(&vkh.entry(i, j), p)
    });
    uk.mul(&svh)
}

fn leading_columns(x: &TMat, k: usize) -> TMat {
    TMat::from_fn(x.params(), x.rows(), k, |i, j| x.entry(i, j))
}

/// Best rank-k approximation: the truncated canonical SVD sum
/// `X_k = Σ_{i≤k} σ_i u(i) v^{H}(i)`.
pub fn rank_k_approx(x: &TMat, k: usize) -> Result<TMat> {
    let dec = svd(x, None)?;
    let smax = sigma_max(&dec.sigma_channels);
    let r = if smax == 0.0 {
        0
    } else {
        dec.sigma_channels
            .iter()
            .map(|ch| ch.iter().filter(|&&s| s > 1e-10 * smax).count())
            .max()
            .unwrap_or(0)
    };
    if k < 1 || k > r {
        return Err(Error::KOutOfRange { k, r });
    }
    truncated_from(&dec, x.params(), k)
}

/// Truncation of an arbitrary (possibly permuted) SVD; lets callers
/// compare non-canonical decompositions against the canonical one.
pub fn truncate_svd(dec: &SvdDecomp, p: Params, k: usize) -> Result<TMat> {
    if k < 1 || k > dec.sigmas.len() {
        return Err(Error::KOutOfRange {
            k,
            r: dec.sigmas.len(),
        });
    }
    truncated_from(dec, p, k)
}

/// Moore-Penrose pseudoinverse `P = V Q U^{H}` with `Q` the channelwise
/// pseudoinverse of `Σ` (reciprocals above the rank cutoff, zero below).
pub fn pseudoinverse(x: &TMat) -> TMat {
    let p = x.params();
    let dec = svd(x, None).expect("default perms");
    let smax = sigma_max(&dec.sigma_channels);
    let cutoff = 1e-10 * smax;
    let (rows, cols) = (x.rows(), x.cols());
    let r = rows.min(cols);

    let recip = |s: f64| {
        if smax > 0.0 && s > cutoff {
            1.0 / s
        } else {
            0.0
        }
    };
    let q = if p.is_split() {
        let planes: Vec<Mat<f64>> = (0..4)
            .map(|n| {
                Mat::from_fn(cols, rows, |i, j| {
                    if i == j && i < r {
                        recip(dec.sigma_channels[n][i])
                    } else {
                        0.0
                    }
                })
            })
            .collect();
        TMat::from_real_channels([&planes[0], &planes[1], &planes[2], &planes[3]], p)
    } else {
        let planes: Vec<Mat<C>> = (0..2)
            .map(|n| {
                Mat::from_fn(cols, rows, |i, j| {
                    if i == j && i < r {
                        C::new(recip(dec.sigma_channels[n][i]), 0.0)
                    } else {
                        C::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        TMat::from_complex_channels([&planes[0], &planes[1]], p)
    };

    let n_herm = p.herm_index();
    dec.v
        .mul(&q)
        .and_then(|vq| vq.mul(&dec.u.hermitian(n_herm)))
        .expect("shapes by construction")
}
