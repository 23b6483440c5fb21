//! Matrix transformations: inverse, square root, LU with partial
//! pivoting, and the two determinant routes (permutation sum and
//! LU-with-signature-table).

use crate::camat::{ca_inverse, ca_lu, ca_sqrt};
use crate::error::{Error, Result};
use crate::matrix::{GTMat, TMat};
use crate::params::Params;
use crate::scalar::{ChannelSet, Tessarine};

/// Pivoted LU of a tessarine matrix: `P·X = L·U` with `P` orthogonal
/// (`P^{H}P = I`) but generally not binary, plus the per-channel
/// permutation signatures, ordered `[γ_s, γ_d]` for `alpha < 0` and
/// `[γ_{s1}, γ_{d1}, γ_{s2}, γ_{d2}]` for `alpha > 0`.
#[derive(Debug, Clone)]
pub struct TessLu {
    pub p: TMat,
    pub l: TMat,
    pub u: TMat,
    pub gamma: Vec<i32>,
}

/// Rename a channel-local error tag (`"c"`, `"+"`, `"-"`) from the
/// (α)-complex layer into the global channel name, given which split
/// (`0` = s, `1` = d) was being processed.
fn remap_channel(err: Error, which: usize, params: Params) -> Error {
    let rename = |local: &str| -> String {
        if params.is_split() {
            match (which, local) {
                (0, "+") => "1".to_string(),
                (0, "-") => "2".to_string(),
                (1, "+") => "3".to_string(),
                (1, "-") => "4".to_string(),
                _ => local.to_string(),
            }
        } else if which == 0 {
            "s".to_string()
        } else {
            "d".to_string()
        }
    };
    match err {
        Error::Singular { channel } => Error::Singular {
            channel: rename(&channel),
        },
        Error::NoSquareRoot { channel } => Error::NoSquareRoot {
            channel: rename(&channel),
        },
        other => other,
    }
}

/// Matrix inverse through the channel split: both channel matrices must
/// be invertible, and `X⁻¹ = C + D·j` with `C = (X_s⁻¹ + X_d⁻¹)/2`,
/// `D = (X_s⁻¹ − C)/√β`.
pub fn inverse(x: &TMat) -> Result<TMat> {
    debug_assert!(x.is_square());
    let p = x.params();
    let (xs, xd) = x.split();
    let si = ca_inverse(&xs).map_err(|e| remap_channel(e, 0, p))?;
    let di = ca_inverse(&xd).map_err(|e| remap_channel(e, 1, p))?;
    TMat::join(&si, &di, p)
}

/// Inverse of a generalized matrix (`alpha > 0`), by relabeling the
/// generalized channel pair as `(−1, α)`-tessarine matrices and recursing
/// into [`inverse`].
pub fn g_matrix_inverse(x: &GTMat) -> Result<GTMat> {
    let p = x.params();
    if !p.is_split() {
        return Err(Error::GeneralizedNeedsPositiveAlpha { alpha: p.alpha() });
    }
    debug_assert_eq!(x.rows(), x.cols());
    let (rows, cols) = (x.rows(), x.cols());
    let sb = p.sqrt_beta();
    let equiv_params = Params::new(-1.0, p.alpha()).expect("alpha > 0");

    // j-split at the generalized level; each part lives in the
    // (1, ε, i, εi) span, relabeled as a (−1, α)-tessarine matrix.
    let x3 = TMat::from_planes(
        equiv_params,
        rows,
        cols,
        x.x1.pa.data.clone(),
        x.x2.pa.data.clone(),
        x.x1.pb.data.clone(),
        x.x2.pb.data.clone(),
    )?;
    let x4 = TMat::from_planes(
        equiv_params,
        rows,
        cols,
        x.x1.pc.data.clone(),
        x.x2.pc.data.clone(),
        x.x1.pd.data.clone(),
        x.x2.pd.data.clone(),
    )?;
    let xs = x3.add(&x4.scale_real(sb))?;
    let xd = x3.sub(&x4.scale_real(sb))?;

    let si = inverse(&xs).map_err(|e| remap_equiv_channel(e, 0))?;
    let di = inverse(&xd).map_err(|e| remap_equiv_channel(e, 1))?;

    let c = si.add(&di)?.scale_real(0.5);
    let d = si.sub(&di)?.scale_real(0.5 / sb);

    let x1 = TMat::from_planes(
        p,
        rows,
        cols,
        c.pa.data.clone(),
        c.pc.data.clone(),
        d.pa.data.clone(),
        d.pc.data.clone(),
    )?;
    let x2 = TMat::from_planes(
        p,
        rows,
        cols,
        c.pb.data.clone(),
        c.pd.data.clone(),
        d.pb.data.clone(),
        d.pd.data.clone(),
    )?;
    Ok(GTMat { x1, x2 })
}

/// The inner `(−1, α)` inversion reports channels `s`/`d`; those are the
/// outer channels 1/2 (from `X_s`) or 3/4 (from `X_d`).
fn remap_equiv_channel(err: Error, which: usize) -> Error {
    match err {
        Error::Singular { channel } => {
            let global = match (which, channel.as_str()) {
                (0, "s") => "1",
                (0, "d") => "2",
                (1, "s") => "3",
                (1, "d") => "4",
                _ => return Error::Singular { channel },
            };
            Error::Singular {
                channel: global.to_string(),
            }
        }
        other => other,
    }
}

/// Principal matrix square root via the channel split. The result is
/// generalized; its `ε` part is exactly zero when `alpha < 0`.
pub fn sqrt(x: &TMat) -> Result<GTMat> {
    debug_assert!(x.is_square());
    let p = x.params();
    let (xs, xd) = x.split();
    let rs = ca_sqrt(&xs).map_err(|e| remap_channel(e, 0, p))?;
    let rd = ca_sqrt(&xd).map_err(|e| remap_channel(e, 1, p))?;
    Ok(GTMat::from_cagmat_split(&rs, &rd, p))
}

/// LU with partial pivoting via channelwise factorization.
pub fn lu_pp(x: &TMat) -> TessLu {
    debug_assert!(x.is_square());
    let p = x.params();
    let (xs, xd) = x.split();
    let fs = ca_lu(&xs);
    let fd = ca_lu(&xd);
    let mut gamma = fs.gammas.clone();
    gamma.extend_from_slice(&fd.gammas);
    TessLu {
        p: TMat::join(&fs.p, &fd.p, p).expect("congruent channels"),
        l: TMat::join(&fs.l, &fd.l, p).expect("congruent channels"),
        u: TMat::join(&fs.u, &fd.u, p).expect("congruent channels"),
        gamma,
    }
}

/// Brute-force permutation-sum determinant; test oracle, guarded at
/// `p ≤ 8`.
pub fn det_permutation(x: &TMat) -> Result<Tessarine> {
    debug_assert!(x.is_square());
    let n = x.rows();
    if n > 8 {
        return Err(Error::DimensionGuard { max: 8, got: n });
    }
    if n == 0 {
        return Ok(Tessarine::ONE);
    }
    let p = x.params();
    // Heap's algorithm; every swap flips the permutation sign.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1.0f64;
    let mut acc = Tessarine::ZERO;

    let term = |perm: &[usize], sign: f64| -> Tessarine {
        let mut prod = Tessarine::ONE;
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&x.entry(i, j), p);
        }
        prod.scale(sign)
    };

    acc = acc + term(&perm, sign);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            acc = acc + term(&perm, sign);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(acc)
}

/// Determinant of the LU permutation factor `P` as a function of the
/// channel signatures: the element whose channel values are the
/// signatures themselves.
pub fn det_p_from_signatures(gamma: &[i32], p: Params) -> Result<Tessarine> {
    let expected = p.channel_count();
    if gamma.len() != expected || gamma.iter().any(|&g| g != 1 && g != -1) {
        return Err(Error::BadSignature {
            expected,
            got: gamma.to_vec(),
        });
    }
    let ch = if p.is_split() {
        ChannelSet::FourReal {
            ch: [
                gamma[0] as f64,
                gamma[1] as f64,
                gamma[2] as f64,
                gamma[3] as f64,
            ],
        }
    } else {
        ChannelSet::TwoComplex {
            s: num_complex::Complex64::new(gamma[0] as f64, 0.0),
            d: num_complex::Complex64::new(gamma[1] as f64, 0.0),
        }
    };
    Tessarine::from_channels(&ch, p)
}

/// Determinant through the pivoted LU route:
/// `det(X) = det(P) · ∏ u_{i,i}`.
pub fn det_lu(x: &TMat) -> Tessarine {
    let p = x.params();
    let f = lu_pp(x);
    let mut det = det_p_from_signatures(&f.gamma, p).expect("signatures are ±1 by construction");
    for i in 0..x.rows() {
        det = det.mul(&f.u.entry(i, i), p);
    }
    det
}
