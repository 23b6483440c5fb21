//! Image ↔ tessarine encoding, the PSNR metric, and the watermarking
//! pipeline.
//!
//! RGB pixels map to pure-imaginary elements: `b = R`, `c = G`, `d = B`,
//! `a = 0`. The placement mirrors common hypercomplex color-image
//! practice and keeps the real plane free; reported PSNR values depend
//! on this choice.

use abtess::spectral::{svd, truncate_svd};
use abtess::{Params, TMat, Tessarine};
use anyhow::{bail, Context, Result};
use image::RgbImage;

/// Float RGB planes, row-major.
#[derive(Debug, Clone)]
pub struct Planes {
    pub width: u32,
    pub height: u32,
    pub r: Vec<f64>,
    pub g: Vec<f64>,
    pub b: Vec<f64>,
}

impl Planes {
    pub fn from_image(img: &RgbImage) -> Planes {
        let (width, height) = img.dimensions();
        let n = (width * height) as usize;
        let mut r = Vec::with_capacity(n);
        let mut g = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for px in img.pixels() {
            r.push(px.0[0] as f64);
            g.push(px.0[1] as f64);
            b.push(px.0[2] as f64);
        }
        Planes {
            width,
            height,
            r,
            g,
            b,
        }
    }

    fn zip_with(&self, other: &Planes, f: impl Fn(f64, f64) -> f64) -> Planes {
        Planes {
            width: self.width,
            height: self.height,
            r: self
                .r
                .iter()
                .zip(&other.r)
                .map(|(&x, &y)| f(x, y))
                .collect(),
            g: self
                .g
                .iter()
                .zip(&other.g)
                .map(|(&x, &y)| f(x, y))
                .collect(),
            b: self
                .b
                .iter()
                .zip(&other.b)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        }
    }
}

/// Encode RGB planes as a tessarine matrix (`rows = height`,
/// `cols = width`).
pub fn planes_to_tmat(planes: &Planes, params: Params) -> TMat {
    let (h, w) = (planes.height as usize, planes.width as usize);
    TMat::from_planes(
        params,
        h,
        w,
        vec![0.0; h * w],
        planes.r.clone(),
        planes.g.clone(),
        planes.b.clone(),
    )
    .expect("congruent planes")
}

pub fn image_to_tmat(img: &RgbImage, params: Params) -> TMat {
    planes_to_tmat(&Planes::from_image(img), params)
}

/// Decode the i, j, k planes back to RGB float planes (the real plane is
/// dropped).
pub fn tmat_to_planes(x: &TMat) -> Planes {
    let (h, w) = (x.rows(), x.cols());
    let mut planes = Planes {
        width: w as u32,
        height: h as u32,
        r: Vec::with_capacity(h * w),
        g: Vec::with_capacity(h * w),
        b: Vec::with_capacity(h * w),
    };
    for i in 0..h {
        for j in 0..w {
            let t = x.entry(i, j);
            planes.r.push(t.b);
            planes.g.push(t.c);
            planes.b.push(t.d);
        }
    }
    planes
}

/// Render float planes as an 8-bit image: clamp to `[0, 255]`, round
/// half to even.
pub fn planes_to_image(planes: &Planes) -> RgbImage {
    let quantize = |v: f64| -> u8 { v.clamp(0.0, 255.0).round_ties_even() as u8 };
    let mut img = RgbImage::new(planes.width, planes.height);
    for (idx, px) in img.pixels_mut().enumerate() {
        px.0 = [
            quantize(planes.r[idx]),
            quantize(planes.g[idx]),
            quantize(planes.b[idx]),
        ];
    }
    img
}

pub fn tmat_to_image(x: &TMat) -> RgbImage {
    planes_to_image(&tmat_to_planes(x))
}

/// Peak signal-to-noise ratio in dB:
/// `10·log₁₀(255² / ((MSE_R + MSE_G + MSE_B)/3))`; infinite for
/// identical inputs.
pub fn psnr_planes(a: &Planes, b: &Planes) -> Result<f64> {
    if (a.width, a.height) != (b.width, b.height) {
        bail!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.width,
            a.height,
            b.width,
            b.height
        );
    }
    let mse = |x: &[f64], y: &[f64]| -> f64 {
        x.iter()
            .zip(y)
            .map(|(&u, &v)| (u - v) * (u - v))
            .sum::<f64>()
            / x.len() as f64
    };
    let mean_mse = (mse(&a.r, &b.r) + mse(&a.g, &b.g) + mse(&a.b, &b.b)) / 3.0;
    if mean_mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0_f64.powi(2) / mean_mse).log10())
}

pub fn psnr_images(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    psnr_planes(&Planes::from_image(a), &Planes::from_image(b))
}

/// Watermark embedding strength and truncation ranks.
#[derive(Debug, Clone)]
pub struct WatermarkConfig {
    pub mu: f64,
    pub k_values: Vec<usize>,
}

impl WatermarkConfig {
    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            bail!("embedding strength mu must lie in (0, 1], got {}", self.mu);
        }
        let r = rows.min(cols);
        for &k in &self.k_values {
            if k == 0 || k > r {
                bail!("k = {k} out of range 1..={r}");
            }
        }
        Ok(())
    }
}

/// One (k) row of the watermark report.
#[derive(Debug, Clone)]
pub struct WatermarkCell {
    pub k: usize,
    pub psnr_host: f64,
    pub psnr_mark: f64,
}

#[derive(Debug, Clone)]
pub struct WatermarkReport {
    pub mu: f64,
    pub cells: Vec<WatermarkCell>,
}

/// Watermarked host `A_B = A + μ·B`, untruncated (float planes).
pub fn embed(host: &Planes, mark: &Planes, mu: f64) -> Result<Planes> {
    if (host.width, host.height) != (mark.width, mark.height) {
        bail!("host and mark dimensions differ");
    }
    Ok(host.zip_with(mark, |a, b| a + mu * b))
}

/// Rank-k reconstruction of the encoded watermarked host and the residual
/// watermark estimate `B̂ = (A_B − Â)/μ`.
pub fn extract(
    watermarked: &Planes,
    mu: f64,
    k: usize,
    params: Params,
) -> Result<(Planes, Planes)> {
    let x = planes_to_tmat(watermarked, params);
    let ahat = abtess::spectral::rank_k_approx(&x, k).context("rank-k truncation")?;
    let ahat_planes = tmat_to_planes(&ahat);
    let mark = watermarked.zip_with(&ahat_planes, |ab, a| (ab - a) / mu);
    Ok((ahat_planes, mark))
}

/// Full demonstration: build `A_B`, truncate its encoding at each rank in
/// `cfg.k_values` (one SVD, several truncations), and report
/// `PSNR(A, Â)` and `PSNR(B, B̂)` per rank. PSNR is evaluated on the
/// unclamped float reconstructions.
pub fn watermark_pipeline(
    host: &Planes,
    mark: &Planes,
    cfg: &WatermarkConfig,
    params: Params,
) -> Result<WatermarkReport> {
    cfg.validate(host.height as usize, host.width as usize)?;
    let ab = embed(host, mark, cfg.mu)?;
    let x = planes_to_tmat(&ab, params);
    let dec = svd(&x, None).context("channel SVD")?;
    let mut cells = Vec::with_capacity(cfg.k_values.len());
    for &k in &cfg.k_values {
        let ahat = truncate_svd(&dec, params, k).context("truncation")?;
        let ahat_planes = tmat_to_planes(&ahat);
        let bhat = ab.zip_with(&ahat_planes, |abv, av| (abv - av) / cfg.mu);
        cells.push(WatermarkCell {
            k,
            psnr_host: psnr_planes(host, &ahat_planes)?,
            psnr_mark: psnr_planes(mark, &bhat)?,
        });
    }
    Ok(WatermarkReport { mu: cfg.mu, cells })
}

/// Format a PSNR value for reports; identical images print `inf`.
pub fn format_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.4}")
    }
}

/// A 1×1 scalar report helper used by several subcommands.
pub fn scalar_matrix(params: Params, value: Tessarine) -> TMat {
    TMat::from_fn(params, 1, 1, |_, _| value)
}
