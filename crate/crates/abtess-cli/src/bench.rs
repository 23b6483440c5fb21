//! Benchmark harness for the fixed-point Toeplitz projection: the
//! normal-equation (inverse) method, the pseudoinverse method, and the
//! sequential recursion, timed at a grid of problem sizes on one
//! deterministic instance.

use std::time::{Duration, Instant};

use abtess::leastsq::{
    fixed_point_projection, lstsq_normal, lstsq_pinv, toeplitz_gram, LevinsonTrace,
};
use abtess::num_complex::Complex64;
use abtess::{ChannelSet, Params, TMat, Tessarine};
use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hard cap on the instance size.
pub const SIZE_GUARD: usize = 500;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub p_max: usize,
    pub step: usize,
    pub repeats: usize,
    pub seed: u64,
    pub params: Params,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub i: usize,
    pub t_inverse: Duration,
    pub t_pinv: Duration,
    pub t_sequential: Duration,
    /// Worst per-entry deviation among the three coefficient vectors;
    /// deterministic for a fixed seed.
    pub max_dev: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// CSV with the time columns in seconds.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,t_inverse,t_pinv,t_sequential\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.9},{:.9},{:.9}\n",
                row.i,
                row.t_inverse.as_secs_f64(),
                row.t_pinv.as_secs_f64(),
                row.t_sequential.as_secs_f64()
            ));
        }
        out
    }
}

/// Deterministic channelwise circulant design matrix; its Gram is an
/// n-Hermitian Toeplitz matrix with positive definite channels.
pub fn circulant_instance(params: Params, size: usize, seed: u64) -> TMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kernel_len = 4.min(size);
    let kernels: Vec<Vec<f64>> = (0..4)
        .map(|_| {
            let mut k: Vec<f64> = (0..kernel_len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            k[0] += 3.0;
            k
        })
        .collect();
    TMat::from_fn(params, size, size, |i, j| {
        let off = (i + size - j) % size;
        if off >= kernel_len {
            return Tessarine::ZERO;
        }
        let ch = if params.is_split() {
            ChannelSet::FourReal {
                ch: [
                    kernels[0][off],
                    kernels[1][off],
                    kernels[2][off],
                    kernels[3][off],
                ],
            }
        } else {
            ChannelSet::TwoComplex {
                s: Complex64::new(kernels[0][off], kernels[1][off]),
                d: Complex64::new(kernels[2][off], kernels[3][off]),
            }
        };
        Tessarine::from_channels(&ch, params).unwrap()
    })
}

fn columns(x: &TMat, from: usize, count: usize) -> TMat {
    TMat::from_fn(x.params(), x.rows(), count, |i, j| x.entry(i, j + from))
}

fn column(x: &TMat, idx: usize) -> TMat {
    columns(x, idx, 1)
}

fn worst_dev(a: &[Tessarine], b: &[Tessarine]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).max_abs())
        .fold(0.0, f64::max)
}

/// Run the three-method comparison. Every sampled size solves the
/// fixed-point projection of `x(1)` onto the span of `x(2..i)`.
pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.p_max > SIZE_GUARD {
        bail!("p_max {} exceeds the size guard {SIZE_GUARD}", cfg.p_max);
    }
    if cfg.step < 2 || cfg.p_max < cfg.step {
        bail!("need step >= 2 and p_max >= step");
    }
    if cfg.repeats == 0 {
        bail!("repeats must be positive");
    }
    let x = circulant_instance(cfg.params, cfg.p_max, cfg.seed);
    let (_gram, pi) = toeplitz_gram(&x)?;
    let target = column(&x, 0);

    let grid: Vec<usize> = (cfg.step..=cfg.p_max).step_by(cfg.step).collect();

    // sequential per-stage times: one full pass per repeat, timing each
    // incremental extension; keep the minimum per stage
    let mut stage_time = vec![Duration::MAX; cfg.p_max];
    let mut seq_results: Vec<Vec<Tessarine>> = Vec::new();
    for rep in 0..cfg.repeats {
        let mut trace = LevinsonTrace::new(&pi, cfg.params);
        let mut results = Vec::new();
        for i in 2..=cfg.p_max {
            // stage i−1 enables the fixed-point projection at index i
            let t0 = Instant::now();
            if trace.stages.len() < i - 1 {
                trace.extend_stage()?;
            }
            let (g, _eps2) = fixed_point_projection(&trace, i)?;
            let dt = t0.elapsed();
            stage_time[i - 1] = stage_time[i - 1].min(dt);
            if rep == 0 && grid.contains(&i) {
                results.push(g);
            }
        }
        if rep == 0 {
            seq_results = results;
        }
    }

    let mut rows = Vec::with_capacity(grid.len());
    for (gi, &i) in grid.iter().enumerate() {
        let design = columns(&x, 1, i - 1);

        let mut t_inv = Duration::MAX;
        let mut h_inv = Vec::new();
        for _ in 0..cfg.repeats {
            let t0 = Instant::now();
            let sol = lstsq_normal(&design, &target)?;
            t_inv = t_inv.min(t0.elapsed());
            h_inv = (0..i - 1).map(|j| sol.h.entry(j, 0)).collect();
        }

        let mut t_pinv = Duration::MAX;
        let mut h_pinv = Vec::new();
        for _ in 0..cfg.repeats {
            let t0 = Instant::now();
            let sol = lstsq_pinv(&design, &target)?;
            t_pinv = t_pinv.min(t0.elapsed());
            h_pinv = (0..i - 1).map(|j| sol.h.entry(j, 0)).collect();
        }

        let h_seq = &seq_results[gi];
        let max_dev = worst_dev(&h_inv, h_seq).max(worst_dev(&h_pinv, h_seq));
        rows.push(BenchRow {
            i,
            t_inverse: t_inv,
            t_pinv,
            t_sequential: stage_time[i - 1],
            max_dev,
        });
    }
    Ok(BenchReport { rows })
}
