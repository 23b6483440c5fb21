use num_complex::Complex64;

use crate::camat::{CAGMat, CAMat};
use crate::dense::Mat;
use crate::error::{Error, Result};
use crate::gscalar::GTessarine;
use crate::params::Params;
use crate::scalar::{Axis, ChannelSet, Tessarine};

type C = Complex64;

/// Dense matrix over tessarines, stored as four parallel real component
/// planes (`X = A + B·i + C·j + D·k`) with the algebra parameters
/// attached.
#[derive(Debug, Clone, PartialEq)]
pub struct TMat {
    params: Params,
    rows: usize,
    cols: usize,
    pub(crate) pa: Mat<f64>,
    pub(crate) pb: Mat<f64>,
    pub(crate) pc: Mat<f64>,
    pub(crate) pd: Mat<f64>,
}

/// Column vectors are `p×1` matrices.
pub type TVec = TMat;

/// Generalized tessarine matrix `X = X₁ + X₂·ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct GTMat {
    pub x1: TMat,
    pub x2: TMat,
}

impl TMat {
    pub fn zeros(params: Params, rows: usize, cols: usize) -> Self {
        TMat {
            params,
            rows,
            cols,
            pa: Mat::zeros(rows, cols),
            pb: Mat::zeros(rows, cols),
            pc: Mat::zeros(rows, cols),
            pd: Mat::zeros(rows, cols),
        }
    }

    pub fn identity(params: Params, n: usize) -> Self {
        let mut m = TMat::zeros(params, n, n);
        for i in 0..n {
            m.pa[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(
        params: Params,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Tessarine,
    ) -> Self {
        let mut m = TMat::zeros(params, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_planes(
        params: Params,
        rows: usize,
        cols: usize,
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
        d: Vec<f64>,
    ) -> Result<Self> {
        let len = rows * cols;
        if a.len() != len || b.len() != len || c.len() != len || d.len() != len {
            return Err(Error::ShapeMismatch {
                left: format!("{rows}x{cols}"),
                right: format!(
                    "planes of lengths {}, {}, {}, {}",
                    a.len(),
                    b.len(),
                    c.len(),
                    d.len()
                ),
            });
        }
        Ok(TMat {
            params,
            rows,
            cols,
            pa: Mat {
                rows,
                cols,
                data: a,
            },
            pb: Mat {
                rows,
                cols,
                data: b,
            },
            pc: Mat {
                rows,
                cols,
                data: c,
            },
            pd: Mat {
                rows,
                cols,
                data: d,
            },
        })
    }

    pub fn column_vector(params: Params, entries: &[Tessarine]) -> TVec {
        TMat::from_fn(params, entries.len(), 1, |i, _| entries[i])
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Tessarine {
        Tessarine::new(
            self.pa[(i, j)],
            self.pb[(i, j)],
            self.pc[(i, j)],
            self.pd[(i, j)],
        )
    }

    pub fn set(&mut self, i: usize, j: usize, x: Tessarine) {
        self.pa[(i, j)] = x.a;
        self.pb[(i, j)] = x.b;
        self.pc[(i, j)] = x.c;
        self.pd[(i, j)] = x.d;
    }

    pub fn max_abs(&self) -> f64 {
        self.pa
            .max_abs()
            .max(self.pb.max_abs())
            .max(self.pc.max_abs())
            .max(self.pd.max_abs())
    }

    fn check_same_shape(&self, other: &TMat) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TMat) -> Result<TMat> {
        self.check_same_shape(other)?;
        Ok(TMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            pa: self.pa.add(&other.pa),
            pb: self.pb.add(&other.pb),
            pc: self.pc.add(&other.pc),
            pd: self.pd.add(&other.pd),
        })
    }

    pub fn sub(&self, other: &TMat) -> Result<TMat> {
        self.check_same_shape(other)?;
        Ok(TMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            pa: self.pa.sub(&other.pa),
            pb: self.pb.sub(&other.pb),
            pc: self.pc.sub(&other.pc),
            pd: self.pd.sub(&other.pd),
        })
    }

    pub fn neg(&self) -> TMat {
        self.scale_real(-1.0)
    }

    pub fn scale_real(&self, f: f64) -> TMat {
        TMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            pa: self.pa.scale(f),
            pb: self.pb.scale(f),
            pc: self.pc.scale(f),
            pd: self.pd.scale(f),
        }
    }

    /// Scalar multiple `x·Y` (tessarine scalar times matrix).
    pub fn scale_tess(&self, x: &Tessarine) -> TMat {
        let p = self.params;
        TMat::from_fn(p, self.rows, self.cols, |i, j| x.mul(&self.entry(i, j), p))
    }

    /// Matrix product, composed from the component planes:
    /// 16 real matrix products per the multiplication table.
    pub fn mul(&self, other: &TMat) -> Result<TMat> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let (al, be) = (self.params.alpha(), self.params.beta());
        let (xa, xb, xc, xd) = (&self.pa, &self.pb, &self.pc, &self.pd);
        let (ya, yb, yc, yd) = (&other.pa, &other.pb, &other.pc, &other.pd);
        let a = xa
            .matmul(ya)
            .add(&xb.matmul(yb).scale(al))
            .add(&xc.matmul(yc).scale(be))
            .add(&xd.matmul(yd).scale(al * be));
        let b = xa
            .matmul(yb)
            .add(&xb.matmul(ya))
            .add(&xc.matmul(yd).add(&xd.matmul(yc)).scale(be));
        let c = xa
            .matmul(yc)
            .add(&xc.matmul(ya))
            .add(&xb.matmul(yd).add(&xd.matmul(yb)).scale(al));
        let d = xa
            .matmul(yd)
            .add(&xd.matmul(ya))
            .add(&xb.matmul(yc))
            .add(&xc.matmul(yb));
        Ok(TMat {
            params: self.params,
            rows: self.rows,
            cols: other.cols,
            pa: a,
            pb: b,
            pc: c,
            pd: d,
        })
    }

    pub fn transpose(&self) -> TMat {
        TMat {
            params: self.params,
            rows: self.cols,
            cols: self.rows,
            pa: self.pa.transpose(),
            pb: self.pb.transpose(),
            pc: self.pc.transpose(),
            pd: self.pd.transpose(),
        }
    }

    /// Entrywise conjugation `X^ν`.
    pub fn conj_axis(&self, axis: Axis) -> TMat {
        let (sb, sc, sd) = match axis {
            Axis::I => (1.0, -1.0, -1.0),
            Axis::J => (-1.0, 1.0, -1.0),
            Axis::K => (-1.0, -1.0, 1.0),
        };
        TMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            pa: self.pa.clone(),
            pb: self.pb.scale(sb),
            pc: self.pc.scale(sc),
            pd: self.pd.scale(sd),
        }
    }

    /// Entrywise `X^(θ,τ)`.
    pub fn theta_tau(&self, theta: f64, tau: f64) -> Result<TMat> {
        if theta == 0.0 || !theta.is_finite() || tau <= 0.0 || !tau.is_finite() {
            return Err(Error::BadThetaTau { theta, tau });
        }
        Ok(TMat {
            params: self.params,
            rows: self.rows,
            cols: self.cols,
            pa: self.pa.clone(),
            pb: self.pb.scale(1.0 / theta),
            pc: self.pc.scale(1.0 / tau),
            pd: self.pd.scale(1.0 / (tau * theta)),
        })
    }

    /// Hermitian transpose `X^{H_{3−2n}¹}`: plain transpose for `n = 1`,
    /// transpose with i and k parts negated for `n = 2`.
    pub fn hermitian(&self, n: u8) -> TMat {
        debug_assert!(n == 1 || n == 2);
        let sign = if n == 1 { 1.0 } else { -1.0 };
        TMat {
            params: self.params,
            rows: self.cols,
            cols: self.rows,
            pa: self.pa.transpose(),
            pb: self.pb.transpose().scale(sign),
            pc: self.pc.transpose(),
            pd: self.pd.transpose().scale(sign),
        }
    }

    /// Hermitian transpose with `n` chosen by the regime.
    pub fn regime_hermitian(&self) -> TMat {
        self.hermitian(self.params.herm_index())
    }

    pub fn is_n_hermitian(&self, n: u8) -> bool {
        if !self.is_square() {
            return false;
        }
        let tol = 1e-12 * self.max_abs().max(1.0);
        self.sub(&self.hermitian(n))
            .map(|diff| diff.max_abs() <= tol)
            .unwrap_or(false)
    }

    /// Idempotent-channel split `X = X_s·w₁ + X_d·w₂` as a pair of
    /// (α)-complex matrices `X_s = X_a + √β·X_b`, `X_d = X_a − √β·X_b`.
    pub fn split(&self) -> (CAMat, CAMat) {
        let sb = self.params.sqrt_beta();
        let al = self.params.alpha();
        let xs = CAMat::from_planes(
            al,
            self.pa.add(&self.pc.scale(sb)),
            self.pb.add(&self.pd.scale(sb)),
        );
        let xd = CAMat::from_planes(
            al,
            self.pa.sub(&self.pc.scale(sb)),
            self.pb.sub(&self.pd.scale(sb)),
        );
        (xs, xd)
    }

    /// Inverse of [`TMat::split`].
    pub fn join(xs: &CAMat, xd: &CAMat, params: Params) -> Result<TMat> {
        if (xs.rows, xs.cols) != (xd.rows, xd.cols) {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", xs.rows, xs.cols),
                right: format!("{}x{}", xd.rows, xd.cols),
            });
        }
        let sb = params.sqrt_beta();
        let a = xs.re.add(&xd.re).scale(0.5);
        let b = xs.im.add(&xd.im).scale(0.5);
        let c = xs.re.sub(&xd.re).scale(0.5 / sb);
        let d = xs.im.sub(&xd.im).scale(0.5 / sb);
        Ok(TMat {
            params,
            rows: xs.rows,
            cols: xs.cols,
            pa: a,
            pb: b,
            pc: c,
            pd: d,
        })
    }

    /// The two rescaled complex channel matrices (`alpha < 0`).
    pub(crate) fn complex_channels(&self) -> [Mat<C>; 2] {
        debug_assert!(!self.params.is_split());
        let (xs, xd) = self.split();
        [xs.scaled_complex(), xd.scaled_complex()]
    }

    pub(crate) fn from_complex_channels(ch: [&Mat<C>; 2], params: Params) -> TMat {
        let xs = CAMat::from_scaled_complex(params.alpha(), ch[0]);
        let xd = CAMat::from_scaled_complex(params.alpha(), ch[1]);
        TMat::join(&xs, &xd, params).expect("congruent channels")
    }

    /// The four real channel matrices (`alpha > 0`).
    pub(crate) fn real_channels(&self) -> [Mat<f64>; 4] {
        debug_assert!(self.params.is_split());
        let (xs, xd) = self.split();
        let (a1, a2) = xs.real_splits();
        let (a3, a4) = xd.real_splits();
        [a1, a2, a3, a4]
    }

    pub(crate) fn from_real_channels(ch: [&Mat<f64>; 4], params: Params) -> TMat {
        let xs = CAMat::from_real_splits(params.alpha(), ch[0], ch[1]);
        let xd = CAMat::from_real_splits(params.alpha(), ch[2], ch[3]);
        TMat::join(&xs, &xd, params).expect("congruent channels")
    }

    pub fn trace(&self) -> Tessarine {
        let mut acc = Tessarine::ZERO;
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.entry(i, i);
        }
        acc
    }

    /// `⟨X, Y⟩ₙ = trace(X^{H_{3−2n}¹} Y)`, evaluated as the entrywise sum
    /// of `x_ij^{(3−2n,1)}·y_ij`.
    pub fn inner_product(&self, other: &TMat, n: u8) -> Result<Tessarine> {
        self.check_same_shape(other)?;
        let theta = if n == 1 { 1.0 } else { -1.0 };
        let p = self.params;
        let mut acc = Tessarine::ZERO;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let xc = self
                    .entry(i, j)
                    .theta_tau(theta, 1.0)
                    .expect("theta = ±1 is valid");
                acc = acc + xc.mul(&other.entry(i, j), p);
            }
        }
        Ok(acc)
    }

    /// Non-homogeneous norm `‖X‖ₙ = √Re{⟨X, X⟩ₙ}`.
    pub fn norm(&self, n: u8) -> f64 {
        let ip = self
            .inner_product(self, n)
            .expect("same shape by construction");
        ip.re().max(0.0).sqrt()
    }

    /// Vector modulus `|x|ₙ = (x^{H}x)^{1/2}`: the channelwise square
    /// root of the (channel-nonnegative) scalar `x^{H}x`.
    pub fn modulus_vec(&self, n: u8) -> Tessarine {
        debug_assert_eq!(self.cols, 1, "modulus is defined on column vectors");
        let m = self
            .inner_product(self, n)
            .expect("same shape by construction");
        let p = self.params;
        match m.to_channels(p) {
            ChannelSet::FourReal { ch } => {
                let rooted = ChannelSet::FourReal {
                    ch: [
                        ch[0].max(0.0).sqrt(),
                        ch[1].max(0.0).sqrt(),
                        ch[2].max(0.0).sqrt(),
                        ch[3].max(0.0).sqrt(),
                    ],
                };
                Tessarine::from_channels(&rooted, p).expect("regime fixed")
            }
            ChannelSet::TwoComplex { s, d } => {
                // x^{H₂}x has real nonnegative channels; the imaginary
                // residue is roundoff.
                let rooted = ChannelSet::TwoComplex {
                    s: C::new(s.re.max(0.0).sqrt(), 0.0),
                    d: C::new(d.re.max(0.0).sqrt(), 0.0),
                };
                Tessarine::from_channels(&rooted, p).expect("regime fixed")
            }
        }
    }

    /// Associated tessarine matrix: entrywise [`Tessarine::associated`].
    pub fn associated(&self) -> Result<TMat> {
        let p = self.params;
        let mut out = TMat::zeros(p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).associated(p)?);
            }
        }
        Ok(out)
    }
}

impl GTMat {
    pub fn from_tmat(x: TMat) -> GTMat {
        let zero = TMat::zeros(x.params(), x.rows(), x.cols());
        GTMat { x1: x, x2: zero }
    }

    pub fn params(&self) -> Params {
        self.x1.params()
    }

    pub fn rows(&self) -> usize {
        self.x1.rows()
    }

    pub fn cols(&self) -> usize {
        self.x1.cols()
    }

    pub fn zeros(params: Params, rows: usize, cols: usize) -> GTMat {
        GTMat {
            x1: TMat::zeros(params, rows, cols),
            x2: TMat::zeros(params, rows, cols),
        }
    }

    pub fn identity(params: Params, n: usize) -> GTMat {
        GTMat::from_tmat(TMat::identity(params, n))
    }

    pub fn entry(&self, i: usize, j: usize) -> GTessarine {
        GTessarine::new(self.x1.entry(i, j), self.x2.entry(i, j))
    }

    pub fn max_abs(&self) -> f64 {
        self.x1.max_abs().max(self.x2.max_abs())
    }

    pub fn max_eps_abs(&self) -> f64 {
        self.x2.max_abs()
    }

    /// Collapse to a plain tessarine matrix; fails loudly when the `ε`
    /// part exceeds `1e-10` of the matrix scale.
    pub fn as_tmat(&self) -> Result<TMat> {
        if self.max_eps_abs() <= 1e-10 * self.max_abs().max(1.0) {
            Ok(self.x1.clone())
        } else {
            Err(Error::NonzeroEpsilonPart {
                eps: self.max_eps_abs(),
            })
        }
    }

    pub fn add(&self, other: &GTMat) -> Result<GTMat> {
        Ok(GTMat {
            x1: self.x1.add(&other.x1)?,
            x2: self.x2.add(&other.x2)?,
        })
    }

    pub fn sub(&self, other: &GTMat) -> Result<GTMat> {
        Ok(GTMat {
            x1: self.x1.sub(&other.x1)?,
            x2: self.x2.sub(&other.x2)?,
        })
    }

    /// The four complex channel matrices `ch_n(X₁) + ch_n(X₂)·𝒾`
    /// (`alpha > 0`).
    pub(crate) fn complex_channels(&self) -> [Mat<C>; 4] {
        let r1 = self.x1.real_channels();
        let r2 = self.x2.real_channels();
        std::array::from_fn(|n| {
            Mat::from_fn(self.rows(), self.cols(), |i, j| {
                C::new(r1[n][(i, j)], r2[n][(i, j)])
            })
        })
    }

    pub(crate) fn from_complex_channels(ch: [&Mat<C>; 4], params: Params) -> GTMat {
        let re: [Mat<f64>; 4] = std::array::from_fn(|n| ch[n].re_part());
        let im: [Mat<f64>; 4] = std::array::from_fn(|n| ch[n].im_part());
        GTMat {
            x1: TMat::from_real_channels([&re[0], &re[1], &re[2], &re[3]], params),
            x2: TMat::from_real_channels([&im[0], &im[1], &im[2], &im[3]], params),
        }
    }

    /// Assemble from the generalized channel pair of the `j`-split:
    /// `X = C + D·j` with `C = (S + D̃)/2`, `D = (S − C)/√β`.
    pub(crate) fn from_cagmat_split(s: &CAGMat, d: &CAGMat, params: Params) -> GTMat {
        let sb = params.sqrt_beta();
        let ca1 = s.c1.add(&d.c1).scale(0.5);
        let ca2 = s.c2.add(&d.c2).scale(0.5);
        let cb1 = s.c1.sub(&d.c1).scale(0.5 / sb);
        let cb2 = s.c2.sub(&d.c2).scale(0.5 / sb);
        // X₁ carries the real coefficient planes, X₂ the ε planes.
        let x1 = TMat {
            params,
            rows: s.rows,
            cols: s.cols,
            pa: ca1.re_part(),
            pb: ca2.re_part(),
            pc: cb1.re_part(),
            pd: cb2.re_part(),
        };
        let x2 = TMat {
            params,
            rows: s.rows,
            cols: s.cols,
            pa: ca1.im_part(),
            pb: ca2.im_part(),
            pc: cb1.im_part(),
            pd: cb2.im_part(),
        };
        GTMat { x1, x2 }
    }

    /// Generalized matrix product via channelwise complex multiplication;
    /// requires `alpha > 0`.
    pub fn mul(&self, other: &GTMat) -> Result<GTMat> {
        if self.params() != other.params() {
            return Err(Error::ParamsMismatch);
        }
        if !self.params().is_split() {
            return Err(Error::GeneralizedNeedsPositiveAlpha {
                alpha: self.params().alpha(),
            });
        }
        if self.cols() != other.rows() {
            return Err(Error::ShapeMismatch {
                left: format!("{}x{}", self.rows(), self.cols()),
                right: format!("{}x{}", other.rows(), other.cols()),
            });
        }
        let a = self.complex_channels();
        let b = other.complex_channels();
        let prod: [Mat<C>; 4] = std::array::from_fn(|n| a[n].matmul(&b[n]));
        Ok(GTMat::from_complex_channels(
            [&prod[0], &prod[1], &prod[2], &prod[3]],
            self.params(),
        ))
    }
}
