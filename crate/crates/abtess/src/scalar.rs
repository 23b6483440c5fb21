use num_complex::Complex64;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::gscalar::GTessarine;
use crate::params::Params;

/// One element `a + b·i + c·j + d·k` of the four-dimensional commutative
/// algebra with `i² = alpha`, `j² = beta`, `k = ij`.
///
/// The coefficients carry no parameters; every operation that depends on
/// the multiplication table takes [`Params`] explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tessarine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Conjugation axis: `x^ν` fixes the `ν` component and negates the other
/// two imaginary ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    I,
    J,
    K,
}

/// Image of an element in the idempotent channel basis.
///
/// For `alpha < 0` the two channels are standard complex numbers (the
/// i-part rescaled by `√|alpha|`); for `alpha > 0` they are four reals.
/// Multiplication acts channelwise, which is what every factorization in
/// this crate exploits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelSet {
    TwoComplex { s: Complex64, d: Complex64 },
    FourReal { ch: [f64; 4] },
}

/// An (α)-complex number `x = re + im·i` with `i² = alpha`: complex-like
/// for `alpha < 0`, split-complex for `alpha > 0`. These are the
/// coefficients of the representations `x = x_a + x_b·j = x_s·w₁ + x_d·w₂`.
///
/// For `alpha = −1` the arithmetic coincides bit-for-bit with standard
/// complex arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlphaComplex {
    pub re: f64,
    pub im: f64,
}

impl AlphaComplex {
    pub const fn new(re: f64, im: f64) -> Self {
        AlphaComplex { re, im }
    }

    pub fn mul(&self, y: &AlphaComplex, p: Params) -> AlphaComplex {
        AlphaComplex::new(
            self.re * y.re + p.alpha() * self.im * y.im,
            self.re * y.im + self.im * y.re,
        )
    }

    /// Rescaled standard-complex image `re + √|α|·im·𝒾`.
    pub fn to_scaled(&self, p: Params) -> Complex64 {
        Complex64::new(self.re, p.sqrt_abs_alpha() * self.im)
    }

    pub fn from_scaled(z: Complex64, p: Params) -> AlphaComplex {
        AlphaComplex::new(z.re, z.im / p.sqrt_abs_alpha())
    }

    /// Embed into the tessarine algebra (zero `j` and `k` parts).
    pub fn to_tessarine(&self) -> Tessarine {
        Tessarine::new(self.re, self.im, 0.0, 0.0)
    }
}

impl Add for AlphaComplex {
    type Output = AlphaComplex;
    fn add(self, y: AlphaComplex) -> AlphaComplex {
        AlphaComplex::new(self.re + y.re, self.im + y.im)
    }
}

impl Sub for AlphaComplex {
    type Output = AlphaComplex;
    fn sub(self, y: AlphaComplex) -> AlphaComplex {
        AlphaComplex::new(self.re - y.re, self.im - y.im)
    }
}

impl Neg for AlphaComplex {
    type Output = AlphaComplex;
    fn neg(self) -> AlphaComplex {
        AlphaComplex::new(-self.re, -self.im)
    }
}

impl Tessarine {
    pub const ZERO: Tessarine = Tessarine::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Tessarine = Tessarine::new(1.0, 0.0, 0.0, 0.0);
    pub const UNIT_I: Tessarine = Tessarine::new(0.0, 1.0, 0.0, 0.0);
    pub const UNIT_J: Tessarine = Tessarine::new(0.0, 0.0, 1.0, 0.0);
    pub const UNIT_K: Tessarine = Tessarine::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Tessarine { a, b, c, d }
    }

    pub const fn from_real(a: f64) -> Self {
        Tessarine::new(a, 0.0, 0.0, 0.0)
    }

    /// Real part (the `a` coefficient).
    pub fn re(&self) -> f64 {
        self.a
    }

    /// The `i` coefficient.
    pub fn im_i(&self) -> f64 {
        self.b
    }

    /// `s(x) = a + b + c + d`.
    pub fn s_sum(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    pub fn scale(&self, f: f64) -> Self {
        Tessarine::new(self.a * f, self.b * f, self.c * f, self.d * f)
    }

    pub fn max_abs(&self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    /// Product by the multiplication table
    /// `i² = α, j² = β, k² = αβ, ij = k, ik = αj, jk = βi`.
    pub fn mul(&self, y: &Tessarine, p: Params) -> Tessarine {
        let (al, be) = (p.alpha(), p.beta());
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (y.a, y.b, y.c, y.d);
        Tessarine::new(
            a * e + al * b * f + be * c * g + al * be * d * h,
            a * f + b * e + be * (c * h + d * g),
            a * g + c * e + al * (b * h + d * f),
            a * h + b * g + c * f + d * e,
        )
    }

    /// `x^ν` for `ν ∈ {i, j, k}`.
    pub fn conj(&self, axis: Axis) -> Tessarine {
        match axis {
            Axis::I => Tessarine::new(self.a, self.b, -self.c, -self.d),
            Axis::J => Tessarine::new(self.a, -self.b, self.c, -self.d),
            Axis::K => Tessarine::new(self.a, -self.b, -self.c, self.d),
        }
    }

    /// `x^(θ,τ) = a + (b/θ)i + (c/τ)j + (d/(τθ))k`.
    pub fn theta_tau(&self, theta: f64, tau: f64) -> Result<Tessarine> {
        if theta == 0.0 || !theta.is_finite() || tau <= 0.0 || !tau.is_finite() {
            return Err(Error::BadThetaTau { theta, tau });
        }
        Ok(Tessarine::new(
            self.a,
            self.b / theta,
            self.c / tau,
            self.d / (tau * theta),
        ))
    }

    /// The regime conjugation `x^(3−2n, 1)`: identity for `alpha > 0`,
    /// i- and k-part negation for `alpha < 0`.
    pub fn regime_conj(&self, p: Params) -> Tessarine {
        if p.is_split() {
            *self
        } else {
            Tessarine::new(self.a, -self.b, self.c, -self.d)
        }
    }

    /// The `x = x_a + x_b·j` split into (α)-complex coefficients.
    pub fn j_split(&self) -> (AlphaComplex, AlphaComplex) {
        (
            AlphaComplex::new(self.a, self.b),
            AlphaComplex::new(self.c, self.d),
        )
    }

    /// The idempotent split `x = x_s·w₁ + x_d·w₂` with
    /// `x_s = x_a + √β·x_b`, `x_d = x_a − √β·x_b`.
    pub fn w_split(&self, p: Params) -> (AlphaComplex, AlphaComplex) {
        let (xa, xb) = self.j_split();
        let sb = p.sqrt_beta();
        (
            AlphaComplex::new(xa.re + sb * xb.re, xa.im + sb * xb.im),
            AlphaComplex::new(xa.re - sb * xb.re, xa.im - sb * xb.im),
        )
    }

    /// Inverse of [`Tessarine::w_split`].
    pub fn from_w_split(xs: AlphaComplex, xd: AlphaComplex, p: Params) -> Tessarine {
        let sb = p.sqrt_beta();
        Tessarine::new(
            (xs.re + xd.re) / 2.0,
            (xs.im + xd.im) / 2.0,
            (xs.re - xd.re) / (2.0 * sb),
            (xs.im - xd.im) / (2.0 * sb),
        )
    }

    /// Channel image of the element (an algebra homomorphism).
    pub fn to_channels(&self, p: Params) -> ChannelSet {
        let sb = p.sqrt_beta();
        if p.is_split() {
            let sa = p.sqrt_alpha();
            let (a, b, c, d) = (self.a, self.b, self.c, self.d);
            ChannelSet::FourReal {
                ch: [
                    a + sa * b + sb * c + sa * sb * d,
                    a - sa * b + sb * c - sa * sb * d,
                    a + sa * b - sb * c - sa * sb * d,
                    a - sa * b - sb * c + sa * sb * d,
                ],
            }
        } else {
            let sa = p.sqrt_abs_alpha();
            ChannelSet::TwoComplex {
                s: Complex64::new(self.a + sb * self.c, sa * (self.b + sb * self.d)),
                d: Complex64::new(self.a - sb * self.c, sa * (self.b - sb * self.d)),
            }
        }
    }

    /// Exact inverse of [`Tessarine::to_channels`].
    pub fn from_channels(ch: &ChannelSet, p: Params) -> Result<Tessarine> {
        match (ch, p.is_split()) {
            (ChannelSet::FourReal { ch }, true) => {
                let sa = p.sqrt_alpha();
                let sb = p.sqrt_beta();
                let [c1, c2, c3, c4] = *ch;
                Ok(Tessarine::new(
                    (c1 + c2 + c3 + c4) / 4.0,
                    (c1 - c2 + c3 - c4) / (4.0 * sa),
                    (c1 + c2 - c3 - c4) / (4.0 * sb),
                    (c1 - c2 - c3 + c4) / (4.0 * sa * sb),
                ))
            }
            (ChannelSet::TwoComplex { s, d }, false) => {
                let sa = p.sqrt_abs_alpha();
                let sb = p.sqrt_beta();
                Ok(Tessarine::new(
                    (s.re + d.re) / 2.0,
                    (s.im + d.im) / (2.0 * sa),
                    (s.re - d.re) / (2.0 * sb),
                    (s.im - d.im) / (2.0 * sa * sb),
                ))
            }
            _ => Err(Error::RegimeMismatch {
                alpha_sign: p.alpha().signum(),
            }),
        }
    }

    /// Associated tessarine `x̃`: the channel values written as element
    /// components. For `alpha < 0` it is only defined on `x = a + cj`;
    /// i or k parts beyond `1e-12·|x|` are a domain error.
    pub fn associated(&self, p: Params) -> Result<Tessarine> {
        if p.is_split() {
            match self.to_channels(p) {
                ChannelSet::FourReal { ch } => Ok(Tessarine::new(ch[0], ch[1], ch[2], ch[3])),
                ChannelSet::TwoComplex { .. } => unreachable!(),
            }
        } else {
            let tol = 1e-12 * self.max_abs().max(1.0);
            if self.b.abs() > tol || self.d.abs() > tol {
                return Err(Error::AssociatedUndefined {
                    b_abs: self.b.abs(),
                    d_abs: self.d.abs(),
                });
            }
            let sb = p.sqrt_beta();
            Ok(Tessarine::new(
                self.a + sb * self.c,
                0.0,
                self.a - sb * self.c,
                0.0,
            ))
        }
    }

    /// `true` iff every component of the associated tessarine is
    /// nonnegative (up to `1e-12` of the channel scale).
    pub fn is_semipositive(&self, p: Params) -> Result<bool> {
        let assoc = self.associated(p)?;
        let comps: &[f64] = if p.is_split() {
            &[assoc.a, assoc.b, assoc.c, assoc.d]
        } else {
            &[assoc.a, assoc.c]
        };
        let scale = comps.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        Ok(comps.iter().all(|&v| v >= -1e-12 * scale))
    }

    /// The componentwise order `self ⪯ other`: `other − self` is
    /// semipositive.
    pub fn leq(&self, other: &Tessarine, p: Params) -> Result<bool> {
        (*other - *self).is_semipositive(p)
    }

    /// Channel magnitudes, used for zero-divisor detection.
    fn channel_abs(&self, p: Params) -> Vec<f64> {
        match self.to_channels(p) {
            ChannelSet::FourReal { ch } => ch.iter().map(|v| v.abs()).collect(),
            ChannelSet::TwoComplex { s, d } => vec![s.norm(), d.norm()],
        }
    }

    /// Index of a vanishing channel, if any. A channel counts as zero when
    /// its magnitude is at most `1e-13` times the largest channel.
    pub(crate) fn zero_channel(&self, p: Params) -> Option<usize> {
        let mags = self.channel_abs(p);
        let max = mags.iter().fold(0.0f64, |m, &v| m.max(v));
        mags.iter().position(|&v| v <= 1e-13 * max || v == 0.0)
    }

    /// Multiplicative inverse via channel reciprocals.
    pub fn inverse(&self, p: Params) -> Result<Tessarine> {
        if let Some(idx) = self.zero_channel(p) {
            return Err(Error::ZeroDivisor {
                channel: p.channel_name(idx),
                context: None,
            });
        }
        let ch = match self.to_channels(p) {
            ChannelSet::FourReal { ch } => ChannelSet::FourReal {
                ch: [1.0 / ch[0], 1.0 / ch[1], 1.0 / ch[2], 1.0 / ch[3]],
            },
            ChannelSet::TwoComplex { s, d } => ChannelSet::TwoComplex {
                s: s.inv(),
                d: d.inv(),
            },
        };
        Tessarine::from_channels(&ch, p)
    }

    /// Principal channelwise square root.
    ///
    /// Each channel takes its principal root (nonnegative real part); a
    /// negative real channel roots onto the `ε` axis, so the result lives
    /// in the generalized algebra. For `alpha < 0` the channels are
    /// complex-closed and the `ε` part is exactly zero.
    pub fn sqrt(&self, p: Params) -> GTessarine {
        match self.to_channels(p) {
            ChannelSet::FourReal { ch } => {
                let roots: Vec<Complex64> =
                    ch.iter().map(|&v| Complex64::new(v, 0.0).sqrt()).collect();
                let re = ChannelSet::FourReal {
                    ch: [roots[0].re, roots[1].re, roots[2].re, roots[3].re],
                };
                let im = ChannelSet::FourReal {
                    ch: [roots[0].im, roots[1].im, roots[2].im, roots[3].im],
                };
                GTessarine::new(
                    Tessarine::from_channels(&re, p).expect("regime fixed"),
                    Tessarine::from_channels(&im, p).expect("regime fixed"),
                )
            }
            ChannelSet::TwoComplex { s, d } => {
                let ch = ChannelSet::TwoComplex {
                    s: s.sqrt(),
                    d: d.sqrt(),
                };
                GTessarine::from_tessarine(Tessarine::from_channels(&ch, p).expect("regime fixed"))
            }
        }
    }
}

/// The special idempotent-generating units
/// `w₁ = (√β + j)/(2√β)`, `w₂ = (√β − j)/(2√β)`.
pub fn special_units(p: Params) -> (Tessarine, Tessarine) {
    let half_inv_sb = 0.5 / p.sqrt_beta();
    (
        Tessarine::new(0.5, 0.0, half_inv_sb, 0.0),
        Tessarine::new(0.5, 0.0, -half_inv_sb, 0.0),
    )
}

impl Add for Tessarine {
    type Output = Tessarine;
    fn add(self, y: Tessarine) -> Tessarine {
        Tessarine::new(self.a + y.a, self.b + y.b, self.c + y.c, self.d + y.d)
    }
}

impl Sub for Tessarine {
    type Output = Tessarine;
    fn sub(self, y: Tessarine) -> Tessarine {
        Tessarine::new(self.a - y.a, self.b - y.b, self.c - y.c, self.d - y.d)
    }
}

impl Neg for Tessarine {
    type Output = Tessarine;
    fn neg(self) -> Tessarine {
        Tessarine::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl std::fmt::Display for Tessarine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a, self.b, self.c, self.d)
    }
}
