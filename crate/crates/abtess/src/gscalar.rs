use num_complex::Complex64;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::scalar::{ChannelSet, Tessarine};

/// Generalized element `x = x₁ + x₂·ε` with a commuting unit `ε² = −1`.
///
/// Generalized values only arise in the `alpha > 0` regime (square roots
/// of channels with negative values, eigenvalues of non-Hermitian
/// matrices); for `alpha < 0` the complex channels are closed and the
/// `ε` part stays identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GTessarine {
    pub x1: Tessarine,
    pub x2: Tessarine,
}

impl GTessarine {
    pub const ZERO: GTessarine = GTessarine {
        x1: Tessarine::ZERO,
        x2: Tessarine::ZERO,
    };
    pub const ONE: GTessarine = GTessarine {
        x1: Tessarine::ONE,
        x2: Tessarine::ZERO,
    };
    pub const UNIT_EPS: GTessarine = GTessarine {
        x1: Tessarine::ZERO,
        x2: Tessarine::ONE,
    };

    pub const fn new(x1: Tessarine, x2: Tessarine) -> Self {
        GTessarine { x1, x2 }
    }

    pub const fn from_tessarine(x: Tessarine) -> Self {
        GTessarine::new(x, Tessarine::ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.x1.max_abs().max(self.x2.max_abs())
    }

    /// `true` when the `ε` part is negligible against the element scale.
    pub fn is_tessarine(&self, tol: f64) -> bool {
        self.x2.max_abs() <= tol * self.max_abs().max(1.0)
    }

    /// Collapse to a plain tessarine; fails loudly when the `ε` part
    /// exceeds `1e-10` of the element scale.
    pub fn as_tessarine(&self) -> Result<Tessarine> {
        if self.is_tessarine(1e-10) {
            Ok(self.x1)
        } else {
            Err(Error::NonzeroEpsilonPart {
                eps: self.x2.max_abs(),
            })
        }
    }

    /// The four complex channels `ch_n(x₁) + ch_n(x₂)·𝒾` (`alpha > 0`).
    pub(crate) fn complex_channels(&self, p: Params) -> [Complex64; 4] {
        let re = match self.x1.to_channels(p) {
            ChannelSet::FourReal { ch } => ch,
            ChannelSet::TwoComplex { .. } => unreachable!("alpha > 0 required"),
        };
        let im = match self.x2.to_channels(p) {
            ChannelSet::FourReal { ch } => ch,
            ChannelSet::TwoComplex { .. } => unreachable!("alpha > 0 required"),
        };
        [
            Complex64::new(re[0], im[0]),
            Complex64::new(re[1], im[1]),
            Complex64::new(re[2], im[2]),
            Complex64::new(re[3], im[3]),
        ]
    }

    pub(crate) fn from_complex_channels(ch: [Complex64; 4], p: Params) -> GTessarine {
        let re = ChannelSet::FourReal {
            ch: [ch[0].re, ch[1].re, ch[2].re, ch[3].re],
        };
        let im = ChannelSet::FourReal {
            ch: [ch[0].im, ch[1].im, ch[2].im, ch[3].im],
        };
        GTessarine::new(
            Tessarine::from_channels(&re, p).expect("regime fixed"),
            Tessarine::from_channels(&im, p).expect("regime fixed"),
        )
    }

    /// Product in the generalized algebra: channelwise complex
    /// multiplication. Requires `alpha > 0`.
    pub fn mul(&self, y: &GTessarine, p: Params) -> Result<GTessarine> {
        if !p.is_split() {
            return Err(Error::GeneralizedNeedsPositiveAlpha { alpha: p.alpha() });
        }
        let m = self.complex_channels(p);
        let n = y.complex_channels(p);
        Ok(GTessarine::from_complex_channels(
            [m[0] * n[0], m[1] * n[1], m[2] * n[2], m[3] * n[3]],
            p,
        ))
    }

    /// Inverse via channelwise complex reciprocals; a vanishing complex
    /// channel is a zero divisor.
    pub fn inverse(&self, p: Params) -> Result<GTessarine> {
        if !p.is_split() {
            return Err(Error::GeneralizedNeedsPositiveAlpha { alpha: p.alpha() });
        }
        let m = self.complex_channels(p);
        let max = m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        for (idx, z) in m.iter().enumerate() {
            if z.norm() <= 1e-13 * max || z.norm() == 0.0 {
                return Err(Error::ZeroDivisor {
                    channel: p.channel_name(idx),
                    context: Some("generalized complex channel".to_string()),
                });
            }
        }
        Ok(GTessarine::from_complex_channels(
            [m[0].inv(), m[1].inv(), m[2].inv(), m[3].inv()],
            p,
        ))
    }
}

/// Relabel a hypernumber `a + bε + c·i + d·εi` (a generalized element with
/// zero j and k parts) as the element `a + b·i + c·j + d·k` of the algebra
/// with parameters `(−1, alpha)`. Products commute with the relabeling.
pub fn equiv_tessarine(h: &GTessarine, p: Params) -> (Tessarine, Params) {
    debug_assert!(
        h.x1.c
            .abs()
            .max(h.x1.d.abs())
            .max(h.x2.c.abs())
            .max(h.x2.d.abs())
            <= 1e-12 * h.max_abs().max(1.0),
        "input must lie in the (1, ε, i, εi) span"
    );
    (
        Tessarine::new(h.x1.a, h.x2.a, h.x1.b, h.x2.b),
        Params::new(-1.0, p.alpha()).expect("alpha > 0 makes a valid beta"),
    )
}

/// Inverse of [`equiv_tessarine`]: embed an element of the `(−1, alpha)`
/// algebra back into the `(1, ε, i, εi)` span.
pub fn equiv_tessarine_back(x: &Tessarine) -> GTessarine {
    GTessarine::new(
        Tessarine::new(x.a, x.c, 0.0, 0.0),
        Tessarine::new(x.b, x.d, 0.0, 0.0),
    )
}

impl Add for GTessarine {
    type Output = GTessarine;
    fn add(self, y: GTessarine) -> GTessarine {
        GTessarine::new(self.x1 + y.x1, self.x2 + y.x2)
    }
}

impl Sub for GTessarine {
    type Output = GTessarine;
    fn sub(self, y: GTessarine) -> GTessarine {
        GTessarine::new(self.x1 - y.x1, self.x2 - y.x2)
    }
}

impl Neg for GTessarine {
    type Output = GTessarine;
    fn neg(self) -> GTessarine {
        GTessarine::new(-self.x1, -self.x2)
    }
}
