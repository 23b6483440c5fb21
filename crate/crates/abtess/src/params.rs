use crate::error::{Error, Result};

/// Algebra parameters: `i² = alpha`, `j² = beta`, `k = ij`.
///
/// `alpha` must be nonzero and `beta` strictly positive. The sign of
/// `alpha` selects the regime every decomposition branches on: for
/// `alpha < 0` an element splits into two complex channels, for
/// `alpha > 0` into four real channels. The regime index `n` (1 for
/// `alpha > 0`, 2 for `alpha < 0`) picks the Hermitian transpose, inner
/// product and norm used throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() || beta <= 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParams { alpha, beta });
        }
        Ok(Params { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Regime index: 1 for `alpha > 0`, 2 for `alpha < 0`.
    pub fn herm_index(&self) -> u8 {
        if self.alpha > 0.0 {
            1
        } else {
            2
        }
    }

    /// The θ of the regime's Hermitian transpose, `θ = 3 − 2n`: `+1` for
    /// `alpha > 0` (plain transpose), `−1` for `alpha < 0` (i and k parts
    /// negated).
    pub fn conj_theta(&self) -> f64 {
        if self.alpha > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn is_split(&self) -> bool {
        self.alpha > 0.0
    }

    pub(crate) fn sqrt_abs_alpha(&self) -> f64 {
        self.alpha.abs().sqrt()
    }

    /// `√alpha`; only meaningful in the `alpha > 0` regime.
    pub(crate) fn sqrt_alpha(&self) -> f64 {
        debug_assert!(self.alpha > 0.0);
        self.alpha.sqrt()
    }

    pub(crate) fn sqrt_beta(&self) -> f64 {
        self.beta.sqrt()
    }

    /// Number of idempotent channels: 2 complex (`alpha < 0`) or 4 real
    /// (`alpha > 0`).
    pub fn channel_count(&self) -> usize {
        if self.alpha > 0.0 {
            4
        } else {
            2
        }
    }

    /// Channel display name, indexed 0-based: `s`,`d` for `alpha < 0`;
    /// `1`..`4` for `alpha > 0`.
    pub(crate) fn channel_name(&self, idx: usize) -> String {
        if self.alpha < 0.0 {
            ["s", "d"][idx].to_string()
        } else {
            format!("{}", idx + 1)
        }
    }
}
