use thiserror::Error;

/// Errors produced by the tessarine algebra and its matrix operations.
///
/// Operations that fail because a specific idempotent channel degenerates
/// (a zero divisor, a singular channel matrix, a missing channel square
/// root) carry the channel's name: `"s"`/`"d"` for the two complex
/// channels when `alpha < 0`, `"1"`..`"4"` for the four real channels when
/// `alpha > 0`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: alpha = {alpha}, beta = {beta} (need alpha != 0, beta > 0)")]
    InvalidParams { alpha: f64, beta: f64 },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("operands carry different algebra parameters")]
    ParamsMismatch,

    #[error("zero divisor: channel {channel} vanishes{}", context_suffix(.context))]
    ZeroDivisor {
        channel: String,
        context: Option<String>,
    },

    #[error("singular matrix: channel {channel} is not invertible")]
    Singular { channel: String },

    #[error("no square root: channel {channel} has no matrix square root")]
    NoSquareRoot { channel: String },

    #[error("channel {channel} has no eigenbasis (defective eigenvector matrix)")]
    DefectiveChannel { channel: String },

    #[error("matrix is not {n}-Hermitian")]
    NotHermitian { n: u8 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("Gram matrix is not Toeplitz: entries ({i},{j}) and ({},{}) differ by {dev:.3e}", .i + 1, .j + 1)]
    NotToeplitz { i: usize, j: usize, dev: f64 },

    #[error(
        "associated tessarine undefined: alpha < 0 requires zero i and k parts, got |b| = {b_abs:.3e}, |d| = {d_abs:.3e}"
    )]
    AssociatedUndefined { b_abs: f64, d_abs: f64 },

    #[error("theta/tau out of domain: theta = {theta}, tau = {tau} (need theta != 0, tau > 0)")]
    BadThetaTau { theta: f64, tau: f64 },

    #[error("generalized arithmetic requires alpha > 0 (got alpha = {alpha})")]
    GeneralizedNeedsPositiveAlpha { alpha: f64 },

    #[error("channel-set regime does not match sign(alpha) = {alpha_sign}")]
    RegimeMismatch { alpha_sign: f64 },

    #[error("signature vector malformed: expected length {expected}, ±1 entries, got {got:?}")]
    BadSignature { expected: usize, got: Vec<i32> },

    #[error("permutation list malformed: {reason}")]
    BadPermutation { reason: String },

    #[error("permutation-sum determinant guarded at p <= {max}, got p = {got}")]
    DimensionGuard { max: usize, got: usize },

    #[error("rank-k approximation: k = {k} out of range 1..={r}")]
    KOutOfRange { k: usize, r: usize },

    #[error("Levinson trace has no stage {stage} (stages 1..={max})")]
    StageOutOfRange { stage: usize, max: usize },

    #[error("eigenvalue collapse: epsilon part {eps:.3e} exceeds tolerance")]
    NonzeroEpsilonPart { eps: f64 },
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
