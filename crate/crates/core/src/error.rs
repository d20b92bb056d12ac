use thiserror::Error;

/// Errors raised by clip construction, sampling, and augmentation operators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid clip shape: {0}")]
    InvalidClip(String),

    #[error("clip shapes do not match: {0}")]
    ShapeMismatch(String),

    #[error("empty uniform range: lo {lo} > hi {hi}")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("beta parameter must be > 0, got {0}")]
    InvalidAlpha(f64),

    #[error("magnitude {0} outside [0, 1]")]
    MagnitudeOutOfRange(f64),

    #[error("magnitude curve has {curve} entries but clip has {clip} frames")]
    CurveLength { curve: usize, clip: usize },

    #[error("invalid magnitude curve: {0}")]
    InvalidCurve(String),

    #[error("{op} has no magnitude parameter")]
    MagnitudeFreeOp { op: &'static str },

    #[error("{op} is a temporal op and cannot be applied per frame")]
    TemporalOp { op: &'static str },

    #[error("frame index {t} out of range for {n} frames")]
    FrameOutOfRange { t: usize, n: usize },

    #[error("box {bw}x{bh} does not fit in {w}x{h} frame")]
    BoxTooLarge { bw: usize, bh: usize, w: usize, h: usize },

    #[error("degenerate region: {0}")]
    DegenerateRegion(String),

    #[error("mix kind {0} requires a partner clip")]
    MissingPartner(&'static str),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("frame {w}x{h} too small for policy application (minimum 8x8)")]
    FrameTooSmall { w: usize, h: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
