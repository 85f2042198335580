use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polar chart is singular at rho = {rho}")]
    PolarAxis { rho: f64 },

    #[error("point ({x}, {y}) lies outside the open Klein disk")]
    OutsideKleinDisk { x: f64, y: f64 },

    #[error("isometry defect {defect:e} is too large to renormalize")]
    PoseCorrupted { defect: f64 },

    #[error("frame orthogonality defect {defect:e} is too large")]
    FrameNotOrthogonal { defect: f64 },

    #[error("loop does not close: origin displaced by {defect:e}")]
    LoopNotClosed { defect: f64 },

    #[error("loop closes but leaves a vertical offset of {dz:e}")]
    LoopVerticalOffset { dz: f64 },

    #[error("image must have nonzero area (got {width}x{height})")]
    EmptyImage { width: usize, height: usize },

    #[error("invalid field of view {fov} (must lie in (0, pi))")]
    InvalidFov { fov: f64 },

    #[error("invalid tiling parameters: {0}")]
    InvalidTiling(String),

    #[error("unknown generator letter {0:?}")]
    UnknownLetter(char),

    #[error("unknown view {0:?}, expected h2, e, diag or diag2")]
    UnknownView(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed message: {0}")]
    Malformed(String),

    #[error("walk script line {line}: {reason}")]
    WalkScript { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
