use thiserror::Error;

/// Errors shared across the map, targeting, ballistics and guidance layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An orbit escaped the bounded region around the attractor.
    #[error("orbit diverged at iteration {index} (escape bound {bound})")]
    DivergedState { index: usize, bound: f64 },

    #[error("tangent vector norm underflowed during Lyapunov estimation")]
    DegenerateTangent,

    #[error("orbit has no post-transient states")]
    EmptyOrbit,

    #[error("bounding box is degenerate: {0}")]
    DegenerateBox(&'static str),

    #[error("orbit too short: need {needed} states, have {have}")]
    OrbitTooShort { needed: usize, have: usize },

    #[error("state never reaches ground level")]
    NeverImpacts,

    #[error("time of flight must be positive, got {0}")]
    NonpositiveTof(f64),

    #[error("state is at or below ground level (z = {0})")]
    BelowGround(f64),

    #[error("sensor reading {reading} outside [{min}, {max}]")]
    ReadingOutOfRange { reading: f64, min: f64, max: f64 },

    #[error("observation time {observe} is not before impact time {impact}")]
    ObserveAfterImpact { observe: f64, impact: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
