use thiserror::Error;

/// Errors raised by construction, evaluation, and export operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation point lies on or outside the unit circle.
    #[error("evaluation point with |z| = {0} is outside the open unit disk")]
    OutsideDisk(f64),

    /// Grid radius outside (0, 0.995].
    #[error("grid radius {0} is outside (0, 0.995]")]
    GridRadius(f64),

    /// Grid resolution too coarse to triangulate.
    #[error("grid needs at least 1 circle and 3 spokes, got {circles}x{spokes}")]
    GridResolution { circles: usize, spokes: usize },

    /// Denominator h'(z) too close to zero for a stable quotient.
    #[error("|h'(z)| = {0:e} is below the near-singular threshold 1e-14")]
    NearSingular(f64),

    /// A dilatation alpha*z^m with odd m is not the square of an analytic
    /// function, so the map has no isothermal lift.
    #[error("dilatation power m = {0} is odd; the map has no isothermal lift")]
    OddDilatationPower(u32),

    /// Construction parameters violate an invariant.
    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),

    /// A computation produced NaN or infinity.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Map document does not match the schema.
    #[error("map document: {0}")]
    Document(String),

    /// Finite-difference step does not fit inside the evaluation disk.
    #[error("step {step} too large: |z| + 2*step = {reach} exceeds radius {radius}")]
    StepTooLarge { step: f64, reach: f64, radius: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
