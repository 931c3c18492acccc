use thiserror::Error;

/// Errors shared by every stage of the solver pipeline.
#[derive(Debug, Clone, Error)]
pub enum SolverError {
    #[error("radius must be positive, got r = {r}")]
    NonPositiveRadius { r: f64 },

    #[error("tabulated potential needs at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("tabulated potential line {line}: {message}")]
    TabulatedParse { line: usize, message: String },

    #[error("sum potential must have at least one member")]
    EmptySum,

    #[error("tabulated members of a sum must share the same abscissae")]
    MismatchedGrids,

    #[error("channel requires l >= 0 and mass > 0, got mass = {mass}")]
    InvalidChannel { mass: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(
        "effective inverse-square coupling below the critical value \
         (discriminant = {discriminant}); the channel falls to the center and only \
         diagnostics are available"
    )]
    FallToCenter { discriminant: f64 },

    #[error(
        "subdominant branch r^{s_minus} is not square integrable near the origin \
         (s_minus = {s_minus} <= -1/2)"
    )]
    NonNormalizable { s_minus: f64 },

    #[error("boundary mode unavailable for this channel: {0}")]
    ModeUnavailable(String),

    #[error(
        "E = {e} is not below V(r_max) = {v_at_rmax}; the tail cannot decay. \
         Increase r_max (roughly {suggested} or beyond)"
    )]
    RMaxTooSmall { e: f64, v_at_rmax: f64, suggested: f64 },

    #[error("series start produced a zero value at the first grid points")]
    StartValuesZero,

    #[error("no bound state with {n} radial nodes below the dissociation threshold")]
    NoSuchState { n: usize },

    #[error("eigenvalue search did not converge within {max_iter} iterations (E in [{e_lo}, {e_hi}])")]
    NonConvergence { max_iter: usize, e_lo: f64, e_hi: f64 },

    #[error("converged solution has {found} nodes, expected {expected} (E = {e})")]
    WrongNodeCount { expected: usize, found: usize, e: f64 },

    #[error("quadrature failed to reach the requested precision (estimated error {estimate:e})")]
    QuadraturePrecision { estimate: f64 },

    #[error("origin fit failed: {0}")]
    OriginFit(String),

    #[error("finite-difference oracle requires a uniform grid with r_min equal to the spacing")]
    OracleGrid,

    #[error("requested {k} eigenvalues but the matrix dimension is {dim}")]
    TooManyEigenvalues { k: usize, dim: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
