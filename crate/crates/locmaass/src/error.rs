use thiserror::Error;

/// Errors surfaced by kernels, enumerators and evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma function evaluated at a non-positive integer.
    #[error("gamma pole at {0}")]
    GammaPole(String),

    /// Hypergeometric connection formula hit a degenerate parameter set.
    #[error("degenerate hypergeometric parameters: {0}")]
    ParameterDegenerate(String),

    /// Spectral parameter outside the convergence half-plane of a lattice sum.
    #[error("spectral parameter outside implemented range: {0}")]
    SpectralDomain(String),

    /// Enumeration exceeded the configured cell or form budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Whittaker argument large enough to overflow double precision.
    #[error("whittaker overflow: argument {0} exceeds the implemented range")]
    WhittakerOverflow(f64),

    /// Truncated sum whose shells do not decay.
    #[error("sum did not converge: {0}")]
    Convergence(String),

    /// Jump prediction requested at a point crossed only by vertical geodesics.
    #[error("vertical geodesic: two-sided vertical approach does not cross the arc")]
    VerticalGeodesic,

    /// Jump prediction requested off the exceptional set.
    #[error("no vanishing forms at the requested point")]
    EmptyVanishingSet,
}

pub type Result<T> = std::result::Result<T, Error>;
