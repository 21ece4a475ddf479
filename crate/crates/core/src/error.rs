use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid node count must be odd, got {0}")]
    EvenNodeCount(usize),
    #[error("grid needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("grid half-width must be positive and finite, got {0}")]
    NonPositiveExtent(f64),
    #[error("delta location {location} lies outside the grid [-{x_max}, {x_max}]")]
    DeltaOutsideGrid { location: f64, x_max: f64 },
    #[error("tabulated term has {abscissae} abscissae but {values} values")]
    TabulatedLengthMismatch { abscissae: usize, values: usize },
    #[error("tabulated abscissae must be non-negative and strictly increasing")]
    TabulatedNotMonotone,
    #[error("invalid potential term: {0}")]
    InvalidTerm(&'static str),
    #[error("expected a {expected} space wave function, got {found}")]
    SpaceMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands carry different basis tags")]
    BasisMismatch,
    #[error("Fourier power must be in 0..=3, got {0}")]
    FourierPowerOutOfRange(i64),
    #[error("Hermite basis up to n = {n_max} is not resolved by the grid (norm defect {defect:.3e})")]
    UnresolvedBasis { n_max: usize, defect: f64 },
    #[error("potential contains polynomial terms whose Fourier transform is distributional")]
    NonIntegrablePotential,
    #[error("metric operator is not Hermitian (defect {0:.3e})")]
    NonHermitianMetric(f64),
    #[error("permutation metric does not square to the identity")]
    MetricNotInvolutive,
    #[error("matrix is not PT-symmetric under the supplied involution (defect {0:.3e})")]
    NotPtSymmetric(f64),
    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },
    #[error("residual certification failed: max residual {residual:.3e} exceeds bound {bound:.3e}")]
    ResidualCertification { residual: f64, bound: f64 },
    #[error("eigenvector pair {0} is numerically defective (left/right overlap vanishes)")]
    Defective(usize),
    #[error("spectrum holds no eigenvectors")]
    MissingEigenvectors,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("empty parameter range")]
    EmptyRange,
    #[error("chain needs at least 2 sites, got {0}")]
    TooFewSites(usize),
    #[error("chain with {0} sites is too large for a dense build (max 12)")]
    ChainTooLarge(usize),
    #[error("Fock truncation {0} is below the minimum of 10")]
    TruncationTooSmall(usize),
    #[error("truncation did not converge below n_trunc = {0}")]
    TruncationNotConverged(usize),
    #[error("omega - alpha - beta = 0: the oscillator mapping degenerates to a free particle")]
    FreeParticleLimit,
    #[error("invalid Swanson parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("test function has no analytic second derivative at the origin")]
    MissingSecondDerivative,
}

pub type Result<T> = core::result::Result<T, Error>;
