//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of series evaluation, lattice algebra and the verification
/// pipelines built on top of them.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument violates its domain (q outside (0,1), a = 0
    /// where a^{-n} is needed, and so on).
    #[error("invalid parameter: {0}")]
    Param(String),

    /// Series did not meet the stopping rule within the term budget.
    #[error("series did not converge within {max_terms} terms (last |term| = {last_term:.3e})")]
    NoConvergence { max_terms: usize, last_term: f64 },

    /// A nonterminating series whose convergence precondition fails.
    #[error("divergent series: {0}")]
    DivergentSeries(String),

    /// An intermediate product left the range of f64.
    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),

    /// A denominator parameter sits on (or too close to) the q^{-k} pole
    /// lattice, or an infinite product in a denominator is numerically zero.
    #[error("pole proximity: {0}")]
    PoleProximity(String),

    /// Square-root branch of the very-well-poised head parameter cannot be
    /// chosen unambiguously.
    #[error("square root branch undefined for head parameter {0}")]
    SqrtBranch(String),

    /// Divided difference over a vanishing lattice step.
    #[error("degenerate lattice step: |x(z) - x(z-1)| = {0:.3e}")]
    DegenerateStep(f64),

    /// The requested u_nu representation is not admissible at this point.
    #[error("representation {rep} inadmissible: {why}")]
    RepresentationInadmissible { rep: &'static str, why: String },

    /// No representation of the boundary function converges here.
    #[error("no admissible representation: {0}")]
    AllRepresentationsInadmissible(String),

    /// The c = d degeneration of the two-solution Wronskian identity.
    #[error("identity degenerates: |c - d| = {0:.3e}")]
    CEqualsD(f64),

    /// d lambda / d nu vanished where a lambda-derivative is required.
    #[error("degenerate derivative: |dlambda/dnu| = {0:.3e}")]
    DegenerateDerivative(f64),

    /// Zero scan ran past its nu cap with too few sign changes.
    #[error("scan exhausted: found {found} of {requested} zeros below nu = {cap}")]
    ScanExhausted { found: usize, requested: usize, cap: f64 },

    /// A zero-count check was asked about more zeros than were located.
    #[error("insufficient zeros: need index > {needed}, have {have}")]
    InsufficientZeros { needed: usize, have: usize },

    /// Test-point base beta outside (q, 1).
    #[error("beta = {beta} outside (q, 1) = ({q}, 1)")]
    BadBeta { beta: f64, q: f64 },

    /// A value that must be real (up to round-off) came out with a
    /// significant imaginary part.
    #[error("imaginary residual {imag:.3e} exceeds {bound:.3e} for {what}")]
    ImaginaryResidual { what: &'static str, imag: f64, bound: f64 },

    /// An internal cross-check (two routes to the same number) failed.
    #[error("consistency check failed: {0}")]
    ConsistencyCheck(String),
}
