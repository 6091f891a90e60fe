//! Exact enumeration of closed square-lattice walks by algebraic area.
//!
//! The central object is the distribution `C_n(A)`: the number of closed
//! walks of length `n` on the square lattice enclosing algebraic area `A`
//! (counterclockwise positive, weighted by winding number). The library
//! evaluates `C_n(A)` through a composition-indexed sum of binomial
//! multi-sums, checks it against an independent dynamic-programming
//! enumeration, and cross-validates the companion Kreft-coefficient and
//! Hofstadter-trace identities at rational magnetic flux `2πp/q`.
//!
//! Modules:
//! - [`combinatorics`]: big-integer binomials, integer compositions of
//!   `n/2`, and the rational coefficient attached to each composition.
//! - [`area_enum`]: the multi-sum evaluator producing `C_n(A)`, the area
//!   generating polynomial `Z_n(Q)`, and the step-resolved
//!   (horizontal/vertical) refinement.
//! - [`walk_oracle`]: ground-truth DP enumeration of all closed walks,
//!   plus a naive `4^n` enumerator validating the DP.
//! - [`kreft`]: Kreft coefficients `a_{p,q}(2j)` by nested sum, closed
//!   form, extrapolation, and power-series coalescence.
//! - [`hofstadter`]: `Tr H^n` per site for the Hofstadter Hamiltonian,
//!   three independent ways, reconciled with the area distribution.
//! - [`identities`]: executable binomial / trigonometric identities
//!   shared by the test suites.
//! - [`envelope`]: serialization envelope and result cache for the CLI.

pub mod area_enum;
pub mod combinatorics;
pub mod envelope;
pub mod hofstadter;
pub mod identities;
pub mod kreft;
pub mod walk_oracle;

pub use area_enum::{AreaDistribution, CosinePolynomial, LaurentPolynomial};
pub use combinatorics::Composition;
pub use kreft::RationalFlux;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("walk length must be even, got {0}")]
    OddLength(u64),
    #[error("walk length must be positive")]
    ZeroLength,
    #[error("empty composition")]
    EmptyComposition,
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("flux numerator and denominator must be coprime: {p}/{q}")]
    FluxNotCoprime { p: u64, q: u64 },
    #[error("flux denominator must be positive")]
    ZeroDenominator,
    #[error("naive enumeration cap exceeded: n = {0} > 10")]
    NaiveCapExceeded(u64),
    #[error("horizontal pair count m = {m} out of range 0..={max}")]
    StepCountOutOfRange { m: u64, max: u64 },
    #[error("direct form undefined for q = {q} < 2j = {min_q}; use kreft_extrapolated")]
    DirectFormUndefined { q: u64, min_q: u64 },
    #[error("extrapolation only applies for q < 2j; q = {q}, j = {j}: use kreft_direct")]
    ExtrapolationNotNeeded { q: u64, j: u64 },
    #[error("no printed closed form for j = {0} > 4")]
    NoClosedForm(u64),
    #[error("integrality violation: {0} is not an integer")]
    NotIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
