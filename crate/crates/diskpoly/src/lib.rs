//! Generalized Zernike (complex disk) polynomials `Z_{m,n}^γ(z, z̄)`.
//!
//! The family is defined on the unit disk by the Rodrigues-type formula
//!
//! ```text
//! Z_{m,n}^γ(z, z̄) = (-1)^{m+n} (1-|z|²)^{-γ} ∂^{m+n}/∂z^m ∂z̄^n ( (1-|z|²)^{γ+m+n} )
//! ```
//!
//! and is orthogonal on `L²(D, (1-|z|²)^γ dλ)` for `γ > -1`.
//!
//! The crate provides:
//!
//! - four independent numeric evaluation engines (explicit sum, Jacobi
//!   polynomial route, terminating ₂F₁, three-term recurrence) plus an exact
//!   symbolic constructor over `Q[γ][z, z̄, w]` ([`disk`]);
//! - an exact computer-algebra layer with arbitrary-precision rational
//!   coefficients, polynomials in the parameter γ, and the weighted-expression
//!   calculus `w^{γ+t}·p` closed under `∂/∂z`, `∂/∂z̄` ([`exact`]);
//! - machine verification of the operational formulae of Burchnall type, the
//!   Nielsen quadratic recurrences, all three-term recurrences, the Runge
//!   addition formula and the Chu-Vandermonde reduction — bit-exact wherever
//!   the identity is polynomial ([`identities`], [`recurrence`]);
//! - truncated-series verification of every generating function and summation
//!   formula, with hypergeometric evaluators ₂F₁/₁F₁ ([`series`]);
//! - Gauss quadrature on the weighted disk for orthogonality checks
//!   ([`quadrature`]);
//! - batch verification suites driving all of the above ([`suites`]), exposed
//!   through the `diskpoly` CLI (`eval | table | verify | series | ortho`).

pub mod disk;
pub mod exact;
pub mod identities;
pub mod quadrature;
pub mod recurrence;
pub mod scalar;
pub mod series;
pub mod suites;

pub use disk::{DiskIndex, DiskPolyValue, Engine, HermiteIndex};
pub use exact::{BigRational, GammaPoly, QComplex, TriPoly, WeightedExpr};
pub use series::{SeriesReport, TruncationPolicy};
pub use suites::SuiteResult;

use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input outside the operation's domain (parameter range, index parity, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Expression outside the supported fragment of the weighted calculus,
    /// e.g. a product that would need a `w^{2γ}` exponent.
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    /// A series did not meet its tail criterion within the term cap.
    #[error("series did not converge within {terms} terms")]
    NonConvergence {
        /// Terms consumed before giving up.
        terms: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Double-precision complex scalar used by all numeric engines.
pub type ComplexValue = Complex64;
