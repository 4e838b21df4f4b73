//! Exact-arithmetic tools for local holomorphic dynamics in two complex
//! variables.
//!
//! Given a polynomial vector field `X = A ∂/∂x + B ∂/∂y` singular at the
//! origin of ℂ² — or a map `f` tangent to the identity — this crate computes,
//! with Gaussian-rational coefficients and no rounding anywhere:
//!
//! * the time-one map `exp(X)` of the field and the formal logarithm of a
//!   tangent-to-identity map ([`vector_field`]);
//! * Milnor numbers and local intersection multiplicities with certified
//!   truncation handling ([`intersection`]);
//! * Newton polygons and Puiseux expansions of plane-curve branches
//!   ([`newton`], [`puiseux`]);
//! * separatrices of the field with their ramified parametrizations,
//!   one-parameter families, the restricted one-dimensional dynamics along
//!   each branch, and Leau–Fatou petal counts ([`separatrix`]);
//! * blow-ups of maps and fields in the two standard charts, pull-backs,
//!   saturation, tangentiality orders, and dicriticality tests ([`blowup`]);
//! * an upper bound `(μ(f)+1)(η²(f)−η(f))` on the number of robust parabolic
//!   curves, aggregated into a report ([`report`]).
//!
//! The `rp` binary exposes all of this behind a small polynomial input
//! language; the `examples/` directory demonstrates each capability as
//! library calls.

pub mod blowup;
pub(crate) mod cpoly;
pub mod error;
pub mod intersection;
pub mod newton;
pub mod parse;
pub mod puiseux;
pub mod report;
pub(crate) mod roots;
pub mod scalar;
pub mod separatrix;
pub mod series;
pub mod vector_field;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{Exp2, Series1, Series2};

/// Default truncation order for series arithmetic (total degree, inclusive).
pub const DEFAULT_ORDER: usize = 12;

/// Default branch-expansion depth (coefficients of Puiseux parametrizations
/// are determined up to this power of the branch variable).
pub const DEFAULT_DEPTH: usize = 12;
