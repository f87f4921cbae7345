//! Boundary analysis for differences of composition operators `C_φ − C_ψ` on
//! bounded analytic functions of the polydisc.
//!
//! The core quantity is `Λ = lim sup max_j β(φ_j(z), ψ_j(z))` taken over the
//! regions where one of the symbols approaches the boundary, from which the
//! essential norm is bracketed by `Λ ≤ ‖C_φ − C_ψ‖_e ≤ 2g(Λ)`.

// Negated comparisons are used deliberately so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod error;
pub mod metrics;
pub mod oracle;
pub mod random;
pub mod scalar;
mod search;
pub mod symbols;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use search::SearchBudget;

pub type DiscPoint64 = metrics::DiscPoint<f64>;
pub type PolyPoint64 = metrics::PolyPoint<f64>;
pub type SymbolMap64 = symbols::SymbolMap<f64>;
pub type SymbolMap32 = symbols::SymbolMap<f32>;
pub type Polynomial64 = symbols::Polynomial<f64>;
pub type LambdaEstimate64 = boundary::LambdaEstimate<f64>;
pub type EssentialNormBounds64 = boundary::EssentialNormBounds<f64>;
