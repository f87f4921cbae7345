//! Library side of the `essnorm` command: argument parsing, the analysis and
//! verification pipelines, and the report documents they produce.

// Negated comparisons are used deliberately so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analyze;
pub mod args;
pub mod curve;
pub mod error;
pub mod report;
pub mod verify;

pub use error::{exit, CliError};
