//! Holomorphic self-maps of the polydisc built from closed coordinate families.

mod config;
mod coordinate;
mod map;

pub use config::{parse_symbol_config, ComplexPair, CoordinateDescriptor, SymbolConfig, TermDescriptor};
pub use coordinate::{CoordinateFunction, Monomial, Polynomial};
pub use map::{default_resolution, torus_sup_estimate, Certificate, SymbolMap, MIN_RESOLUTION, SELF_MAP_SLACK};
