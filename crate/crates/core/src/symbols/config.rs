//! TOML description of a symbol pair `(φ, ψ)`.
//!
//! ```toml
//! n = 2
//!
//! [[phi]]
//! kind = "affine"
//! c = [[1.0, 0.0], [0.0, 0.0]]
//!
//! [[phi]]
//! kind = "mobius"
//! a = [0.25, 0.0]
//! rotation = [0.0, 1.0]   # optional, defaults to [1, 0]
//! source = 2              # 1-based variable index
//!
//! [[psi]]
//! kind = "constant"
//! value = [0.5, 0.0]
//!
//! [[psi]]
//! kind = "polynomial"
//! terms = [{ exponents = [2, 0], coeff = [0.5, 0.0] }, { exponents = [0, 1], coeff = [0.25, 0.0] }]
//! ```
//!
//! Complex numbers are `[re, im]`. Unknown keys are rejected.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::coordinate::{CoordinateFunction, Monomial, Polynomial};
use super::map::SymbolMap;
use crate::error::{Error, Result};
use crate::metrics::DiscPoint;
use crate::scalar::Scalar;

pub type ComplexPair = [f64; 2];

fn unit_rotation() -> ComplexPair {
    [1.0, 0.0]
}

fn is_unit_rotation(r: &ComplexPair) -> bool {
    *r == unit_rotation()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoordinateDescriptor {
    Constant {
        value: ComplexPair,
    },
    Mobius {
        a: ComplexPair,
        #[serde(default = "unit_rotation", skip_serializing_if = "is_unit_rotation")]
        rotation: ComplexPair,
        source: usize,
    },
    Affine {
        #[serde(default)]
        c0: ComplexPair,
        c: Vec<ComplexPair>,
    },
    Polynomial {
        terms: Vec<TermDescriptor>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDescriptor {
    pub exponents: Vec<u32>,
    pub coeff: ComplexPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub n: usize,
    pub phi: Vec<CoordinateDescriptor>,
    pub psi: Vec<CoordinateDescriptor>,
}

fn cx<T: Scalar>(p: ComplexPair) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

fn pair<T: Scalar>(c: Complex<T>) -> ComplexPair {
    [c.re.to_f64_lossy(), c.im.to_f64_lossy()]
}

impl CoordinateDescriptor {
    pub fn to_function<T: Scalar>(&self, n: usize) -> Result<CoordinateFunction<T>> {
        let f = match self {
            Self::Constant { value } => CoordinateFunction::Constant(cx(*value)),
            Self::Mobius { a, rotation, source } => {
                if *source == 0 || *source > n {
                    return Err(Error::Schema(format!("mobius source {source} outside 1..={n}")));
                }
                let a = DiscPoint::new(cx(*a)).map_err(|e| Error::Schema(format!("mobius a: {e}")))?;
                CoordinateFunction::mobius(a, cx(*rotation), source - 1)
                    .map_err(|e| Error::Schema(format!("mobius rotation: {e}")))?
            }
            Self::Affine { c0, c } => CoordinateFunction::Affine { c0: cx(*c0), c: c.iter().map(|&v| cx(v)).collect() },
            Self::Polynomial { terms } => {
                let terms = terms.iter().map(|t| Monomial::new(t.exponents.clone(), cx(t.coeff))).collect();
                CoordinateFunction::Polynomial(Polynomial::new(n, terms).map_err(|e| Error::Schema(e.to_string()))?)
            }
        };
        f.check_structure(n).map_err(|e| Error::Schema(e.to_string()))?;
        Ok(f)
    }

    pub fn from_function<T: Scalar>(f: &CoordinateFunction<T>) -> Self {
        match f {
            CoordinateFunction::Constant(v) => Self::Constant { value: pair(*v) },
            CoordinateFunction::Mobius { a, rotation, source } => {
                Self::Mobius { a: pair(a.value()), rotation: pair(*rotation), source: source + 1 }
            }
            CoordinateFunction::Affine { c0, c } => {
                Self::Affine { c0: pair(*c0), c: c.iter().map(|&v| pair(v)).collect() }
            }
            CoordinateFunction::Polynomial(p) => Self::Polynomial {
                terms: p
                    .terms()
                    .iter()
                    .map(|t| TermDescriptor { exponents: t.exponents.clone(), coeff: pair(t.coeff) })
                    .collect(),
            },
        }
    }
}

impl SymbolConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Schema(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("symbol config serialises")
    }

    /// Describes an existing pair of maps. Dilation factors are not representable
    /// and must be 1.
    pub fn from_maps<T: Scalar>(phi: &SymbolMap<T>, psi: &SymbolMap<T>) -> Self {
        Self {
            n: phi.n(),
            phi: phi.coords().iter().map(CoordinateDescriptor::from_function).collect(),
            psi: psi.coords().iter().map(CoordinateDescriptor::from_function).collect(),
        }
    }

    fn build_map<T: Scalar>(&self, which: &str, list: &[CoordinateDescriptor]) -> Result<SymbolMap<T>> {
        let coords = list
            .iter()
            .enumerate()
            .map(|(j, d)| d.to_function(self.n).map_err(|e| Error::Schema(format!("{which}[{}]: {e}", j + 1))))
            .collect::<Result<Vec<_>>>()?;
        SymbolMap::new(coords).map_err(|e| Error::Schema(format!("{which}: {e}")))
    }

    /// Builds both maps without validating them.
    pub fn to_maps<T: Scalar>(&self) -> Result<(SymbolMap<T>, SymbolMap<T>)> {
        if self.n == 0 {
            return Err(Error::Schema("n must be at least 1".into()));
        }
        for list in [&self.phi, &self.psi] {
            if list.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, actual: list.len() });
            }
        }
        Ok((self.build_map("phi", &self.phi)?, self.build_map("psi", &self.psi)?))
    }

    /// Builds and validates both maps at `resolution` per angular dimension.
    pub fn to_validated_maps<T: Scalar>(&self, resolution: usize) -> Result<(SymbolMap<T>, SymbolMap<T>)> {
        let (phi, psi) = self.to_maps()?;
        Ok((phi.validated(resolution)?, psi.validated(resolution)?))
    }
}

/// Parses a symbol-pair document and returns validated `(φ, ψ)` at the default resolution.
pub fn parse_symbol_config<T: Scalar>(text: &str) -> Result<(SymbolMap<T>, SymbolMap<T>)> {
    let cfg = SymbolConfig::from_toml(text)?;
    cfg.to_validated_maps(super::map::default_resolution(cfg.n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_and_negation() {
        let text = r#"
            n = 1
            [[phi]]
            kind = "affine"
            c = [[1.0, 0.0]]
            [[psi]]
            kind = "affine"
            c = [[-1.0, 0.0]]
        "#;
        let (phi, psi) = parse_symbol_config::<f64>(text).unwrap();
        let z = [Complex::new(0.3, -0.2)];
        assert_eq!(phi.eval_coord(0, &z), z[0]);
        assert_eq!(psi.eval_coord(0, &z), -z[0]);
    }

    #[test]
    fn mismatched_dimensions() {
        let text = r#"
            n = 2
            phi = [{ kind = "constant", value = [0.0, 0.0] }, { kind = "constant", value = [0.0, 0.0] }]
            psi = [{ kind = "constant", value = [0.0, 0.0] }, { kind = "constant", value = [0.0, 0.0] }, { kind = "constant", value = [0.0, 0.0] }]
        "#;
        assert_eq!(parse_symbol_config::<f64>(text).unwrap_err(), Error::DimensionMismatch { expected: 2, actual: 3 });
    }

    #[test]
    fn affine_pair_sups() {
        let text = r#"
            n = 2
            phi = [{ kind = "affine", c = [[1.0, 0.0], [0.0, 0.0]] }, { kind = "affine", c = [[0.0, 0.0], [0.5, 0.0]] }]
            psi = [{ kind = "affine", c = [[1.0, 0.0], [0.0, 0.0]] }, { kind = "affine", c = [[0.0, 0.0], [0.3333333333333333, 0.0]] }]
        "#;
        let (phi, psi) = parse_symbol_config::<f64>(text).unwrap();
        let a = phi.certificate().unwrap();
        let b = psi.certificate().unwrap();
        assert_eq!(a.resolution, 256);
        assert_abs_diff_eq!(a.torus_sup[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.torus_sup[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(b.torus_sup[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.torus_sup[1], 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn unknown_fields_rejected() {
        let extra_top = "n = 1\nextra = 3\nphi = [{ kind = \"constant\", value = [0.0, 0.0] }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }]";
        assert!(matches!(parse_symbol_config::<f64>(extra_top), Err(Error::Schema(_))));
        let extra_desc = "n = 1\nphi = [{ kind = \"constant\", value = [0.0, 0.0], scale = 2 }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }]";
        assert!(matches!(parse_symbol_config::<f64>(extra_desc), Err(Error::Schema(_))));
        let bad_kind = "n = 1\nphi = [{ kind = \"exp\", value = [0.0, 0.0] }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }]";
        assert!(matches!(parse_symbol_config::<f64>(bad_kind), Err(Error::Schema(_))));
        let bad_term = "n = 1\nphi = [{ kind = \"polynomial\", terms = [{ exponents = [1], coeff = [0.5, 0.0], x = 1 }] }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }]";
        assert!(matches!(parse_symbol_config::<f64>(bad_term), Err(Error::Schema(_))));
    }

    #[test]
    fn invalid_self_map_propagates() {
        let text = "n = 1\nphi = [{ kind = \"affine\", c0 = [0.5, 0.0], c = [[1.0, 0.0]] }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }]";
        assert!(matches!(parse_symbol_config::<f64>(text), Err(Error::InvalidSelfMap { coordinate: 1, .. })));
    }

    #[test]
    fn mobius_source_is_one_based() {
        let ok = "n = 2\nphi = [{ kind = \"mobius\", a = [0.2, 0.0], source = 2 }, { kind = \"mobius\", a = [0.0, 0.0], source = 1 }]\npsi = [{ kind = \"constant\", value = [0.0, 0.0] }, { kind = \"constant\", value = [0.0, 0.0] }]";
        let (phi, _) = parse_symbol_config::<f64>(ok).unwrap();
        assert!(phi.coords()[0].depends_on(1));
        let bad = ok.replace("source = 2", "source = 3");
        assert!(matches!(parse_symbol_config::<f64>(&bad), Err(Error::Schema(_))));
        let zero = ok.replace("source = 2", "source = 0");
        assert!(matches!(parse_symbol_config::<f64>(&zero), Err(Error::Schema(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        let text = r#"
            n = 2
            phi = [
                { kind = "mobius", a = [0.2, -0.1], rotation = [0.0, 1.0], source = 2 },
                { kind = "polynomial", terms = [{ exponents = [1, 1], coeff = [0.5, 0.0] }] },
            ]
            psi = [
                { kind = "constant", value = [0.1, 0.2] },
                { kind = "affine", c0 = [0.1, 0.0], c = [[0.2, 0.0], [0.0, 0.3]] },
            ]
        "#;
        let cfg = SymbolConfig::from_toml(text).unwrap();
        let (phi, psi) = cfg.to_maps::<f64>().unwrap();
        let back = SymbolConfig::from_maps(&phi, &psi);
        assert_eq!(back, cfg);
        assert_eq!(SymbolConfig::from_toml(&back.to_toml()).unwrap(), cfg);
    }
}
