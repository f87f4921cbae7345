use num_complex::Complex;

use crate::error::{Error, Result};
use crate::metrics::DiscPoint;
use crate::scalar::Scalar;

/// One term `coeff · z₁^e₁ ⋯ zₙ^eₙ` of a polynomial in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial<T: Scalar> {
    pub exponents: Vec<u32>,
    pub coeff: Complex<T>,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(exponents: Vec<u32>, coeff: Complex<T>) -> Self {
        Self { exponents, coeff }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    #[inline]
    fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        let mut acc = self.coeff;
        for (&e, &zk) in self.exponents.iter().zip(z) {
            if e > 0 {
                acc = acc * zk.powu(e);
            }
        }
        acc
    }
}

/// Polynomial in `n` complex variables, stored as a finite list of monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Scalar> {
    n: usize,
    terms: Vec<Monomial<T>>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(n: usize, terms: Vec<Monomial<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structure("polynomial needs at least one variable".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if t.exponents.len() != n {
                return Err(Error::Structure(format!(
                    "term {} has {} exponents, expected {n}",
                    i + 1,
                    t.exponents.len()
                )));
            }
            if !(t.coeff.re.is_finite() && t.coeff.im.is_finite()) {
                return Err(Error::Structure(format!("term {} has a non-finite coefficient", i + 1)));
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Monomial<T>] {
        &self.terms
    }

    /// Maximum total degree over terms with a nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|t| t.coeff != Complex::new(T::zero(), T::zero()))
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        self.terms.iter().fold(Complex::new(T::zero(), T::zero()), |acc, t| acc + t.eval(z))
    }

    /// Exact partial derivative `∂/∂z_j` (0-based `j`).
    pub fn derivative(&self, j: usize) -> Result<Self> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange { index: j + 1, n: self.n });
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exponents[j] > 0)
            .map(|t| {
                let mut exponents = t.exponents.clone();
                let e = exponents[j];
                exponents[j] = e - 1;
                Monomial::new(exponents, t.coeff * T::lit(f64::from(e)))
            })
            .collect();
        Self::new(self.n, terms)
    }

    pub fn depends_on(&self, k: usize) -> bool {
        self.terms.iter().any(|t| t.exponents[k] > 0 && t.coeff != Complex::new(T::zero(), T::zero()))
    }

    /// Sum of coefficient moduli; an upper bound for the sup over the closed polydisc.
    pub fn coefficient_l1(&self) -> T {
        self.terms.iter().map(|t| t.coeff.norm()).fold(T::zero(), |a, b| a + b)
    }

    /// Same polynomial with every coefficient multiplied by `s`.
    pub fn scaled(&self, s: T) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|t| Monomial::new(t.exponents.clone(), t.coeff * s)).collect() }
    }
}

/// A coordinate function `φ_j: Uⁿ → ℂ` drawn from one of the supported closed families.
///
/// Variable indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub enum CoordinateFunction<T: Scalar> {
    Constant(Complex<T>),
    /// `rotation · (z_source − a) / (1 − ā·z_source)`.
    Mobius {
        a: DiscPoint<T>,
        rotation: Complex<T>,
        source: usize,
    },
    /// `c0 + Σ_k c_k z_k`.
    Affine {
        c0: Complex<T>,
        c: Vec<Complex<T>>,
    },
    Polynomial(Polynomial<T>),
}

impl<T: Scalar> CoordinateFunction<T> {
    pub fn constant(value: Complex<T>) -> Self {
        Self::Constant(value)
    }

    pub fn mobius(a: DiscPoint<T>, rotation: Complex<T>, source: usize) -> Result<Self> {
        if (rotation.norm() - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::Structure(format!(
                "Möbius rotation must be unimodular, got |{rotation}| = {}",
                rotation.norm()
            )));
        }
        Ok(Self::Mobius { a, rotation, source })
    }

    /// `scale · z_k` as an affine coordinate in `n` variables.
    pub fn scaled_projection(n: usize, k: usize, scale: Complex<T>) -> Self {
        let mut c = vec![Complex::new(T::zero(), T::zero()); n];
        if k < n {
            c[k] = scale;
        }
        Self::Affine { c0: Complex::new(T::zero(), T::zero()), c }
    }

    pub fn projection(n: usize, k: usize) -> Self {
        Self::scaled_projection(n, k, Complex::new(T::one(), T::zero()))
    }

    /// Checks that indices and table shapes fit a map of dimension `n`.
    pub fn check_structure(&self, n: usize) -> Result<()> {
        match self {
            Self::Constant(c) => {
                if c.re.is_finite() && c.im.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Structure("non-finite constant".into()))
                }
            }
            Self::Mobius { source, .. } => {
                if *source < n {
                    Ok(())
                } else {
                    Err(Error::IndexOutOfRange { index: source + 1, n })
                }
            }
            Self::Affine { c0, c } => {
                if c.len() != n {
                    return Err(Error::Structure(format!(
                        "affine coordinate has {} coefficients, expected {n}",
                        c.len()
                    )));
                }
                if std::iter::once(c0).chain(c).all(|v| v.re.is_finite() && v.im.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::Structure("non-finite affine coefficient".into()))
                }
            }
            Self::Polynomial(p) => {
                if p.n() == n {
                    Ok(())
                } else {
                    Err(Error::DimensionMismatch { expected: n, actual: p.n() })
                }
            }
        }
    }

    #[inline]
    pub fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        match self {
            Self::Constant(c) => *c,
            Self::Mobius { a, rotation, source } => {
                let zk = z[*source];
                let a = a.value();
                *rotation * (zk - a) / (Complex::new(T::one(), T::zero()) - a.conj() * zk)
            }
            Self::Affine { c0, c } => c.iter().zip(z).fold(*c0, |acc, (&ck, &zk)| acc + ck * zk),
            Self::Polynomial(p) => p.eval(z),
        }
    }

    pub fn depends_on(&self, k: usize) -> bool {
        let zero = Complex::new(T::zero(), T::zero());
        match self {
            Self::Constant(_) => false,
            Self::Mobius { source, .. } => *source == k,
            Self::Affine { c, .. } => c.get(k).is_some_and(|&ck| ck != zero),
            Self::Polynomial(p) => p.depends_on(k),
        }
    }

    /// Variables this coordinate actually depends on, in increasing order.
    pub fn dependencies(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&k| self.depends_on(k)).collect()
    }

    /// `Some(value)` when the function does not depend on any variable.
    pub fn constant_value(&self, n: usize) -> Option<Complex<T>> {
        if self.dependencies(n).is_empty() {
            Some(self.eval(&vec![Complex::new(T::zero(), T::zero()); n]))
        } else {
            None
        }
    }

    /// The coordinate as a polynomial in `n` variables; `None` for Möbius coordinates.
    pub fn as_polynomial(&self, n: usize) -> Option<Polynomial<T>> {
        let unit = |k: Option<usize>| {
            let mut e = vec![0u32; n];
            if let Some(k) = k {
                e[k] = 1;
            }
            e
        };
        match self {
            Self::Polynomial(p) => Some(p.clone()),
            Self::Constant(c) => Polynomial::new(n, vec![Monomial::new(unit(None), *c)]).ok(),
            Self::Affine { c0, c } => {
                let terms = std::iter::once(Monomial::new(unit(None), *c0))
                    .chain(c.iter().enumerate().map(|(k, &ck)| Monomial::new(unit(Some(k)), ck)))
                    .collect();
                Polynomial::new(n, terms).ok()
            }
            Self::Mobius { .. } => None,
        }
    }

    /// Evaluator for `w ↦ rotation·(w − a)/(1 − āw)` applied after this coordinate.
    /// The supported families are not closed under composition, hence a closure.
    pub fn post_compose_automorphism(
        &self,
        a: DiscPoint<T>,
        rotation: Complex<T>,
    ) -> impl Fn(&[Complex<T>]) -> Complex<T> + '_ {
        move |z| {
            let w = self.eval(z);
            let a = a.value();
            rotation * (w - a) / (Complex::new(T::one(), T::zero()) - a.conj() * w)
        }
    }
}
