use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::Operator;
use crate::poly::OpPoly;
use crate::scalar::Rational;

type Sampler = Arc<dyn Fn(f64) -> Matrix<f64> + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Polynomial(OpPoly<Matrix<Rational>>),
    Sampled(Sampler),
}

/// A square-matrix field on the interval [x₀, x].
#[derive(Clone)]
pub struct MatrixField {
    kind: Kind,
    dim: usize,
    x0: Rational,
    x: Rational,
}

impl MatrixField {
    /// An exact polynomial field.
    pub fn polynomial(a: OpPoly<Matrix<Rational>>, x0: Rational, x: Rational) -> Result<Self> {
        let dim = a.coeff(0).rows();
        if !a.coeff(0).is_square() {
            return Err(Error::InvalidArgument("field values must be square".into()));
        }
        Self::checked(Kind::Polynomial(a), dim, x0, x)
    }

    /// A field known only through its values; float-only.
    pub fn sampled(dim: usize, f: impl Fn(f64) -> Matrix<f64> + Send + Sync + 'static, x0: f64, x: f64) -> Result<Self> {
        let conv = |v: f64| Rational::from_float(v).ok_or_else(|| Error::InvalidArgument(format!("non-finite endpoint {v}")));
        Self::checked(Kind::Sampled(Arc::new(f)), dim, conv(x0)?, conv(x)?)
    }

    fn checked(kind: Kind, dim: usize, x0: Rational, x: Rational) -> Result<Self> {
        if x < x0 {
            return Err(Error::InvalidArgument("interval end precedes its start".into()));
        }
        Ok(Self { kind, dim, x0, x })
    }

    /// `X + x·Y` on [0, x].
    pub fn linear(xm: Matrix<Rational>, ym: Matrix<Rational>, x: Rational) -> Result<Self> {
        Self::polynomial(OpPoly::from_coeffs(vec![xm, ym]), Rational::from_integer(0.into()), x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn x0_f64(&self) -> f64 {
        self.x0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn x_f64(&self) -> f64 {
        self.x.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Polynomial(_))
    }

    pub fn as_poly(&self) -> Result<&OpPoly<Matrix<Rational>>> {
        match &self.kind {
            Kind::Polynomial(p) => Ok(p),
            Kind::Sampled(_) => Err(Error::Unsupported("exact operation on a sampled field".into())),
        }
    }

    /// A(ξ) in double precision.
    pub fn at(&self, xi: f64) -> Matrix<f64> {
        match &self.kind {
            Kind::Polynomial(p) => {
                let c: Vec<Matrix<f64>> = p.coeffs().iter().map(|m| m.to_f64()).collect();
                c.iter().rev().fold(Matrix::zeros(self.dim, self.dim), |acc, m| acc.map(|v| v * xi).add(m))
            }
            Kind::Sampled(f) => f(xi),
        }
    }
}

impl fmt::Debug for MatrixField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            Kind::Polynomial(p) => format!("{p:?}"),
            Kind::Sampled(_) => "<sampled>".to_string(),
        };
        f.debug_struct("MatrixField")
            .field("kind", &kind)
            .field("dim", &self.dim)
            .field("x0", &self.x0)
            .field("x", &self.x)
            .finish()
    }
}
