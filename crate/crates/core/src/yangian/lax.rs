use crate::error::{Error, Result};
use crate::matrix::{permutation_op, Matrix};
use crate::operator::Operator;
use crate::scalar::Rational;
use crate::series::AlphaSeries;

use super::matrix_poly::MatrixPoly;

type M = Matrix<Rational>;

/// Matrices representing the gl_𝒩 generators ℙ_{ij}, normalized so that
/// [ℙ_{ij}, ℙ_{kl}] = δ_{il}ℙ_{kj} − δ_{kj}ℙ_{il}.
#[derive(Clone, Debug, PartialEq)]
pub struct GlRep {
    n: usize,
    dim: usize,
    gens: Vec<M>,
}

impl GlRep {
    /// ℙ_{ij} = e_{ji} on ℂ^𝒩.
    pub fn fundamental(n: usize) -> Self {
        let gens = (0..n * n).map(|k| M::unit(n, k % n, k / n)).collect();
        Self { n, dim: n, gens }
    }

    /// ℙ_{ij} = e_{ji}⊗1 + 1⊗e_{ji} on ℂ^𝒩⊗ℂ^𝒩.
    pub fn tensor_square(n: usize) -> Self {
        let id = M::identity(n);
        let gens = (0..n * n)
            .map(|k| {
                let e = M::unit(n, k % n, k / n);
                e.kron(&id).add(&id.kron(&e))
            })
            .collect();
        Self { n, dim: n * n, gens }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, i: usize, j: usize) -> &M {
        &self.gens[i * self.n + j]
    }

    /// ℙ = Σ e_{ij} ⊗ ℙ_{ij} on aux ⊗ quantum space.
    pub fn p_matrix(&self) -> M {
        let mut out = M::zeros(self.n * self.dim, self.n * self.dim);
        for i in 0..self.n {
            for j in 0..self.n {
                out = out.add(&M::unit(self.n, i, j).kron(self.generator(i, j)));
            }
        }
        out
    }
}

/// 𝕃(λ) = 1 + Σ_{m≥1} λ^{−m} L^{(m)} acting on aux ⊗ one quantum slot.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxRep {
    rep: GlRep,
    coeffs: Vec<M>,
}

impl LaxRep {
    /// 𝕃 = 1 + λ^{−1}𝒫.
    pub fn fundamental(n: usize) -> Self {
        Self {
            rep: GlRep::fundamental(n),
            coeffs: vec![permutation_op(n)],
        }
    }

    /// 𝕃 = 1 + λ^{−1}ℙ in an arbitrary representation.
    pub fn linear(rep: GlRep) -> Self {
        let p = rep.p_matrix();
        Self { rep, coeffs: vec![p] }
    }

    /// 𝕃 = Σ_m λ^{−m}ℙ^m = (1 − ℙ/λ)^{−1}, truncated after `degree`.
    pub fn geometric(rep: GlRep, degree: usize) -> Self {
        let p = rep.p_matrix();
        let mut coeffs = Vec::with_capacity(degree);
        let mut acc = p.clone();
        for _ in 0..degree {
            coeffs.push(acc.clone());
            acc = acc.mul(&p);
        }
        Self { rep, coeffs }
    }

    /// The trivial solution 𝕃 = 1.
    pub fn trivial(rep: GlRep) -> Self {
        Self { rep, coeffs: Vec::new() }
    }

    pub fn from_coeffs(rep: GlRep, coeffs: Vec<M>) -> Result<Self> {
        let d = rep.n * rep.dim;
        if let Some(c) = coeffs.iter().find(|c| c.rows() != d || c.cols() != d) {
            return Err(Error::ShapeMismatch(c.shape(), M::zeros(d, d).shape()));
        }
        Ok(Self { rep, coeffs })
    }

    pub fn rep(&self) -> &GlRep {
        &self.rep
    }

    pub fn aux_dim(&self) -> usize {
        self.rep.n
    }

    pub fn quantum_dim(&self) -> usize {
        self.rep.dim
    }

    pub fn dim(&self) -> usize {
        self.rep.n * self.rep.dim
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// L^{(m)}; L^{(0)} is the identity and degrees past the last stored
    /// coefficient vanish.
    pub fn coeff(&self, m: usize) -> M {
        match m {
            0 => M::identity(self.dim()),
            _ => self.coeffs.get(m - 1).cloned().unwrap_or_else(|| M::zeros(self.dim(), self.dim())),
        }
    }

    /// 𝕃 as a series in α = 1/λ.
    pub fn series(&self, order: usize) -> AlphaSeries<M> {
        AlphaSeries::from_terms(&M::zeros(self.dim(), self.dim()), order, (0..=order).map(|m| (m, self.coeff(m))))
    }

    /// 𝕃 as a Laurent polynomial in λ (one variable).
    pub fn as_poly(&self) -> MatrixPoly {
        let mut p = MatrixPoly::constant(M::identity(self.dim()), 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            p = p.add(&MatrixPoly::monomial(c.clone(), (-(k as i32) - 1, 0), 1)).expect("same shape");
        }
        p
    }
}
