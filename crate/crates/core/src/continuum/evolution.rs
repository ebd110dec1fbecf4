use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::Operator;

use super::field::MatrixField;

type F = Matrix<f64>;

fn axpy(y: &F, a: f64, x: &F) -> F {
    y.add(&x.map(|v| v * a))
}

/// Classical RK4 for Y' = f(ξ, Y) from `start` over `steps` steps of size
/// `h`; returns Y at every grid point including the start.
pub fn rk4_path(start: f64, h: f64, steps: usize, init: F, f: impl Fn(f64, &F) -> F) -> Vec<F> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = init;
    out.push(y.clone());
    for k in 0..steps {
        let t = start + k as f64 * h;
        let k1 = f(t, &y);
        let k2 = f(t + h / 2.0, &axpy(&y, h / 2.0, &k1));
        let k3 = f(t + h / 2.0, &axpy(&y, h / 2.0, &k2));
        let k4 = f(t + h, &axpy(&y, h, &k3));
        let incr = k1.add(&k2.map(|v| 2.0 * v)).add(&k3.map(|v| 2.0 * v)).add(&k4);
        y = axpy(&y, h / 6.0, &incr);
        out.push(y.clone());
    }
    out
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &F) -> F {
    let norm = a.max_abs() * a.rows() as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.map(|v| v / f64::from(2u32.pow(squarings)));
    let mut term = F::identity(a.rows());
    let mut sum = term.clone();
    for k in 1..=18 {
        term = term.mul(&scaled).map(|v| v / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteDifference {
    /// (Y(x+δ) − Y(x))/δ, first order.
    Forward,
    /// (Y(x+δ) − Y(x−δ))/2δ, second order.
    Central,
}

/// Values of Y at x − δ, x, x + δ. The solution is integrated from x₀ with
/// steps no longer than δ/4, landing exactly on the three points.
fn three_points(field_x0: f64, x: f64, delta: f64, init: F, f: impl Fn(f64, &F) -> F + Copy) -> Result<[F; 3]> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {delta}")));
    }
    let approach = x - delta - field_x0;
    let y_before = if approach.abs() < 1e-15 {
        init
    } else {
        let n = (approach.abs() / (delta / 4.0)).ceil().max(1.0) as usize;
        let h = approach / n as f64;
        rk4_path(field_x0, h, n, init, f).pop().expect("non-empty path")
    };
    let path = rk4_path(x - delta, delta / 4.0, 8, y_before, f);
    Ok([path[0].clone(), path[4].clone(), path[8].clone()])
}

fn derivative(points: &[F; 3], delta: f64, scheme: FiniteDifference) -> F {
    match scheme {
        FiniteDifference::Forward => points[2].sub(&points[1]).map(|v| v / delta),
        FiniteDifference::Central => points[2].sub(&points[0]).map(|v| v / (2.0 * delta)),
    }
}

/// 𝕋 = T K T̂ with ∂T = αAT, ∂T̂ = αT̂A (so T̂(ξ, α) = T^{-1}(ξ, −α)), and the
/// max-entry residual of ∂𝕋 = αA𝕋 + α𝕋A at the field's end point, the
/// derivative taken by finite differences of step δ.
pub fn open_evolution_residual(field: &MatrixField, k: &F, alpha: f64, delta: f64, scheme: FiniteDifference) -> Result<f64> {
    let dim = field.dim();
    crate::operator::ensure_compatible(k, &F::zeros(dim, dim))?;
    let (x0, x) = (field.x0_f64(), field.x_f64());
    let t = three_points(x0, x, delta, F::identity(dim), |s, y| field.at(s).mul(y).map(|v| v * alpha))?;
    let th = three_points(x0, x, delta, F::identity(dim), |s, y| y.mul(&field.at(s)).map(|v| v * alpha))?;
    let tt: [F; 3] = std::array::from_fn(|i| t[i].mul(k).mul(&th[i]));
    let a = field.at(x);
    let rhs = a.mul(&tt[1]).add(&tt[1].mul(&a)).map(|v| v * alpha);
    Ok(derivative(&tt, delta, scheme).sub(&rhs).max_abs())
}

/// G = T̂ G₀ T^{-1} with ∂T̂ = αÂT̂ and ∂T^{-1} = −αT^{-1}A, and the residual
/// of ∂G = αÂG − αGA at the end point.
pub fn gauge_evolution_residual(
    field: &MatrixField,
    target: &MatrixField,
    g0: &F,
    alpha: f64,
    delta: f64,
    scheme: FiniteDifference,
) -> Result<f64> {
    let dim = field.dim();
    if target.dim() != dim || field.x0() != target.x0() || field.x() != target.x() {
        return Err(Error::InvalidArgument("fields must share dimension and interval".into()));
    }
    let (x0, x) = (field.x0_f64(), field.x_f64());
    let th = three_points(x0, x, delta, F::identity(dim), |s, y| target.at(s).mul(y).map(|v| v * alpha))?;
    let tinv = three_points(x0, x, delta, F::identity(dim), |s, y| y.mul(&field.at(s)).map(|v| -v * alpha))?;
    let g: [F; 3] = std::array::from_fn(|i| th[i].mul(g0).mul(&tinv[i]));
    let rhs = target.at(x).mul(&g[1]).sub(&g[1].mul(&field.at(x))).map(|v| v * alpha);
    Ok(derivative(&g, delta, scheme).sub(&rhs).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::OpPoly;
    use crate::scalar::int;

    fn constant_field() -> MatrixField {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(0)]]);
        MatrixField::polynomial(OpPoly::constant(a), int(0), int(1)).unwrap()
    }

    fn linear_field() -> MatrixField {
        MatrixField::linear(
            Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(0)]]),
            Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(3), int(-2)]]),
            int(1),
        )
        .unwrap()
    }

    #[test]
    fn rk4_matches_the_exponential() {
        let f = constant_field();
        let a = f.at(0.0);
        let path = rk4_path(0.0, 0.01, 100, F::identity(2), |_, y| a.mul(y));
        assert!(path[100].sub(&expm(&a)).max_abs() < 1e-8);
    }

    #[test]
    fn open_constant_field() {
        let f = constant_field();
        let r = open_evolution_residual(&f, &F::identity(2), 1.0, 1e-4, FiniteDifference::Central).unwrap();
        assert!(r <= 1e-6, "{r}");
        assert_eq!(open_evolution_residual(&f, &F::identity(2), 0.0, 1e-4, FiniteDifference::Forward).unwrap(), 0.0);
    }

    #[test]
    fn forward_difference_is_first_order() {
        let f = linear_field();
        let k = Matrix::from_rows(vec![vec![2.0, 1.0], vec![0.0, 1.0]]);
        let r1 = open_evolution_residual(&f, &k, 0.5, 1e-2, FiniteDifference::Forward).unwrap();
        let r2 = open_evolution_residual(&f, &k, 0.5, 5e-3, FiniteDifference::Forward).unwrap();
        let ratio = r1 / r2;
        assert!((1.8..=2.2).contains(&ratio), "{ratio}");
    }

    #[test]
    fn gauge_evolution() {
        let a = linear_field();
        let b = constant_field();
        let g0 = Matrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 3.0]]);
        let r = gauge_evolution_residual(&a, &b, &g0, 0.7, 1e-4, FiniteDifference::Central).unwrap();
        assert!(r <= 1e-6, "{r}");
    }
}
