use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::expansion::{monodromy_direct, Direction, SiteOperatorFamily};
use crate::matrix::Matrix;
use crate::operator::Operator;
use crate::scalar::Rational;
use crate::series::series_log;

use super::exact::magnus_continuous;
use super::field::MatrixField;

/// Number of sites covering [x₀, x] with step δ, tolerating round-off in δ.
fn site_count(len: f64, delta: f64) -> Result<usize> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {delta}")));
    }
    let ratio = len / delta;
    Ok((ratio + 1e-9 * ratio.max(1.0)).floor() as usize)
}

/// 𝕃_n = 1 + αδA(x₀ + (n−1)δ): left-endpoint sampling.
pub fn discretize(field: &MatrixField, delta: f64) -> Result<SiteOperatorFamily<Matrix<f64>>> {
    let x0 = field.x0_f64();
    let sites = site_count(field.x_f64() - x0, delta)?;
    let dim = field.dim();
    let mut fam = SiteOperatorFamily::new(&Matrix::zeros(dim, dim), sites, Direction::Forward);
    for n in 1..=sites {
        let a = field.at(x0 + (n - 1) as f64 * delta);
        fam.set(n, 1, a.map(|v| v * delta))?;
    }
    Ok(fam)
}

/// Exact discretization of a polynomial field with a rational step.
pub fn discretize_exact(field: &MatrixField, delta: &Rational) -> Result<SiteOperatorFamily<Matrix<Rational>>> {
    let a = field.as_poly()?;
    if *delta <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let sites = ((field.x() - field.x0()) / delta).floor().to_usize().unwrap_or(0);
    let dim = field.dim();
    let mut fam = SiteOperatorFamily::new(&Matrix::zeros(dim, dim), sites, Direction::Forward);
    for n in 1..=sites {
        let xn = field.x0() + delta * Rational::from_integer(((n - 1) as i64).into());
        fam.set(n, 1, a.eval(&xn).scale(delta))?;
    }
    Ok(fam)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub delta: f64,
    /// Max-entry error of Q^{(m)}, index m − 1.
    pub errors: Vec<f64>,
    /// log₂ of the error ratio to the previous row; `None` on the first row
    /// or when either error is zero.
    pub rates: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub orders: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Mean of the last two successive rates for order `m`.
    pub fn rate(&self, m: usize) -> Option<f64> {
        let r: Vec<f64> = self.rows.iter().rev().take(2).filter_map(|row| row.rates.get(m - 1).copied().flatten()).collect();
        (r.len() == 2).then(|| (r[0] + r[1]) / 2.0)
    }

    pub const CSV_HEADER: &'static str = "delta,err_q1,err_q2,err_q3,rate_q1,rate_q2,rate_q3";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![format!("{}", row.delta)];
            for m in 0..3 {
                cells.push(row.errors.get(m).map(|e| format!("{e:.6e}")).unwrap_or_default());
            }
            for m in 0..3 {
                cells.push(row.rates.get(m).copied().flatten().map(|r| format!("{r:.4}")).unwrap_or_default());
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Discrete Q^{(m)} (coefficient of α^m of log T) against the exact
/// continuous Q^{(m)}(x) for each step in `deltas`.
pub fn convergence_study(field: &MatrixField, deltas: &[f64], orders: usize) -> Result<ConvergenceTable> {
    if deltas.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: deltas.len(),
        });
    }
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("steps must be strictly decreasing".into()));
    }
    if orders == 0 || orders > 3 {
        return Err(Error::InvalidArgument(format!("orders must lie in 1..=3, got {orders}")));
    }
    let exact = magnus_continuous(field, orders)?;
    let reference: Vec<Matrix<f64>> = exact.explicit.iter().map(|q| q.eval(field.x()).to_f64()).collect();
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &delta in deltas {
        let fam = discretize(field, delta)?;
        let q = series_log(&monodromy_direct(&fam, orders))?;
        let errors: Vec<f64> = (1..=orders).map(|m| q.coeff(m).sub(&reference[m - 1]).max_abs()).collect();
        let rates = match rows.last() {
            None => vec![None; orders],
            Some(prev) => prev
                .errors
                .iter()
                .zip(&errors)
                .map(|(&p, &e)| (p > 0.0 && e > 0.0).then(|| (p / e).log2() / (prev.delta / delta).log2()))
                .collect(),
        };
        rows.push(ConvergenceRow { delta, errors, rates });
    }
    Ok(ConvergenceTable { orders, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::series::series_log;

    fn field() -> MatrixField {
        MatrixField::linear(
            Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(0)]]),
            Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(3), int(-2)]]),
            int(1),
        )
        .unwrap()
    }

    #[test]
    fn constant_field_riemann_sum_is_exact() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(-1)]]);
        let f = MatrixField::polynomial(crate::poly::OpPoly::constant(a.clone()), int(0), int(3)).unwrap();
        let fam = discretize_exact(&f, &rat(1, 4)).unwrap();
        assert_eq!(fam.sites(), 12);
        let q = series_log(&monodromy_direct(&fam, 1)).unwrap();
        assert_eq!(q.coeff(1), &a.scale(&int(3)));
        let single = discretize_exact(&f, &int(3)).unwrap();
        assert_eq!(single.sites(), 1);
        assert_eq!(single.coeff(1, 1), a.scale(&int(3)));
        let t = convergence_study(&f, &[0.5, 0.25, 0.125], 1).unwrap();
        assert!(t.rows.iter().all(|r| r.errors[0] < 1e-12));
    }

    #[test]
    fn linear_field_rates() {
        let deltas: Vec<f64> = (2..=6).map(|k| 0.5f64.powi(k)).collect();
        let t = convergence_study(&field(), &deltas, 3).unwrap();
        for m in 1..=2 {
            let r = t.rate(m).unwrap();
            assert!((0.85..=1.15).contains(&r), "order {m}: rate {r}");
        }
        assert!(t.rate(3).unwrap() >= 0.85);
        assert!(t.rows.windows(2).all(|w| w[1].errors[1] < w[0].errors[1]));
        let csv = t.to_csv();
        assert!(csv.starts_with("delta,err_q1,err_q2,err_q3,rate_q1,rate_q2,rate_q3\n"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(convergence_study(&field(), &[0.5, 0.25], 2).is_err());
        assert!(convergence_study(&field(), &[0.25, 0.5, 0.1], 2).is_err());
    }
}
