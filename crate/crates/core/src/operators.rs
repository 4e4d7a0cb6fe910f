//! Operators `B_n(f; z) = sum_k F[n][k](z) f(k/n)`, their moments and
//! Voronovskaja-type limit estimators.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{eval_basis_point, fill_basis};
use crate::bernstein::{binomial, check_domain, ipow};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::functions::SmoothFn;

/// Node values `f(k/n)` for `k = 0..=n`, ready to be combined with a basis.
#[derive(Debug, Clone)]
pub struct OperatorSample {
    family: Family,
    node_values: Vec<f64>,
}

impl OperatorSample {
    /// `node_values` must hold `degree + 1 >= 2` entries.
    pub fn new(family: Family, node_values: Vec<f64>) -> Result<Self> {
        if node_values.len() < 2 {
            return Err(Error::TooFewValues { len: node_values.len(), min: 2 });
        }
        Ok(Self { family, node_values })
    }

    /// Samples `f` at `k/n`.
    pub fn from_fn(family: Family, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let nf = n as f64;
        Self::new(family, (0..=n).map(|k| f(k as f64 / nf)).collect())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn degree(&self) -> usize {
        self.node_values.len() - 1
    }

    pub fn node_values(&self) -> &[f64] {
        &self.node_values
    }
}

/// `sum_k F[n][k](z) node_values[k]`, summed left to right.
pub fn apply_operator(sample: &OperatorSample, z: f64) -> Result<f64> {
    let basis = eval_basis_point(&sample.family, sample.degree(), z)?;
    Ok(basis.dot(&sample.node_values))
}

/// How a moment was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentRoute {
    Direct,
    Recurrence,
}

/// `B_n(t^power; z)` for the alpha family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentValue {
    pub power: usize,
    pub degree: usize,
    pub alpha: f64,
    pub z: f64,
    pub value: f64,
    pub route: MomentRoute,
}

/// Brute-force moment `sum_k (k/n)^j F[n][k](z)` with `(0/n)^0 = 1`.
pub fn moment_direct(n: usize, j: usize, alpha: f64, z: f64) -> Result<MomentValue> {
    let family = Family::alpha(alpha)?;
    let basis = eval_basis_point(&family, n, z)?;
    let nf = n as f64;
    let value = basis
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| ipow(k as f64 / nf, j) * v)
        .sum();
    Ok(MomentValue { power: j, degree: n, alpha, z, value, route: MomentRoute::Direct })
}

/// Moments `B_d(t^p; z)` for `2 <= d <= degree` and `0 <= p <= max_power`,
/// filled by the degree recurrence
///
/// ```text
/// M[d][p] = (1 - 1/d)^p [ (1 - z) M[d-1][p] + z sum_k C(p,k) (d-1)^-k M[d-1][p-k] ]
/// ```
///
/// starting from a directly summed degree-2 row. The table is owned by the
/// caller, so concurrent builds never share state.
#[derive(Debug, Clone)]
pub struct MomentTable {
    alpha: f64,
    z: f64,
    max_power: usize,
    // rows[d - 2][p]
    rows: Vec<Vec<f64>>,
}

impl MomentTable {
    pub fn build(degree: usize, max_power: usize, alpha: f64, z: f64) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidDegree(degree));
        }
        check_domain(z)?;
        let base = (0..=max_power)
            .map(|p| moment_direct(2, p, alpha, z).map(|m| m.value))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::with_capacity(degree - 1);
        rows.push(base);
        for d in 3..=degree {
            let prev = &rows[rows.len() - 1];
            let prev_deg = (d - 1) as f64;
            let shrink = 1.0 - 1.0 / d as f64;
            let mut row = vec![0.0; max_power + 1];
            for (p, slot) in row.iter_mut().enumerate() {
                let mut inner = 0.0;
                for k in 0..=p {
                    inner += binomial(p as i64, k as i64) / ipow(prev_deg, k) * prev[p - k];
                }
                *slot = ipow(shrink, p) * ((1.0 - z) * prev[p] + z * inner);
            }
            rows.push(row);
        }
        Ok(Self { alpha, z, max_power, rows })
    }

    pub fn degree(&self) -> usize {
        self.rows.len() + 1
    }

    pub fn max_power(&self) -> usize {
        self.max_power
    }

    /// `B_d(t^p; z)`, or `None` outside the table.
    pub fn get(&self, degree: usize, power: usize) -> Option<f64> {
        if degree < 2 || power > self.max_power {
            return None;
        }
        self.rows.get(degree - 2).map(|row| row[power])
    }

    pub fn moment(&self, degree: usize, power: usize) -> Option<MomentValue> {
        self.get(degree, power).map(|value| MomentValue {
            power,
            degree,
            alpha: self.alpha,
            z: self.z,
            value,
            route: MomentRoute::Recurrence,
        })
    }
}

/// `B_n(t^p; z)` through the degree recurrence.
pub fn moment_recurrence(n: usize, p: usize, alpha: f64, z: f64) -> Result<MomentValue> {
    let table = MomentTable::build(n, p, alpha, z)?;
    Ok(table.moment(n, p).expect("table covers requested entry"))
}

/// Scaled residuals `n (operator residual)` over a degree sequence together
/// with the analytic limit.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub degree_sequence: Vec<usize>,
    pub estimates: Vec<f64>,
    pub target: f64,
    pub z: f64,
}

impl LimitEstimate {
    pub fn abs_errors(&self) -> Vec<f64> {
        self.estimates.iter().map(|e| libm::fabs(e - self.target)).collect()
    }
}

fn check_limit_inputs(z: f64, degrees: &[usize]) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::InvalidParameter("z must lie in the open interval (0, 1)"));
    }
    let increasing = degrees.windows(2).all(|w| w[0] < w[1]);
    if degrees.is_empty() || degrees[0] < 2 || !increasing {
        return Err(Error::InvalidDegrees { min: 2 });
    }
    Ok(())
}

/// `n (B_n(f; z) - f(z))` against the limit `z(1 - z) f''(z) / 2`.
pub fn voronovskaja_estimate(
    f: &dyn SmoothFn,
    alpha: f64,
    z: f64,
    degrees: &[usize],
) -> Result<LimitEstimate> {
    check_limit_inputs(z, degrees)?;
    let family = Family::alpha(alpha)?;
    let mut basis = Vec::new();
    let mut nodes = Vec::new();
    let estimates = degrees
        .iter()
        .map(|&n| {
            fill_basis(family.spec(), n, z, &mut basis)?;
            sample_into(&mut nodes, n, |t| f.value(t));
            let image: f64 = basis.iter().zip(&nodes).map(|(b, v)| b * v).sum();
            Ok(n as f64 * (image - f.value(z)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitEstimate {
        degree_sequence: degrees.to_vec(),
        estimates,
        target: 0.5 * z * (1.0 - z) * f.d2(z),
        z,
    })
}

/// `n (B_n(fh; z) - B_n(f; z) B_n(h; z))` against the limit
/// `z(1 - z) f'(z) h'(z)`.
pub fn gruss_voronovskaja_estimate(
    f: &dyn SmoothFn,
    h: &dyn SmoothFn,
    alpha: f64,
    z: f64,
    degrees: &[usize],
) -> Result<LimitEstimate> {
    check_limit_inputs(z, degrees)?;
    let family = Family::alpha(alpha)?;
    let mut basis = Vec::new();
    let estimates = degrees
        .iter()
        .map(|&n| {
            fill_basis(family.spec(), n, z, &mut basis)?;
            let nf = n as f64;
            let (mut bf, mut bh, mut bfh) = (0.0, 0.0, 0.0);
            for (k, w) in basis.iter().enumerate() {
                let t = k as f64 / nf;
                let (fv, hv) = (f.value(t), h.value(t));
                bf += w * fv;
                bh += w * hv;
                bfh += w * (fv * hv);
            }
            Ok(nf * (bfh - bf * bh))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitEstimate {
        degree_sequence: degrees.to_vec(),
        estimates,
        target: z * (1.0 - z) * f.d1(z) * h.d1(z),
        z,
    })
}

fn sample_into(out: &mut Vec<f64>, n: usize, f: impl Fn(f64) -> f64) {
    let nf = n as f64;
    out.clear();
    out.extend((0..=n).map(|k| f(k as f64 / nf)));
}

/// One row of [`convergence_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub degree: usize,
    pub max_error: f64,
}

/// `max |B_n(f; z) - f(z)|` over a uniform grid of `grid` points, per degree.
pub fn convergence_table(
    f: &dyn Fn(f64) -> f64,
    family: &Family,
    degrees: &[usize],
    grid: usize,
) -> Result<Vec<ConvergenceRow>> {
    if grid < 2 {
        return Err(Error::InvalidGrid(grid));
    }
    if degrees.is_empty() || degrees[0] < 1 || !degrees.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidDegrees { min: 1 });
    }
    let last = (grid - 1) as f64;
    let mut basis = Vec::new();
    let mut nodes = Vec::new();
    degrees
        .iter()
        .map(|&n| {
            sample_into(&mut nodes, n, f);
            let mut max_error: f64 = 0.0;
            for g in 0..grid {
                let z = g as f64 / last;
                fill_basis(family.spec(), n, z, &mut basis)?;
                let image: f64 = basis.iter().zip(&nodes).map(|(b, v)| b * v).sum();
                max_error = max_error.max(libm::fabs(image - f(z)));
            }
            Ok(ConvergenceRow { degree: n, max_error })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::TestFunction;
    use approx::assert_abs_diff_eq;

    #[test]
    fn operator_examples() {
        for a in [0.0, 0.3, 1.0] {
            let fam = Family::alpha(a).unwrap();
            for n in [1, 2, 5, 11] {
                let ones = OperatorSample::from_fn(fam.clone(), n, |_| 1.0).unwrap();
                let lin = OperatorSample::from_fn(fam.clone(), n, |t| t).unwrap();
                for z in [0.0, 0.2, 0.5, 0.93, 1.0] {
                    assert_abs_diff_eq!(apply_operator(&ones, z).unwrap(), 1.0, epsilon = 1e-14);
                    assert_abs_diff_eq!(apply_operator(&lin, z).unwrap(), z, epsilon = 1e-12);
                }
            }
        }
        let sq = OperatorSample::from_fn(Family::alpha(1.0).unwrap(), 2, |t| t * t).unwrap();
        assert_eq!(apply_operator(&sq, 0.5).unwrap(), 0.375);
    }

    #[test]
    fn sample_length_checked() {
        let fam = Family::alpha(0.5).unwrap();
        assert!(matches!(
            OperatorSample::new(fam, vec![1.0]),
            Err(Error::TooFewValues { len: 1, min: 2 })
        ));
    }

    #[test]
    fn direct_moment_examples() {
        for n in [1, 3, 8] {
            for z in [0.0, 0.45, 1.0] {
                assert_abs_diff_eq!(moment_direct(n, 0, 0.6, z).unwrap().value, 1.0, epsilon = 1e-14);
                assert_abs_diff_eq!(moment_direct(n, 1, 0.6, z).unwrap().value, z, epsilon = 1e-14);
            }
        }
        let m = moment_direct(2, 2, 1.0, 0.5).unwrap();
        assert_eq!(m.value, 0.375);
        assert_eq!(m.route, MomentRoute::Direct);
    }

    #[test]
    fn recurrence_examples() {
        for n in [2, 3, 7, 12] {
            for z in [0.1, 0.5, 0.8] {
                let m = moment_recurrence(n, 1, 0.35, z).unwrap();
                assert_abs_diff_eq!(m.value, z, epsilon = 1e-14);
                assert_eq!(m.route, MomentRoute::Recurrence);
            }
        }
        let m = moment_recurrence(5, 2, 1.0, 0.3).unwrap();
        assert_abs_diff_eq!(m.value, 0.132, epsilon = 1e-15);
        let r = moment_recurrence(4, 3, 0.5, 0.6).unwrap().value;
        let d = moment_direct(4, 3, 0.5, 0.6).unwrap().value;
        assert_abs_diff_eq!(r, d, epsilon = 1e-12);
        assert_eq!(moment_recurrence(1, 2, 0.5, 0.5), Err(Error::InvalidDegree(1)));
    }

    #[test]
    fn recurrence_power_zero() {
        let m = moment_recurrence(9, 0, 0.5, 0.4).unwrap();
        assert_abs_diff_eq!(m.value, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn classical_second_moment_identity() {
        // B_n(t^2; z) - z^2 = z(1 - z)/n for the classical basis
        let est = voronovskaja_estimate(&TestFunction::Square, 1.0, 0.4, &[2, 5, 17, 64]).unwrap();
        assert_abs_diff_eq!(est.target, 0.24, epsilon = 1e-15);
        for e in &est.estimates {
            assert_abs_diff_eq!(*e, 0.24, epsilon = 1e-12);
        }
    }

    #[test]
    fn linear_functions_have_zero_residual() {
        let est = voronovskaja_estimate(&TestFunction::Identity, 0.3, 0.7, &[4, 8, 16]).unwrap();
        assert_eq!(est.target, 0.0);
        for e in &est.estimates {
            assert_abs_diff_eq!(*e, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gruss_examples() {
        let id = TestFunction::Identity;
        let est = gruss_voronovskaja_estimate(&id, &id, 1.0, 0.5, &[2, 8, 16, 100]).unwrap();
        assert_abs_diff_eq!(est.target, 0.25, epsilon = 1e-15);
        for e in &est.estimates {
            assert_abs_diff_eq!(*e, 0.25, epsilon = 1e-12);
        }
        let c = TestFunction::Constant(2.5);
        let est = gruss_voronovskaja_estimate(&c, &TestFunction::Exp, 0.4, 0.3, &[4, 8]).unwrap();
        assert_eq!(est.target, 0.0);
        for e in &est.estimates {
            assert_abs_diff_eq!(*e, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn limit_input_checks() {
        let f = TestFunction::Exp;
        assert!(voronovskaja_estimate(&f, 0.5, 0.0, &[4]).is_err());
        assert!(voronovskaja_estimate(&f, 0.5, 0.5, &[8, 4]).is_err());
        assert!(voronovskaja_estimate(&f, 0.5, 0.5, &[1, 4]).is_err());
    }

    #[test]
    fn convergence_examples() {
        let fam = Family::alpha(0.3).unwrap();
        for row in convergence_table(&|t| t, &fam, &[4, 8, 16], 101).unwrap() {
            assert!(row.max_error <= 1e-12);
        }
        let fam = Family::alpha(0.9).unwrap();
        for row in convergence_table(&|_| 3.25, &fam, &[2, 4], 101).unwrap() {
            assert!(row.max_error <= 1e-14);
        }
    }

    #[test]
    fn convergence_abs_kink_decreases() {
        let fam = Family::alpha(0.5).unwrap();
        let f = |t: f64| libm::fabs(t - 0.5);
        let rows = convergence_table(&f, &fam, &[8, 16, 32, 64], 1001).unwrap();
        assert!(rows.windows(2).all(|w| w[1].max_error < w[0].max_error), "{rows:?}");
    }
}
