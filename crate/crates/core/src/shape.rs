//! Monotonicity and convexity preservation, checked on uniform grids.
//!
//! A system `{h_0, .., h_n}` preserves monotonicity iff `k_0 = sum_j h_j`
//! is constant and every cumulative tail `k_i = sum_{j >= i} h_j` is
//! nondecreasing. The checks below evaluate the relevant derivative on a
//! grid and report the smallest value seen; exact derivatives are used for
//! polynomial families and finite differences otherwise.

use alloc::vec::Vec;

use rand::Rng;

use crate::basis::{basis_polynomial_coeffs, eval_basis_point, fill_basis};
use crate::bernstein::{check_domain, BernsteinPoly};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::finite_diff;

/// Tolerance for first-derivative checks with exact derivatives.
pub const MONOTONE_TOL: f64 = 1e-9;
/// Tolerance for second-derivative checks with exact derivatives.
pub const CONVEX_TOL: f64 = 1e-8;
/// Tolerance for any check that falls back on finite differences.
pub const FINITE_DIFF_TOL: f64 = 1e-5;

/// Tolerance matching how derivatives of `family` are computed.
pub fn default_tolerance(family: &Family, order: u32) -> f64 {
    match (family.is_polynomial(), order) {
        (false, _) => FINITE_DIFF_TOL,
        (true, 1) => MONOTONE_TOL,
        (true, _) => CONVEX_TOL,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Increasing,
    Convex,
    General,
}

/// Coefficient data `v_0..v_n` with a checked shape class.
#[derive(Debug, Clone, PartialEq)]
pub struct DataVector {
    values: Vec<f64>,
    classification: Classification,
}

impl DataVector {
    /// Weakly increasing data; ties are allowed.
    pub fn increasing(values: Vec<f64>) -> Result<Self> {
        check_len(&values, 2)?;
        if let Some(i) = values.windows(2).position(|w| !(w[1] >= w[0])) {
            return Err(Error::NotIncreasing(i + 1));
        }
        Ok(Self { values, classification: Classification::Increasing })
    }

    /// Data with nonnegative second differences.
    pub fn convex(values: Vec<f64>) -> Result<Self> {
        check_len(&values, 2)?;
        if let Some(i) = values.windows(3).position(|w| !(w[2] - 2.0 * w[1] + w[0] >= 0.0)) {
            return Err(Error::NotConvex(i + 1));
        }
        Ok(Self { values, classification: Classification::Convex })
    }

    pub fn general(values: Vec<f64>) -> Result<Self> {
        check_len(&values, 2)?;
        Ok(Self { values, classification: Classification::General })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    /// Degree of the operator image, `len - 1`.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}

fn check_len(values: &[f64], min: usize) -> Result<()> {
    if values.len() < min {
        return Err(Error::TooFewValues { len: values.len(), min });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    MonotonePreserving,
    MonotoneImage,
    ConvexImage,
}

/// Verdict of a shape check. `pass == (extremal_value >= -tolerance_used)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeReport {
    pub check_kind: CheckKind,
    pub pass: bool,
    pub extremal_value: f64,
    pub extremal_z: f64,
    pub tolerance_used: f64,
    pub grid_size: usize,
}

impl ShapeReport {
    fn new(check_kind: CheckKind, (value, z): (f64, f64), tol: f64, grid_size: usize) -> Self {
        Self {
            check_kind,
            pass: value >= -tol,
            extremal_value: value,
            extremal_z: z,
            tolerance_used: tol,
            grid_size,
        }
    }
}

/// `k_i(z) = sum_{j=i..n} F[n][j](z)`.
pub fn cumulative_tail(family: &Family, n: usize, i: usize, z: f64) -> Result<f64> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let basis = eval_basis_point(family, n, z)?;
    Ok(basis.values()[i..].iter().sum())
}

/// `G''(z)` for `n = 2` and the alpha family: `2 alpha (l2 - 2 l1 + l0)`.
pub fn second_derivative_form_n2(alpha: f64, lambda: [f64; 3]) -> f64 {
    2.0 * alpha * (lambda[2] - 2.0 * lambda[1] + lambda[0])
}

fn grid_points(grid: usize) -> Result<impl Iterator<Item = f64>> {
    if grid < 2 {
        return Err(Error::InvalidGrid(grid));
    }
    let last = (grid - 1) as f64;
    Ok((0..grid).map(move |g| g as f64 / last))
}

/// Smallest grid value of the `order`-th derivative of
/// `G(z) = sum_i weights[i] F[n][i](z)`, with the smallest `z` on ties.
fn min_derivative(family: &Family, weights: &[f64], order: u32, grid: usize) -> Result<(f64, f64)> {
    let n = weights.len() - 1;
    let mut best = (f64::INFINITY, 0.0);
    let mut consider = |value: f64, z: f64| {
        if value < best.0 {
            best = (value, z);
        }
    };
    if family.is_polynomial() {
        let mut g = BernsteinPoly::zero(n);
        for (p, &w) in basis_polynomial_coeffs(family, n)?.iter().zip(weights) {
            g.add_scaled(p, w);
        }
        for _ in 0..order {
            g = g.derivative();
        }
        let mut scratch = Vec::with_capacity(n + 1);
        for z in grid_points(grid)? {
            consider(g.eval_with(z, &mut scratch), z);
        }
    } else {
        let mut buf = Vec::with_capacity(n + 1);
        for z in grid_points(grid)? {
            let d = finite_diff::derivative(
                |t| {
                    fill_basis(family.spec(), n, t, &mut buf)?;
                    Ok(buf.iter().zip(weights).map(|(b, w)| b * w).sum())
                },
                z,
                order,
            )?;
            consider(d, z);
        }
    }
    Ok(best)
}

/// Checks that `k_0 == 1` and that every `k_i`, `i >= 1`, is nondecreasing.
pub fn check_monotonicity_preserving_basis(
    family: &Family,
    n: usize,
    grid: usize,
    tol: f64,
) -> Result<ShapeReport> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    let mut worst_k0 = (0.0_f64, 0.0);
    let mut buf = Vec::with_capacity(n + 1);
    for z in grid_points(grid)? {
        fill_basis(family.spec(), n, z, &mut buf)?;
        let dev = libm::fabs(buf.iter().sum::<f64>() - 1.0);
        if dev > worst_k0.0 {
            worst_k0 = (dev, z);
        }
    }
    if worst_k0.0 > tol {
        return Ok(ShapeReport::new(
            CheckKind::MonotonePreserving,
            (-worst_k0.0, worst_k0.1),
            tol,
            grid,
        ));
    }

    let mut best = (f64::INFINITY, 0.0);
    let mut weights = Vec::with_capacity(n + 1);
    for i in 1..=n {
        weights.clear();
        weights.extend((0..=n).map(|j| if j >= i { 1.0 } else { 0.0 }));
        let (value, z) = min_derivative(family, &weights, 1, grid)?;
        if value < best.0 || (value == best.0 && z < best.1) {
            best = (value, z);
        }
    }
    Ok(ShapeReport::new(CheckKind::MonotonePreserving, best, tol, grid))
}

/// Checks that `G(z) = sum_i v_i F[n][i](z)` is nondecreasing for
/// increasing data `v`.
pub fn check_monotone_image(
    family: &Family,
    data: &DataVector,
    grid: usize,
    tol: f64,
) -> Result<ShapeReport> {
    if data.classification != Classification::Increasing {
        return Err(Error::NotIncreasing(0));
    }
    let data = DataVector::increasing(data.values.clone())?;
    let extremum = min_derivative(family, &data.values, 1, grid)?;
    Ok(ShapeReport::new(CheckKind::MonotoneImage, extremum, tol, grid))
}

/// Checks that `G(z) = sum_i v_i F[n][i](z)` is convex for convex data `v`.
pub fn check_convex_image(
    family: &Family,
    data: &DataVector,
    grid: usize,
    tol: f64,
) -> Result<ShapeReport> {
    if data.classification != Classification::Convex {
        return Err(Error::NotConvex(0));
    }
    let data = DataVector::convex(data.values.clone())?;
    let extremum = min_derivative(family, &data.values, 2, grid)?;
    Ok(ShapeReport::new(CheckKind::ConvexImage, extremum, tol, grid))
}

/// Derivative of `k_i` at `z`, used by the checks and exposed for tests.
pub fn cumulative_tail_derivative(family: &Family, n: usize, i: usize, z: f64) -> Result<f64> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    check_domain(z)?;
    let mut total = 0.0;
    for j in i..=n {
        total += crate::basis::eval_basis_derivative(family, n, j, z, 1)?;
    }
    Ok(total)
}

/// Sorted uniform samples on `[-1, 1)`.
pub fn random_increasing<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Result<DataVector> {
    let mut values: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    values.sort_by(f64::total_cmp);
    DataVector::increasing(values)
}

/// Cumulative sums of sorted uniform increments on `[-1, 1)`, starting from
/// a uniform offset. Draws lie on a dyadic lattice so the partial sums are
/// exact and the second differences are exactly the sorted increments.
pub fn random_convex<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Result<DataVector> {
    check_len(&alloc::vec![0.0; len], 2)?;
    let mut steps: Vec<f64> = (1..len).map(|_| lattice_uniform(rng)).collect();
    steps.sort_by(f64::total_cmp);
    let mut values = Vec::with_capacity(len);
    values.push(lattice_uniform(rng));
    for s in steps {
        let last = values[values.len() - 1];
        values.push(last + s);
    }
    DataVector::convex(values)
}

const LATTICE: f64 = (1u64 << 20) as f64;

fn lattice_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-(1i64 << 20)..(1i64 << 20)) as f64 / LATTICE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::eval_basis_derivative;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alpha(a: f64) -> Family {
        Family::alpha(a).unwrap()
    }

    #[test]
    fn tail_examples() {
        for a in [0.0, 0.3, 1.0] {
            for z in [0.0, 0.25, 0.6, 1.0] {
                let fam = alpha(a);
                assert_abs_diff_eq!(cumulative_tail(&fam, 7, 0, z).unwrap(), 1.0, epsilon = 1e-14);
                let k1 = cumulative_tail(&fam, 2, 1, z).unwrap();
                let k2 = cumulative_tail(&fam, 2, 2, z).unwrap();
                assert_abs_diff_eq!(k1, z - a * (z * z - z), epsilon = 1e-15);
                assert_abs_diff_eq!(k2, z + a * (z * z - z), epsilon = 1e-15);
            }
        }
        assert!(cumulative_tail(&alpha(0.5), 3, 4, 0.5).is_err());
    }

    #[test]
    fn degree_two_basis_minimum() {
        // k1' = 1 - a(2z - 1) >= 1 - a with equality at z = 1; k2' = 1 + a(2z - 1)
        // dips to 1 - a at z = 0, so the global minimum 1 - a is first seen there
        for a in [0.0, 0.25, 0.5, 1.0] {
            let r = check_monotonicity_preserving_basis(&alpha(a), 2, 1001, 1e-10).unwrap();
            assert!(r.pass);
            assert_abs_diff_eq!(r.extremal_value, 1.0 - a, epsilon = 1e-12);
            let k1 = cumulative_tail_derivative(&alpha(a), 2, 1, 1.0).unwrap();
            assert_abs_diff_eq!(k1, 1.0 - a, epsilon = 1e-12);
        }
    }

    #[test]
    fn basis_checks_pass() {
        for n in [3, 6, 10] {
            assert!(check_monotonicity_preserving_basis(&alpha(1.0), n, 201, 1e-10).unwrap().pass);
        }
        let r = check_monotonicity_preserving_basis(&alpha(0.5), 8, 1001, 1e-10).unwrap();
        assert!(r.pass);
        assert!(check_monotonicity_preserving_basis(&alpha(0.5), 1, 11, 1e-10).is_err());
    }

    #[test]
    fn sq_root_basis_is_monotone_preserving() {
        let fam = Family::sq_root(0.5).unwrap();
        let r = check_monotonicity_preserving_basis(&fam, 5, 201, FINITE_DIFF_TOL).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn monotone_image_examples() {
        for a in [0.0, 0.4, 1.0] {
            let data = DataVector::increasing(vec![0.0, 0.5, 1.0]).unwrap();
            let r = check_monotone_image(&alpha(a), &data, 1001, MONOTONE_TOL).unwrap();
            assert!(r.pass);
            assert_abs_diff_eq!(r.extremal_value, 1.0, epsilon = 1e-12);

            let flat = DataVector::increasing(vec![2.0; 6]).unwrap();
            let r = check_monotone_image(&alpha(a), &flat, 101, MONOTONE_TOL).unwrap();
            assert!(r.pass);
            assert_abs_diff_eq!(r.extremal_value, 0.0, epsilon = 1e-12);
        }
        let exp = DataVector::increasing((0..=10).map(|k| libm::exp(k as f64 / 10.0)).collect()).unwrap();
        assert!(check_monotone_image(&alpha(0.7), &exp, 1001, MONOTONE_TOL).unwrap().pass);
    }

    #[test]
    fn classification_errors() {
        assert_eq!(DataVector::increasing(vec![0.0, 1.0, 0.5]), Err(Error::NotIncreasing(2)));
        assert_eq!(DataVector::convex(vec![0.0, 1.0, 0.5]), Err(Error::NotConvex(1)));
        assert!(DataVector::increasing(vec![1.0]).is_err());
        let general = DataVector::general(vec![0.0, 1.0, 0.5]).unwrap();
        assert!(check_monotone_image(&alpha(0.5), &general, 11, MONOTONE_TOL).is_err());
        assert!(check_convex_image(&alpha(0.5), &general, 11, CONVEX_TOL).is_err());
    }

    #[test]
    fn convex_image_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for a in [0.0, 0.2, 0.55, 1.0] {
            for _ in 0..20 {
                let l: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
                let d2: f64 = (0..3)
                    .map(|i| l[i] * eval_basis_derivative(&alpha(a), 2, i, 0.3, 2).unwrap())
                    .sum();
                assert_abs_diff_eq!(d2, second_derivative_form_n2(a, l), epsilon = 1e-10);
            }
        }
        // dyadic slope keeps the zero second differences exact
        let affine = DataVector::convex((0..8).map(|i| 0.75 * i as f64 - 2.0).collect()).unwrap();
        let r = check_convex_image(&alpha(0.3), &affine, 1001, CONVEX_TOL).unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.extremal_value, 0.0, epsilon = 1e-10);

        let sq = DataVector::convex((0..=12).map(|k| (k as f64 / 12.0).powi(2)).collect()).unwrap();
        assert!(check_convex_image(&alpha(0.4), &sq, 1001, CONVEX_TOL).unwrap().pass);
    }

    #[test]
    fn eq11_proof_identity() {
        // d/dz k_i = F[n-1][i-1] + (1-z) sum_{j=i}^{n-1} F'[n-1][j] + z sum_{j=i-1}^{n-1} F'[n-1][j]
        for a in [0.0, 0.5, 0.9] {
            let fam = alpha(a);
            for n in 3..=10 {
                for i in 1..=n {
                    for z in [0.0, 0.17, 0.5, 0.83, 1.0] {
                        let lhs = cumulative_tail_derivative(&fam, n, i, z).unwrap();
                        let lower = eval_basis_point(&fam, n - 1, z).unwrap();
                        let d = |j: usize| eval_basis_derivative(&fam, n - 1, j, z, 1).unwrap();
                        let s1: f64 = (i..n).map(d).sum();
                        let s2: f64 = (i - 1..n).map(d).sum();
                        let rhs = lower.values()[i - 1] + (1.0 - z) * s1 + z * s2;
                        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn random_data_has_its_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in 2..=16 {
            let inc = random_increasing(&mut rng, len).unwrap();
            assert_eq!(inc.values().len(), len);
            let cvx = random_convex(&mut rng, len).unwrap();
            assert_eq!(cvx.classification(), Classification::Convex);
        }
    }

    #[test]
    fn report_pass_matches_extremum() {
        let data = DataVector::increasing(vec![0.0, 0.1, 3.0, 3.0]).unwrap();
        let r = check_monotone_image(&alpha(0.2), &data, 51, MONOTONE_TOL).unwrap();
        assert_eq!(r.pass, r.extremal_value >= -r.tolerance_used);
        assert_eq!(r.grid_size, 51);
    }
}
