//! Higher-order Bernstein-like bases generated from a starting triple.
//!
//! Degree `n >= 3` functions come from the de Casteljau-style rule
//! `F[n][i] = (1 - z) F[n-1][i] + z F[n-1][i-1]` with `F[m][i] = 0` outside
//! `0 <= i <= m`. Degree 2 is the starting triple and degree 1 is the linear
//! pair `(1 - z, z)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bernstein::{binomial, check_domain, eval_classical_bernstein, ipow, BernsteinPoly};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::finite_diff;

/// All `n + 1` basis values of one family at one abscissa.
#[derive(Debug, Clone)]
pub struct BasisVector {
    family: Family,
    degree: usize,
    z: f64,
    values: Vec<f64>,
}

impl BasisVector {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Left-to-right sum of the values.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Left-to-right `sum_k values[k] * weights[k]`.
    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.values.iter().zip(weights).map(|(v, w)| v * w).sum()
    }
}

/// Evaluates `F[n][0..=n](z)` in one pass of the recursion triangle.
pub fn eval_basis_point(family: &Family, n: usize, z: f64) -> Result<BasisVector> {
    let mut values = Vec::with_capacity(n + 1);
    fill_basis(family.spec(), n, z, &mut values)?;
    Ok(BasisVector { family: family.clone(), degree: n, z, values })
}

/// Writes `F[n][0..=n](z)` into `out`, reusing its allocation.
pub(crate) fn fill_basis(spec: &FamilySpec, n: usize, z: f64, out: &mut Vec<f64>) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    check_domain(z)?;
    out.clear();
    if n == 1 {
        out.extend_from_slice(&[1.0 - z, z]);
        return Ok(());
    }
    out.extend_from_slice(&spec.starting_values(z)?);
    let s = 1.0 - z;
    for m in 3..=n {
        // F[m-1][m] is zero, so the new last entry is z * F[m-1][m-1]
        out.push(z * out[m - 1]);
        for i in (1..m).rev() {
            out[i] = s * out[i] + z * out[i - 1];
        }
        out[0] *= s;
    }
    Ok(())
}

/// Closed-form alpha-Bernstein polynomial.
///
/// ```text
/// [C(n-2,k)(1-a) z + C(n-2,k-2)(1-a)(1-z) + C(n,k) a z(1-z)] z^(k-1) (1-z)^(n-k-1)
/// ```
///
/// The prefactor is distributed into each bracket term so no negative power
/// of `z` or `1 - z` is formed at `k = 0` or `k = n`.
pub fn eval_alpha_closed(n: usize, k: usize, alpha: f64, z: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, degree: n });
    }
    check_domain(z)?;
    if n == 1 {
        return Ok(if k == 0 { 1.0 - z } else { z });
    }
    let (ni, ki) = (n as i64, k as i64);
    let s = 1.0 - z;
    let mut total = 0.0;
    // C(n-2,k) vanishes unless k <= n-2, so n-k-1 >= 1 there
    if k + 2 <= n {
        total += binomial(ni - 2, ki) * (1.0 - alpha) * ipow(z, k) * ipow(s, n - k - 1);
    }
    // C(n-2,k-2) vanishes unless k >= 2
    if k >= 2 {
        total += binomial(ni - 2, ki - 2) * (1.0 - alpha) * ipow(z, k - 1) * ipow(s, n - k);
    }
    total += binomial(ni, ki) * alpha * ipow(z, k) * ipow(s, n - k);
    Ok(total)
}

/// `F[n][i](z) = sum_j B[n-m][j](z) F[m][i-j](z)`, expressing degree `n`
/// through degree `m`.
pub fn expand_via_lower_order(family: &Family, n: usize, m: usize, i: usize, z: f64) -> Result<f64> {
    expand_via_lower_order_counted(family, n, m, i, z).map(|(value, _)| value)
}

/// As [`expand_via_lower_order`], also returning how many terms of the sum
/// were evaluated. Only `j` with `0 <= i - j <= m` are visited, so for
/// `m = 2` the count never exceeds three.
pub fn expand_via_lower_order_counted(
    family: &Family,
    n: usize,
    m: usize,
    i: usize,
    z: f64,
) -> Result<(f64, usize)> {
    if m < 2 || m >= n {
        return Err(Error::InvalidOrder { n, m });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let lower = eval_basis_point(family, m, z)?;
    let lower = lower.values();
    let j_lo = i.saturating_sub(m);
    let j_hi = i.min(n - m);
    let mut total = 0.0;
    let mut terms = 0;
    for j in j_lo..=j_hi {
        total += eval_classical_bernstein(n - m, j, z)? * lower[i - j];
        terms += 1;
    }
    Ok((total, terms))
}

/// Exact Bernstein coordinates of `F[n][0..=n]` at degree `n`, for families
/// whose `phi` is a polynomial.
pub fn basis_polynomial_coeffs(family: &Family, n: usize) -> Result<Vec<BernsteinPoly>> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    let spec = family.spec();
    let Some(start) = spec.starting_coeffs() else {
        return Err(Error::UnsupportedPhi(spec.label().into()));
    };
    if n == 1 {
        return Ok(vec![BernsteinPoly::unit(1, 0), BernsteinPoly::unit(1, 1)]);
    }
    let mut level: Vec<BernsteinPoly> = start
        .iter()
        .map(|c| BernsteinPoly::new(c.to_vec()))
        .collect::<Result<_>>()?;
    for m in 3..=n {
        let mut next = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut p = if i < m { level[i].mul_one_minus_z() } else { BernsteinPoly::zero(m) };
            if i > 0 {
                p.add_scaled(&level[i - 1].mul_z(), 1.0);
            }
            next.push(p);
        }
        level = next;
    }
    Ok(level)
}

/// First or second derivative of `F[n][i]` at `z`.
///
/// Exact for polynomial families (differentiating the Bernstein
/// coordinates); finite differences otherwise.
pub fn eval_basis_derivative(family: &Family, n: usize, i: usize, z: f64, order: u32) -> Result<f64> {
    if !(1..=2).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    check_domain(z)?;
    if family.is_polynomial() {
        let mut p = basis_polynomial_coeffs(family, n)?.swap_remove(i);
        for _ in 0..order {
            p = p.derivative();
        }
        return Ok(p.eval(z));
    }
    let mut buf = Vec::with_capacity(n + 1);
    finite_diff::derivative(
        |t| {
            fill_basis(family.spec(), n, t, &mut buf)?;
            Ok(buf[i])
        },
        z,
        order,
    )
}
