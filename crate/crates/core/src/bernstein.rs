//! Classical Bernstein basis and polynomials stored by their Bernstein
//! coordinates.
//!
//! [`BernsteinPoly`] is the exact backend for families whose starting
//! function is a polynomial: multiplication by `1 - z` or `z` maps a
//! degree-`d` coordinate sequence to degree `d + 1` with closed-form index
//! weights, so the degree-raising recursion never leaves the basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)` as a float, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        // exact while the running value stays below 2^53
        c = c * (n - k + i) as f64 / i as f64;
    }
    c
}

/// `x^e` by binary exponentiation.
pub(crate) fn ipow(mut x: f64, mut e: usize) -> f64 {
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= x;
        }
        x *= x;
        e >>= 1;
    }
    acc
}

pub(crate) fn check_domain(z: f64) -> Result<()> {
    if (0.0..=1.0).contains(&z) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(z))
    }
}

/// Classical Bernstein basis function `C(n, k) z^k (1 - z)^(n - k)`.
pub fn eval_classical_bernstein(n: usize, k: usize, z: f64) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, degree: n });
    }
    check_domain(z)?;
    Ok(binomial(n as i64, k as i64) * ipow(z, k) * ipow(1.0 - z, n - k))
}

/// A polynomial given by its coordinates in the classical Bernstein basis
/// of degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    coeffs: Vec<f64>,
}

impl BernsteinPoly {
    /// Builds a polynomial from `degree + 1` Bernstein coordinates.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::TooFewValues { len: 0, min: 1 });
        }
        Ok(Self { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self { coeffs: vec![0.0; degree + 1] }
    }

    /// The `i`-th classical basis function of degree `degree`.
    pub fn unit(degree: usize, i: usize) -> Self {
        let mut p = Self::zero(degree);
        p.coeffs[i] = 1.0;
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// De Casteljau evaluation. Returns the first coordinate at `z = 0` and
    /// the last at `z = 1` without rounding.
    pub fn eval(&self, z: f64) -> f64 {
        let mut scratch = self.coeffs.clone();
        de_casteljau(&mut scratch, z)
    }

    /// Same as [`eval`](Self::eval) but reuses `scratch` across calls.
    pub fn eval_with(&self, z: f64, scratch: &mut Vec<f64>) -> f64 {
        scratch.clear();
        scratch.extend_from_slice(&self.coeffs);
        de_casteljau(scratch, z)
    }

    /// Derivative as a polynomial of degree `degree - 1` (zero polynomial of
    /// degree 0 for constants).
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0);
        }
        let scale = n as f64;
        let coeffs = self.coeffs.windows(2).map(|w| scale * (w[1] - w[0])).collect();
        Self { coeffs }
    }

    /// `(1 - z) p(z)` at degree `d + 1`: coordinate `k` is `(d + 1 - k)/(d + 1) c_k`.
    pub fn mul_one_minus_z(&self) -> Self {
        let d1 = (self.degree() + 1) as f64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs.push((d1 - k as f64) / d1 * c);
        }
        coeffs.push(0.0);
        Self { coeffs }
    }

    /// `z p(z)` at degree `d + 1`: coordinate `k` is `k/(d + 1) c_(k-1)`.
    pub fn mul_z(&self) -> Self {
        let d1 = (self.degree() + 1) as f64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs.push((k + 1) as f64 / d1 * c);
        }
        Self { coeffs }
    }

    /// In-place `self += scale * other`. Both must share a degree.
    pub fn add_scaled(&mut self, other: &Self, scale: f64) {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
    }
}

fn de_casteljau(b: &mut [f64], z: f64) -> f64 {
    let s = 1.0 - z;
    let n = b.len();
    for r in 1..n {
        for k in 0..n - r {
            b[k] = s * b[k] + z * b[k + 1];
        }
    }
    b[0]
}
