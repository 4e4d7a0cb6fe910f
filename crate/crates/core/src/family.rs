//! Starting triples `(a, b, phi)` and their validation.
//!
//! A family is fixed by two real coefficients and a function `phi`; its
//! order-two starting functions are
//!
//! ```text
//! g0(z) = a z + b + phi(z)
//! g1(z) = 1 - 2b - a - 2 phi(z)
//! g2(z) = -a z + b + a + phi(z)
//! ```
//!
//! and higher orders follow from the degree-raising recursion in
//! [`crate::basis`]. The three functions sum to one for any choice of
//! `(a, b, phi)`, but nonnegativity and the end-point values depend on the
//! triple, so [`validate_family`] checks them on a grid and [`Family`] only
//! wraps specs that pass.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;

use crate::error::{Error, Result};

/// Default number of grid points used by [`Family::new`].
pub const DEFAULT_VALIDATION_GRID: usize = 1001;

const NONNEG_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
const ENDPOINT_TOL: f64 = 1e-14;

/// Pointwise evaluator for a user-supplied `phi`. Must be pure.
pub type PhiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The `phi` part of a starting triple.
#[derive(Clone)]
pub enum PhiKind {
    /// `phi(z) = alpha (z^2 - z)`, giving the alpha-Bernstein polynomials.
    AlphaQuadratic { alpha: f64 },
    /// `phi(z) = z^2 - z + 1`; with `a = -1, b = 0` this is the classical basis.
    ClassicalQuadratic,
    /// `phi(z) = sqrt((1 - nu)(z^2 - z) + 1/4)`, the sq-basis.
    SqRoot { nu: f64 },
    /// Arbitrary evaluator plus a declared symmetry `phi(1 - z) = phi(z)`.
    Custom { phi: PhiFn, symmetric: bool },
}

impl PhiKind {
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            Self::AlphaQuadratic { alpha } => alpha * (z * z - z),
            Self::ClassicalQuadratic => z * z - z + 1.0,
            Self::SqRoot { nu } => libm::sqrt((1.0 - nu) * (z * z - z) + 0.25),
            Self::Custom { phi, .. } => phi(z),
        }
    }

    /// Whether `phi` is a polynomial of degree at most two.
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Self::AlphaQuadratic { .. } | Self::ClassicalQuadratic)
    }

    /// Degree-2 Bernstein coordinates of `phi`, when it is a polynomial.
    pub(crate) fn bernstein_coeffs(&self) -> Option<[f64; 3]> {
        match self {
            // z^2 - z = -z(1 - z) = -B_{2,1}/2
            Self::AlphaQuadratic { alpha } => Some([0.0, -0.5 * alpha, 0.0]),
            Self::ClassicalQuadratic => Some([1.0, 0.5, 1.0]),
            Self::SqRoot { .. } | Self::Custom { .. } => None,
        }
    }

    pub fn declared_symmetric(&self) -> bool {
        match self {
            Self::Custom { symmetric, .. } => *symmetric,
            _ => true,
        }
    }
}

impl fmt::Debug for PhiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AlphaQuadratic { alpha } => {
                f.debug_struct("AlphaQuadratic").field("alpha", alpha).finish()
            }
            Self::ClassicalQuadratic => f.write_str("ClassicalQuadratic"),
            Self::SqRoot { nu } => f.debug_struct("SqRoot").field("nu", nu).finish(),
            Self::Custom { symmetric, .. } => f
                .debug_struct("Custom")
                .field("symmetric", symmetric)
                .finish_non_exhaustive(),
        }
    }
}

/// An unvalidated starting triple.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    a: f64,
    b: f64,
    phi: PhiKind,
    label: String,
}

impl FamilySpec {
    /// Alpha-Bernstein family: `a = -1`, `b = 1`, `phi = alpha (z^2 - z)`.
    pub fn alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite"));
        }
        Ok(Self {
            a: -1.0,
            b: 1.0,
            phi: PhiKind::AlphaQuadratic { alpha },
            label: "alpha".to_string(),
        })
    }

    /// Classical Bernstein family: `a = -1`, `b = 0`, `phi = z^2 - z + 1`.
    pub fn classical() -> Self {
        Self {
            a: -1.0,
            b: 0.0,
            phi: PhiKind::ClassicalQuadratic,
            label: "classical".to_string(),
        }
    }

    /// sq-basis: `a = -1`, `b = 1/2`, `phi = sqrt((1 - nu)(z^2 - z) + 1/4)`.
    pub fn sq_root(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::InvalidParameter("nu must be finite"));
        }
        Ok(Self {
            a: -1.0,
            b: 0.5,
            phi: PhiKind::SqRoot { nu },
            label: "sq".to_string(),
        })
    }

    pub fn custom(
        a: f64,
        b: f64,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        symmetric: bool,
        label: impl Into<String>,
    ) -> Self {
        Self {
            a,
            b,
            phi: PhiKind::Custom { phi: Arc::new(phi), symmetric },
            label: label.into(),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phi(&self) -> &PhiKind {
        &self.phi
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `alpha` of an alpha-Bernstein family.
    pub fn alpha_parameter(&self) -> Option<f64> {
        match self.phi {
            PhiKind::AlphaQuadratic { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// The starting functions `(g0, g1, g2)` at `z`, without checks.
    pub(crate) fn starting_values(&self, z: f64) -> Result<[f64; 3]> {
        let phi = self.phi.eval(z);
        let (a, b) = (self.a, self.b);
        let g = [a * z + b + phi, 1.0 - 2.0 * b - a - 2.0 * phi, -a * z + b + a + phi];
        if let Some(&bad) = g.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { z, value: bad });
        }
        Ok(g)
    }

    /// Degree-2 Bernstein coordinates of `(g0, g1, g2)` for polynomial `phi`.
    pub(crate) fn starting_coeffs(&self) -> Option<[[f64; 3]; 3]> {
        let p = self.phi.bernstein_coeffs()?;
        let (a, b) = (self.a, self.b);
        // z = B_{2,1}/2 + B_{2,2} and 1 = B_{2,0} + B_{2,1} + B_{2,2}
        let g0 = [b + p[0], b + 0.5 * a + p[1], b + a + p[2]];
        let c = 1.0 - 2.0 * b - a;
        let g1 = [c - 2.0 * p[0], c - 2.0 * p[1], c - 2.0 * p[2]];
        let g2 = [b + a + p[0], b + 0.5 * a + p[1], b + p[2]];
        Some([g0, g1, g2])
    }
}

/// Outcome of [`validate_family`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub label: String,
    pub grid_size: usize,
    /// All starting functions stayed above `-1e-12` on the grid.
    pub nonnegative: bool,
    pub min_starting_value: f64,
    pub min_starting_z: f64,
    /// `|phi(1 - z) - phi(z)| <= 1e-12` on the grid.
    pub symmetric: bool,
    pub declared_symmetric: bool,
    pub max_symmetry_defect: f64,
    /// `g(0) = (1, 0, 0)` and `g(1) = (0, 0, 1)` within `1e-14`.
    pub endpoints: bool,
    pub max_endpoint_defect: f64,
    /// Partition of unity holds for every triple by construction.
    pub partition_of_unity: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.nonnegative && self.endpoints && (self.symmetric || !self.declared_symmetric)
    }
}

/// Numerically checks a starting triple on a uniform grid of `grid_size`
/// points in `[0, 1]`.
pub fn validate_family(spec: &FamilySpec, grid_size: usize) -> Result<ValidationReport> {
    if grid_size < 2 {
        return Err(Error::InvalidGrid(grid_size));
    }
    let mut min_value = f64::INFINITY;
    let mut min_z = 0.0;
    let mut max_sym: f64 = 0.0;
    let last = (grid_size - 1) as f64;
    for i in 0..grid_size {
        let z = i as f64 / last;
        let g = spec.starting_values(z)?;
        for v in g {
            if v < min_value {
                min_value = v;
                min_z = z;
            }
        }
        let mirrored = spec.phi.eval(1.0 - z);
        if !mirrored.is_finite() {
            return Err(Error::NonFiniteValue { z: 1.0 - z, value: mirrored });
        }
        max_sym = max_sym.max(libm::fabs(mirrored - spec.phi.eval(z)));
    }

    let g0 = spec.starting_values(0.0)?;
    let g1 = spec.starting_values(1.0)?;
    let max_endpoint = [g0[0] - 1.0, g0[1], g0[2], g1[0], g1[1], g1[2] - 1.0]
        .into_iter()
        .fold(0.0_f64, |m, d| m.max(libm::fabs(d)));

    Ok(ValidationReport {
        label: spec.label.clone(),
        grid_size,
        nonnegative: min_value >= -NONNEG_TOL,
        min_starting_value: min_value,
        min_starting_z: min_z,
        symmetric: max_sym <= SYMMETRY_TOL,
        declared_symmetric: spec.phi.declared_symmetric(),
        max_symmetry_defect: max_sym,
        endpoints: max_endpoint <= ENDPOINT_TOL,
        max_endpoint_defect: max_endpoint,
        partition_of_unity: true,
    })
}

/// A validated family. Cheap to clone and safe to share between threads.
#[derive(Debug, Clone)]
pub struct Family(Arc<FamilySpec>);

impl Family {
    /// Validates `spec` on the default 1001-point grid.
    pub fn new(spec: FamilySpec) -> Result<Self> {
        Self::with_grid(spec, DEFAULT_VALIDATION_GRID)
    }

    pub fn with_grid(spec: FamilySpec, grid_size: usize) -> Result<Self> {
        let report = validate_family(&spec, grid_size)?;
        if !report.passed() {
            return Err(Error::InvalidFamily(spec.label));
        }
        Ok(Self(Arc::new(spec)))
    }

    pub fn alpha(alpha: f64) -> Result<Self> {
        Self::new(FamilySpec::alpha(alpha)?)
    }

    pub fn classical() -> Self {
        Self::new(FamilySpec::classical()).expect("classical family is valid")
    }

    pub fn sq_root(nu: f64) -> Result<Self> {
        Self::new(FamilySpec::sq_root(nu)?)
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.0
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.phi.is_polynomial()
    }
}

/// The order-two starting functions `(g0, g1, g2)` at `z`.
pub fn eval_starting_basis(family: &Family, z: f64) -> Result<[f64; 3]> {
    crate::bernstein::check_domain(z)?;
    family.spec().starting_values(z)
}
