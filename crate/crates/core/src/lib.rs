//! Bernstein-like bases built by degree-raising recursion from an order-two
//! starting triple, the alpha-Bernstein operators they generate, moment
//! recurrences, Voronovskaja-type limit estimators and shape-preservation
//! checks.
//!
//! The crate is `no_std` and needs only `alloc`. All numbers are `f64` and
//! all functions are pure, so every type here is `Send + Sync`.
//!
//! ```
//! use bernlike_core::{eval_alpha_closed, eval_basis_point, Family};
//!
//! let family = Family::alpha(0.5).unwrap();
//! let basis = eval_basis_point(&family, 3, 0.5).unwrap();
//! assert_eq!(basis.values()[1], 0.3125);
//! assert_eq!(eval_alpha_closed(3, 1, 0.5, 0.5).unwrap(), 0.3125);
//! ```

#![cfg_attr(not(test), no_std)]
// `!(x > a)` forms deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod basis;
pub mod bernstein;
pub mod error;
pub mod family;
pub mod finite_diff;
pub mod functions;
pub mod operators;
pub mod shape;

pub use basis::{
    basis_polynomial_coeffs, eval_alpha_closed, eval_basis_derivative, eval_basis_point,
    expand_via_lower_order, expand_via_lower_order_counted, BasisVector,
};
pub use bernstein::{binomial, eval_classical_bernstein, BernsteinPoly};
pub use error::{Error, Result};
pub use family::{
    eval_starting_basis, validate_family, Family, FamilySpec, PhiFn, PhiKind, ValidationReport,
};
pub use functions::{SmoothFn, TestFunction};
pub use operators::{
    apply_operator, convergence_table, gruss_voronovskaja_estimate, moment_direct,
    moment_recurrence, voronovskaja_estimate, ConvergenceRow, LimitEstimate, MomentRoute,
    MomentTable, MomentValue, OperatorSample,
};
pub use shape::{
    check_convex_image, check_monotone_image, check_monotonicity_preserving_basis,
    cumulative_tail, second_derivative_form_n2, CheckKind, Classification, DataVector,
    ShapeReport,
};
