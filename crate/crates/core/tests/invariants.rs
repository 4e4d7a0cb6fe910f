//! Property tests for the basis, operator and shape invariants.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use bernlike_core::finite_diff::derivative_with_step;
use bernlike_core::{
    apply_operator, basis_polynomial_coeffs, eval_alpha_closed, eval_basis_derivative,
    eval_basis_point, eval_classical_bernstein, expand_via_lower_order, moment_direct,
    moment_recurrence, Family, OperatorSample,
};

fn unit() -> impl Strategy<Value = f64> {
    (0u32..=1000).prop_map(|k| f64::from(k) / 1000.0)
}

fn builtin_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (0u32..=20).prop_map(|k| Family::alpha(f64::from(k) / 20.0).unwrap()),
        Just(Family::classical()),
        (0u32..=4).prop_map(|k| Family::sq_root(f64::from(k) / 4.0).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn partition_of_unity(family in builtin_family(), n in 1usize..=30, z in unit()) {
        let v = eval_basis_point(&family, n, z).unwrap();
        prop_assert_eq!(v.values().len(), n + 1);
        prop_assert!((v.sum() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn symmetry(family in builtin_family(), n in 1usize..=30, z in unit()) {
        let v = eval_basis_point(&family, n, z).unwrap();
        let w = eval_basis_point(&family, n, 1.0 - z).unwrap();
        for i in 0..=n {
            prop_assert!((v.values()[i] - w.values()[n - i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn nonnegativity(family in builtin_family(), n in 1usize..=30, z in unit()) {
        let v = eval_basis_point(&family, n, z).unwrap();
        prop_assert!(v.values().iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn closed_form_matches_recursion(a in 0u32..=4, n in 1usize..=15, z in unit()) {
        let alpha = f64::from(a) / 4.0;
        let v = eval_basis_point(&Family::alpha(alpha).unwrap(), n, z).unwrap();
        for k in 0..=n {
            let closed = eval_alpha_closed(n, k, alpha, z).unwrap();
            prop_assert!((closed - v.values()[k]).abs() <= 1e-10);
        }
    }

    #[test]
    fn expansion_matches_recursion(family in builtin_family(), n in 3usize..=12, m_off in 0usize..10, z in unit()) {
        let m = 2 + m_off % (n - 2);
        let v = eval_basis_point(&family, n, z).unwrap();
        for i in 0..=n {
            let e = expand_via_lower_order(&family, n, m, i, z).unwrap();
            prop_assert!((e - v.values()[i]).abs() <= 1e-10);
        }
    }

    #[test]
    fn polynomial_backend_agrees(a in 0u32..=10, n in 1usize..=20, z in unit()) {
        let family = Family::alpha(f64::from(a) / 10.0).unwrap();
        let polys = basis_polynomial_coeffs(&family, n).unwrap();
        let v = eval_basis_point(&family, n, z).unwrap();
        for (p, &x) in polys.iter().zip(v.values()) {
            prop_assert_eq!(p.degree(), n);
            prop_assert!((p.eval(z) - x).abs() <= 1e-12);
        }
    }

    #[test]
    fn operator_is_linear(
        a in 0u32..=10,
        f in prop::collection::vec(-10.0f64..10.0, 2..20),
        g_seed in prop::collection::vec(-10.0f64..10.0, 20),
        c in -5.0f64..5.0,
        z in unit(),
    ) {
        let family = Family::alpha(f64::from(a) / 10.0).unwrap();
        let g: Vec<f64> = g_seed[..f.len()].to_vec();
        let sum: Vec<f64> = f.iter().zip(&g).map(|(x, y)| x + y).collect();
        let scaled: Vec<f64> = f.iter().map(|x| c * x).collect();
        let bf = apply_operator(&OperatorSample::new(family.clone(), f).unwrap(), z).unwrap();
        let bg = apply_operator(&OperatorSample::new(family.clone(), g).unwrap(), z).unwrap();
        let bsum = apply_operator(&OperatorSample::new(family.clone(), sum).unwrap(), z).unwrap();
        let bscaled = apply_operator(&OperatorSample::new(family, scaled).unwrap(), z).unwrap();
        prop_assert!((bsum - bf - bg).abs() <= 1e-12);
        prop_assert!((bscaled - c * bf).abs() <= 1e-12);
    }

    #[test]
    fn operator_is_positive(a in 0u32..=10, f in prop::collection::vec(0.0f64..10.0, 2..25), z in unit()) {
        let family = Family::alpha(f64::from(a) / 10.0).unwrap();
        let b = apply_operator(&OperatorSample::new(family, f).unwrap(), z).unwrap();
        prop_assert!(b >= -1e-12);
    }

    #[test]
    fn operator_interpolates_endpoints(family in builtin_family(), f in prop::collection::vec(-10.0f64..10.0, 2..25)) {
        let n = f.len() - 1;
        let (first, last) = (f[0], f[n]);
        let sample = OperatorSample::new(family, f).unwrap();
        prop_assert!((apply_operator(&sample, 0.0).unwrap() - first).abs() <= 1e-14);
        prop_assert!((apply_operator(&sample, 1.0).unwrap() - last).abs() <= 1e-14);
    }

    #[test]
    fn recurrence_matches_direct(a in 0u32..=2, n in 2usize..=12, p in 0usize..=6, zi in 0u32..=20) {
        let alpha = f64::from(a) / 2.0;
        let z = f64::from(zi) / 20.0;
        let r = moment_recurrence(n, p, alpha, z).unwrap().value;
        let d = moment_direct(n, p, alpha, z).unwrap().value;
        prop_assert!((r - d).abs() <= 1e-10);
    }
}

#[test]
fn endpoint_deltas() {
    for family in [Family::alpha(0.3).unwrap(), Family::classical(), Family::sq_root(0.5).unwrap()] {
        for n in 1..=30 {
            let at0 = eval_basis_point(&family, n, 0.0).unwrap();
            let at1 = eval_basis_point(&family, n, 1.0).unwrap();
            for i in 0..=n {
                let d0 = if i == 0 { 1.0 } else { 0.0 };
                let d1 = if i == n { 1.0 } else { 0.0 };
                assert!((at0.values()[i] - d0).abs() <= 1e-14);
                assert!((at1.values()[i] - d1).abs() <= 1e-14);
            }
        }
    }
    // exact in the polynomial backend
    for a in [0.0, 0.35, 1.0] {
        let family = Family::alpha(a).unwrap();
        for n in 1..=20 {
            for (i, p) in basis_polynomial_coeffs(&family, n).unwrap().iter().enumerate() {
                assert_eq!(p.eval(0.0), if i == 0 { 1.0 } else { 0.0 });
                assert_eq!(p.eval(1.0), if i == n { 1.0 } else { 0.0 });
            }
        }
    }
}

#[test]
fn classical_family_is_classical_basis() {
    let family = Family::classical();
    for n in 1..=12 {
        for g in 0..=50 {
            let z = f64::from(g) / 50.0;
            let v = eval_basis_point(&family, n, z).unwrap();
            for (k, x) in v.values().iter().enumerate() {
                assert_abs_diff_eq!(*x, eval_classical_bernstein(n, k, z).unwrap(), epsilon = 1e-13);
            }
        }
    }
}

/// Analytic derivatives against a Richardson-extrapolated central difference
/// of the pointwise recursion.
#[test]
fn derivatives_match_richardson() {
    let richardson = |family: &Family, n: usize, i: usize, z: f64, order: u32, h: f64| {
        let f = |t: f64| Ok(eval_basis_point(family, n, t)?.values()[i]);
        let coarse = derivative_with_step(f, z, order, h).unwrap();
        let fine = derivative_with_step(f, z, order, 0.5 * h).unwrap();
        (4.0 * fine - coarse) / 3.0
    };
    for a in [0.0, 0.5, 0.85] {
        let family = Family::alpha(a).unwrap();
        for n in 2..=8 {
            for i in 0..=n {
                for z in [0.1, 0.33, 0.5, 0.77, 0.9] {
                    let d1 = eval_basis_derivative(&family, n, i, z, 1).unwrap();
                    let r1 = richardson(&family, n, i, z, 1, 1e-3);
                    assert!((d1 - r1).abs() <= 1e-6 * d1.abs().max(1.0), "d1 {n} {i} {z}: {d1} vs {r1}");
                    let d2 = eval_basis_derivative(&family, n, i, z, 2).unwrap();
                    let r2 = richardson(&family, n, i, z, 2, 1e-2);
                    assert!((d2 - r2).abs() <= 1e-6 * d2.abs().max(1.0), "d2 {n} {i} {z}: {d2} vs {r2}");
                }
            }
        }
    }
}
