//! Finite-difference derivatives on `[0, 1]` for families without a
//! polynomial representation.

use crate::error::{Error, Result};

/// Step for first derivatives.
pub const FIRST_ORDER_STEP: f64 = 6e-6;
/// Step for second derivatives.
pub const SECOND_ORDER_STEP: f64 = 1e-4;

/// Derivative of `f` at `z` of the given order with the default step.
pub fn derivative<F>(f: F, z: f64, order: u32) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = match order {
        1 => FIRST_ORDER_STEP,
        2 => SECOND_ORDER_STEP,
        other => return Err(Error::UnsupportedOrder(other)),
    };
    derivative_with_step(f, z, order, h)
}

/// Central stencil in the interior, second-order one-sided stencils within
/// `h` of either end point so every sample stays in `[0, 1]`.
pub fn derivative_with_step<F>(mut f: F, z: f64, order: u32, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let forward = z - h < 0.0;
    let backward = z + h > 1.0;
    match order {
        1 => {
            if forward {
                Ok((-3.0 * f(z)? + 4.0 * f(z + h)? - f(z + 2.0 * h)?) / (2.0 * h))
            } else if backward {
                Ok((3.0 * f(z)? - 4.0 * f(z - h)? + f(z - 2.0 * h)?) / (2.0 * h))
            } else {
                Ok((f(z + h)? - f(z - h)?) / (2.0 * h))
            }
        }
        2 => {
            let h2 = h * h;
            if forward {
                Ok((2.0 * f(z)? - 5.0 * f(z + h)? + 4.0 * f(z + 2.0 * h)? - f(z + 3.0 * h)?) / h2)
            } else if backward {
                Ok((2.0 * f(z)? - 5.0 * f(z - h)? + 4.0 * f(z - 2.0 * h)? - f(z - 3.0 * h)?) / h2)
            } else {
                Ok((f(z + h)? - 2.0 * f(z)? + f(z - h)?) / h2)
            }
        }
        other => Err(Error::UnsupportedOrder(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cubic_derivatives_everywhere() {
        let f = |t: f64| Ok(t * t * t - 0.5 * t);
        for z in [0.0, 1e-7, 0.3, 0.999_999_9, 1.0] {
            assert_relative_eq!(derivative(f, z, 1).unwrap(), 3.0 * z * z - 0.5, epsilon = 1e-8);
            assert_relative_eq!(derivative(f, z, 2).unwrap(), 6.0 * z, epsilon = 1e-6);
        }
    }

    #[test]
    fn rejects_third_order() {
        assert_eq!(derivative(Ok, 0.5, 3), Err(Error::UnsupportedOrder(3)));
    }
}
