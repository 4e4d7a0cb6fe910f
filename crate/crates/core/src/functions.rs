//! Target functions with hand-coded derivatives.

/// A function on `[0, 1]` with analytic first and second derivatives.
pub trait SmoothFn {
    fn value(&self, t: f64) -> f64;
    fn d1(&self, t: f64) -> f64;
    fn d2(&self, t: f64) -> f64;
}

impl<T: SmoothFn + ?Sized> SmoothFn for &T {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
}

/// Built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Exp,
    Sin,
    /// `t^2`
    Square,
    /// `|t - 1/2|`; derivatives are taken one-sided, zero curvature off the kink.
    AbsCentered,
    /// `1 / (1 + 25 (t - 1/2)^2)`
    Runge,
    /// `t`
    Identity,
    Constant(f64),
}

impl SmoothFn for TestFunction {
    fn value(&self, t: f64) -> f64 {
        match *self {
            Self::Exp => libm::exp(t),
            Self::Sin => libm::sin(t),
            Self::Square => t * t,
            Self::AbsCentered => libm::fabs(t - 0.5),
            Self::Runge => {
                let u = t - 0.5;
                1.0 / (1.0 + 25.0 * u * u)
            }
            Self::Identity => t,
            Self::Constant(c) => c,
        }
    }

    fn d1(&self, t: f64) -> f64 {
        match *self {
            Self::Exp => libm::exp(t),
            Self::Sin => libm::cos(t),
            Self::Square => 2.0 * t,
            Self::AbsCentered => {
                if t >= 0.5 {
                    1.0
                } else {
                    -1.0
                }
            }
            Self::Runge => {
                let u = t - 0.5;
                let d = 1.0 + 25.0 * u * u;
                -50.0 * u / (d * d)
            }
            Self::Identity => 1.0,
            Self::Constant(_) => 0.0,
        }
    }

    fn d2(&self, t: f64) -> f64 {
        match *self {
            Self::Exp => libm::exp(t),
            Self::Sin => -libm::sin(t),
            Self::Square => 2.0,
            Self::AbsCentered | Self::Identity | Self::Constant(_) => 0.0,
            Self::Runge => {
                let u = t - 0.5;
                let d = 1.0 + 25.0 * u * u;
                -50.0 / (d * d) + 5000.0 * u * u / (d * d * d)
            }
        }
    }
}
