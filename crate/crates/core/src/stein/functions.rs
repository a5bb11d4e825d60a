/// Test functions with analytic first and second derivatives.
#[derive(Debug, Clone, Copy)]
pub enum TestFunction {
    /// `x^k`
    Monomial(u32),
    Sin,
    Cos,
    /// `e^{−x²}`
    Gaussian,
    /// `exp(−1/(1−x²))` on `|x| < 1`, zero outside.
    Bump,
    /// `e^{a x}`; grows too fast for `Z̄ₙ` once `a` leaves the MGF strip.
    ExpLinear(f64),
    /// User-supplied `(g, g′, g″)`.
    Custom {
        name: &'static str,
        g: fn(f64) -> f64,
        dg: fn(f64) -> f64,
        d2g: fn(f64) -> f64,
    },
}

#[allow(unused_imports)]
use crate::prelude::*;

// Function pointers have no meaningful identity; compare by label.
impl PartialEq for TestFunction {
    fn eq(&self, other: &Self) -> bool {
        self.label() == other.label()
    }
}

impl TestFunction {
    /// Monomials of degree ≤ 6, sin, cos, Gaussian and bump.
    pub fn suite() -> alloc::vec::Vec<TestFunction> {
        let mut v: alloc::vec::Vec<TestFunction> = (0..=6).map(TestFunction::Monomial).collect();
        v.extend([TestFunction::Sin, TestFunction::Cos, TestFunction::Gaussian, TestFunction::Bump]);
        v
    }

    pub fn label(&self) -> alloc::string::String {
        use alloc::format;
        match self {
            TestFunction::Monomial(k) => format!("x^{k}"),
            TestFunction::Sin => "sin".into(),
            TestFunction::Cos => "cos".into(),
            TestFunction::Gaussian => "exp(-x^2)".into(),
            TestFunction::Bump => "bump".into(),
            TestFunction::ExpLinear(a) => format!("exp({a}x)"),
            TestFunction::Custom { name, .. } => (*name).into(),
        }
    }

    /// `(g, g′, g″)` at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        match *self {
            TestFunction::Monomial(k) => {
                let kf = k as f64;
                let p = |e: i32| if e < 0 { 0.0 } else { x.powi(e) };
                (p(k as i32), kf * p(k as i32 - 1), kf * (kf - 1.0) * p(k as i32 - 2))
            }
            TestFunction::Sin => (x.sin(), x.cos(), -x.sin()),
            TestFunction::Cos => (x.cos(), -x.sin(), -x.cos()),
            TestFunction::Gaussian => {
                let g = (-x * x).exp();
                (g, -2.0 * x * g, (4.0 * x * x - 2.0) * g)
            }
            TestFunction::Bump => {
                if x.abs() >= 1.0 {
                    return (0.0, 0.0, 0.0);
                }
                let u = 1.0 - x * x;
                let g = (-1.0 / u).exp();
                let h1 = -2.0 * x / (u * u);
                let h2 = -2.0 / (u * u) - 8.0 * x * x / (u * u * u);
                (g, g * h1, g * (h1 * h1 + h2))
            }
            TestFunction::ExpLinear(a) => {
                let g = (a * x).exp();
                (g, a * g, a * a * g)
            }
            TestFunction::Custom { g, dg, d2g, .. } => (g(x), dg(x), d2g(x)),
        }
    }
}
