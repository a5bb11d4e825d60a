//! Special functions needed by the density, distribution-function and
//! moment formulas: modified Bessel `K_ν`, modified Struve `L_ν`, Gauss
//! `₂F₁` on the negative real axis, the upper incomplete gamma function and
//! the terminating confluent `U(−m, b, x)`.

mod bessel;
mod gamma;
mod hyper;
mod struve;

pub use bessel::{
    bessel_k, bessel_k_ratio, bessel_k_scaled, bessel_ratio_bounds, ln_bessel_k, RatioBounds,
};
pub use gamma::{gamma, ln_gamma, pochhammer, rgamma, upper_inc_gamma};
pub use hyper::{confluent_u_poly, gauss_2f1};
pub use struve::{struve_l, struve_l_scaled};

/// A function value together with a heuristic absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
}

impl EvalResult {
    pub(crate) fn new(value: f64, abs_err_est: f64) -> Self {
        Self {
            value,
            abs_err_est: abs_err_est.abs(),
        }
    }
}

pub(crate) const EPS: f64 = f64::EPSILON;
