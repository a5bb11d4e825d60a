use super::{EvalResult, EPS};
use crate::prelude::*;

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `ln|Γ(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// `1/Γ(x)`, zero at the poles `x = 0, −1, −2, …`.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 170.0 {
        let (lg, _) = libm::lgamma_r(x);
        return (-lg).exp();
    }
    1.0 / libm::tgamma(x)
}

/// Rising factorial `(a)_k = a(a+1)…(a+k−1)` with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Upper incomplete gamma function `Γ(a, x) = ∫ₓ^∞ t^{a−1} e^{−t} dt`.
///
/// Power series for the lower function when `x < a + 1`, modified Lentz
/// continued fraction otherwise.
pub fn upper_inc_gamma(a: f64, x: f64) -> Result<EvalResult> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain("upper_inc_gamma requires a > 0"));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain("upper_inc_gamma requires x >= 0"));
    }
    if x == 0.0 {
        let g = gamma(a);
        return Ok(EvalResult::new(g, g * 4.0 * EPS));
    }
    if x.is_infinite() {
        return Ok(EvalResult::new(0.0, 0.0));
    }
    // x^a e^{-x}, in log form
    let log_prefix = a * x.ln() - x;
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = 1;
        while k < 10_000 {
            term *= x / (a + k as f64);
            sum += term;
            if term.abs() < sum.abs() * EPS {
                break;
            }
            k += 1;
        }
        let lower = sum * log_prefix.exp();
        let g = gamma(a);
        let value = g - lower;
        // error grows with the cancellation g - lower
        let err = (g.abs() + lower.abs()) * EPS * (4.0 + k as f64 * 0.1);
        Ok(EvalResult::new(value, err))
    } else {
        let tiny = f64::MIN_POSITIVE / EPS;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        let mut converged = false;
        let mut iters = 0;
        for i in 1..10_000 {
            iters = i;
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                what: "upper_inc_gamma continued fraction",
                best: log_prefix.exp() * h,
                err_est: f64::NAN,
            });
        }
        let value = log_prefix.exp() * h;
        Ok(EvalResult::new(value, value * EPS * (8.0 + iters as f64 * 0.05 + log_prefix.abs())))
    }
}
