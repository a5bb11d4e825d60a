use super::{ln_gamma, EvalResult, EPS};
use crate::prelude::*;

const RESCALE: f64 = 1e280;
const MAX_TERMS: usize = 20_000;

/// `e^{−x}L_ν(x)` as `(value, abs_err_est)` from the ascending series.
///
/// For `ν ≥ −3/2` every term of the series is non-negative, so the sum has
/// no cancellation; the exponential scaling keeps large `x` finite.
fn scaled_series(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(nu >= -1.5) || !nu.is_finite() {
        return Err(Error::Domain("struve_l supports nu >= -3/2 only"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("struve_l requires finite x >= 0"));
    }
    if x == 0.0 {
        return if nu > -1.0 {
            Ok((0.0, 0.0))
        } else if nu == -1.0 {
            Ok((2.0 / core::f64::consts::PI, 0.0))
        } else {
            Err(Error::Singularity("struve_l diverges at x = 0 for nu < -1"))
        };
    }
    let half = 0.5 * x;
    let q = half * half;
    // first non-vanishing term index: j = 1 when ν = −3/2 (1/Γ(0) = 0)
    let j0 = if nu == -1.5 { 1usize } else { 0 };
    let fj = j0 as f64;
    let ln_t0 = (nu + 2.0 * fj + 1.0) * half.ln() - ln_gamma(fj + 1.5) - ln_gamma(fj + nu + 1.5);
    let mut log_scale = ln_t0 - x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut count = 1usize;
    let mut j = j0;
    loop {
        let fj = j as f64;
        term *= q / ((fj + 1.5) * (fj + nu + 1.5));
        sum += term;
        count += 1;
        j += 1;
        if sum > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += RESCALE.ln();
        }
        // past the peak of the terms and below roundoff
        if fj > half && term <= sum * EPS * 0.25 {
            break;
        }
        if count > MAX_TERMS {
            return Err(Error::PrecisionLoss {
                what: "struve_l series",
                rel_err: term / sum,
            });
        }
    }
    let value = (sum.ln() + log_scale).exp();
    let err = value * EPS * (8.0 + 0.5 * (count as f64).sqrt() + ln_t0.abs() * 0.5);
    Ok((value, err))
}

/// Exponentially scaled modified Struve function `e^{−x}L_ν(x)`.
pub fn struve_l_scaled(nu: f64, x: f64) -> Result<EvalResult> {
    let (v, e) = scaled_series(nu, x)?;
    Ok(EvalResult::new(v, e))
}

/// Modified Struve function of the first kind,
/// `L_ν(x) = Σ_j (x/2)^{ν+2j+1} / (Γ(j+3/2)Γ(j+ν+3/2))`.
pub fn struve_l(nu: f64, x: f64) -> Result<EvalResult> {
    let (v, e) = scaled_series(nu, x)?;
    let ex = x.exp();
    let value = v * ex;
    if !value.is_finite() {
        return Err(Error::Range("struve_l overflows; use struve_l_scaled"));
    }
    Ok(EvalResult::new(value, e * ex))
}
