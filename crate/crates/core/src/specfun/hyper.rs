use super::{pochhammer, EvalResult, EPS};
use crate::prelude::*;

const MAX_TERMS: usize = 1_000_000;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

/// Plain hypergeometric series for `0 ≤ w < 1`; returns `(sum, Σ|terms|)`.
fn series(a: f64, b: f64, c: f64, w: f64) -> Result<(f64, f64)> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    for j in 0..MAX_TERMS {
        let fj = j as f64;
        let ratio = (a + fj) * (b + fj) / ((c + fj) * (fj + 1.0)) * w;
        term *= ratio;
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 || (term.abs() <= EPS * 0.5 * sum.abs() && ratio.abs() < 1.0) {
            return Ok((sum, abs_sum));
        }
    }
    Err(Error::NoConvergence {
        what: "2F1 series",
        best: sum,
        err_est: term.abs(),
    })
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z < 1`.
///
/// Negative arguments are mapped by Pfaff's transformation
/// `₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))` onto `[0, 1)`, where
/// the series is summed directly. Accuracy is certified on
/// the arguments the moment formulas need, `z ∈ (−∞, 0]` with positive
/// parameters.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<EvalResult> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::Domain("2F1 arguments must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain("2F1 undefined for c in {0, -1, -2, ...}"));
    }
    if z >= 1.0 {
        return Err(Error::Domain("2F1 only supported for z < 1"));
    }
    if z == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0));
    }
    if z > 0.0 {
        let (s, abs) = series(a, b, c, z)?;
        return Ok(EvalResult::new(s, abs * EPS * 8.0));
    }
    let w = z / (z - 1.0);
    let ln1mz = (1.0 - z).ln();
    // the two Pfaff forms are both exact; keep whichever sums with less
    // cancellation
    let forms = [(a, a, c - b), (b, c - a, b)];
    let mut best: Option<EvalResult> = None;
    let mut last_err = None;
    for &(pre_exp, pa, pb) in &forms {
        match series(pa, pb, c, w) {
            Ok((s, abs)) => {
                let pre = (-pre_exp * ln1mz).exp();
                let value = pre * s;
                let err = pre * abs * EPS * 16.0 + value.abs() * EPS * (1.0 + (pre_exp * ln1mz).abs());
                if best.map_or(true, |b| err / value.abs() < b.abs_err_est / b.value.abs()) {
                    best = Some(EvalResult::new(value, err));
                }
                if abs <= 1.000_001 * s.abs() {
                    break;
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::Domain("2F1 evaluation failed")))
}

/// Terminating confluent hypergeometric function of the second kind,
/// `U(−m, b, x) = (−1)^m Σ_{j=0}^m C(m,j) (b+j)_{m−j} (−x)^j`, with the
/// Pochhammer convention `(a)_0 = 1`.
pub fn confluent_u_poly(m: u32, b: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    let mut xpow = 1.0;
    for j in 0..=m {
        sum += binom * pochhammer(b + j as f64, m - j) * xpow;
        binom = binom * (m - j) as f64 / (j + 1) as f64;
        xpow *= -x;
    }
    if m % 2 == 0 {
        sum
    } else {
        -sum
    }
}
