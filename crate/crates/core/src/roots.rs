//! Bracketed root finding (Brent's method).

use crate::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    /// Final bracket `[lo, hi]` containing a sign change.
    pub bracket: (f64, f64),
}

/// Brent's method on `[a, b]`; `f(a)` and `f(b)` must differ in sign (or
/// one of them vanish). Stops when the bracket is narrower than
/// `2·(4ε|x| + xtol)`.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<Root> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            fx: 0.0,
            iterations: 0,
            bracket: (a, a),
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            fx: 0.0,
            iterations: 0,
            bracket: (b, b),
        });
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Domain("root is not bracketed"));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            let (lo, hi) = if b < c { (b, c) } else { (c, b) };
            return Ok(Root {
                x: b,
                fx: fb,
                iterations: iter,
                bracket: (lo, hi),
            });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain("function returned NaN inside bracket"));
        }
    }
    Err(Error::NoConvergence {
        what: "brent root finder",
        best: b,
        err_est: (c - b).abs(),
    })
}

/// Widens `[lo, hi]` geometrically until `f` changes sign.
pub fn expand_bracket<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, max_steps: usize) -> Result<(f64, f64)> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for _ in 0..max_steps {
        if flo.signum() != fhi.signum() {
            return Ok((lo, hi));
        }
        let w = hi - lo;
        if flo.abs() < fhi.abs() {
            lo -= w;
            flo = f(lo);
        } else {
            hi += w;
            fhi = f(hi);
        }
    }
    Err(Error::NoConvergence {
        what: "bracket expansion",
        best: 0.5 * (lo + hi),
        err_est: hi - lo,
    })
}
