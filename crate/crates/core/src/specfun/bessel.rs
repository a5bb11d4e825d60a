use core::f64::consts::PI;

use super::{EvalResult, EPS};
use crate::prelude::*;

/// Taylor coefficients of `1/Γ(z) = Σ_{k≥1} c_k z^k` (Abramowitz & Stegun
/// 6.1.34); entry `j` holds `c_{j+1}`, so `1/Γ(1+z) = Σ_j C[j] z^j`.
const RGAMMA_SERIES: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

const RESCALE: f64 = 1e250;
const MAX_CF_ITER: usize = 100_000;

/// Temme's auxiliary gamma quantities for `|μ| ≤ 1/2`:
/// `(Γ₁(μ), Γ₂(μ), 1/Γ(1+μ), 1/Γ(1−μ))`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gampl = 0.0;
    let mut gammi = 0.0;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut pow = 1.0;
    for (j, &c) in RGAMMA_SERIES.iter().enumerate() {
        gampl += c * pow;
        if j % 2 == 0 {
            gammi += c * pow;
            gam2 += c * pow;
        } else {
            gammi -= c * pow;
        }
        pow *= mu;
    }
    // Γ₁ = −Σ_{j odd} C[j] μ^{j−1}, evaluated without dividing by μ
    let mut pow = 1.0;
    for j in (1..RGAMMA_SERIES.len()).step_by(2) {
        gam1 -= RGAMMA_SERIES[j] * pow;
        pow *= mu * mu;
    }
    (gam1, gam2, gampl, gammi)
}

/// `(K_μ(x), K_{μ+1}(x))` by Temme's series, `|μ| ≤ 1/2`, `x ≤ 2`.
fn temme_series(mu: f64, x: f64) -> (f64, f64) {
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..1000 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// `(eˣK_μ(x), eˣK_{μ+1}(x))` by Steed's continued fraction, `x > 2`.
fn steed_cf2(mu: f64, x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_CF_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    let k1 = kmu * (mu + x + 0.5 - h) / x;
    (kmu, k1)
}

/// Scaled value split as `eˣK_ν(x) = mantissa · exp(log_scale)`, `ν ≥ 0`.
fn scaled_parts(nu: f64, x: f64) -> (f64, f64) {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut kmu, mut k1) = if x <= 2.0 {
        let (a, b) = temme_series(mu, x);
        let ex = x.exp();
        (a * ex, b * ex)
    } else {
        steed_cf2(mu, x)
    };
    let mut log_scale = 0.0;
    let xi2 = 2.0 / x;
    for i in 1..=(nl as u64) {
        let next = (mu + i as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = next;
        if k1 > RESCALE {
            kmu /= RESCALE;
            k1 /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    (kmu, log_scale)
}

fn check_args(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() {
        return Err(Error::Domain("bessel_k order must be finite"));
    }
    if !(x > 0.0) {
        return Err(Error::Domain("bessel_k requires x > 0"));
    }
    Ok(nu.abs())
}

fn err_est(value: f64, nu: f64) -> f64 {
    value.abs() * EPS * (16.0 + 2.0 * nu)
}

/// Natural logarithm of `K_ν(x)`; never overflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    let nu = check_args(nu, x)?;
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    let (m, ls) = scaled_parts(nu, x);
    Ok(m.ln() + ls - x)
}

/// Exponentially scaled `eˣK_ν(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<EvalResult> {
    let nu = check_args(nu, x)?;
    if x.is_infinite() {
        return Ok(EvalResult::new(0.0, 0.0));
    }
    let (m, ls) = scaled_parts(nu, x);
    let v = if ls == 0.0 { m } else { (m.ln() + ls).exp() };
    if !v.is_finite() {
        return Err(Error::Range("bessel_k_scaled overflows"));
    }
    Ok(EvalResult::new(v, err_est(v, nu)))
}

/// Modified Bessel function of the second kind `K_ν(x)`, `x > 0`.
///
/// Temme's series for `x ≤ 2`, Steed's continued fraction above, then
/// forward recurrence in the order from `μ = ν − round(ν)`. Returns a range
/// error when the value leaves `f64`; [`bessel_k_scaled`] and
/// [`ln_bessel_k`] cover those regions.
pub fn bessel_k(nu: f64, x: f64) -> Result<EvalResult> {
    let nu_abs = check_args(nu, x)?;
    if x.is_infinite() {
        return Err(Error::Range("bessel_k underflows; use bessel_k_scaled"));
    }
    let (m, ls) = scaled_parts(nu_abs, x);
    let v = if ls == 0.0 && x < 700.0 {
        m * (-x).exp()
    } else {
        (m.ln() + ls - x).exp()
    };
    if v == 0.0 {
        return Err(Error::Range("bessel_k underflows; use bessel_k_scaled"));
    }
    if !v.is_finite() {
        return Err(Error::Range("bessel_k overflows; use ln_bessel_k"));
    }
    Ok(EvalResult::new(v, err_est(v, nu_abs)))
}

/// `K_{ν−1}(x)/K_ν(x)` without overflow.
pub fn bessel_k_ratio(nu: f64, x: f64) -> Result<f64> {
    let a = ln_bessel_k(nu - 1.0, x)?;
    let b = ln_bessel_k(nu, x)?;
    Ok((a - b).exp())
}

/// Bounds on `K_{ν−1}(x)/K_ν(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    /// Segura lower bound, valid for `ν > 1/2`.
    pub lower: f64,
    /// Ruiz-Antolín–Segura upper bound, valid for `ν > 1/2`.
    pub upper: f64,
    /// Sharper upper bound for `ν ≥ 3/2`, exact at `ν = 3/2`.
    pub sharp: Option<f64>,
}

pub fn bessel_ratio_bounds(nu: f64, x: f64) -> Result<RatioBounds> {
    if !(nu > 0.5) {
        return Err(Error::Domain("ratio bounds require nu > 1/2"));
    }
    if !(x > 0.0) {
        return Err(Error::Domain("ratio bounds require x > 0"));
    }
    let a = nu - 0.5;
    let b = nu - 1.0;
    let lower = x / (a + (a * a + x * x).sqrt());
    let upper = x / (b + (b * b + x * x).sqrt());
    let sharp = (nu >= 1.5).then(|| {
        let c = nu - 1.5;
        x / (a + (c * c + x * x).sqrt())
    });
    Ok(RatioBounds {
        lower,
        upper,
        sharp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Trapezoid rule on `∫₀^∞ e^{−x cosh t} cosh(νt) dt`; the integrand
    /// decays doubly exponentially, so the rule converges geometrically.
    fn integral_oracle(nu: f64, x: f64) -> f64 {
        let h = 0.005;
        let mut sum = 0.5 * (-x).exp();
        let mut t = h;
        loop {
            let term = (-x * t.cosh() + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp());
            sum += term;
            if x * t.cosh() - nu * t > 760.0 {
                break;
            }
            t += h;
        }
        sum * h
    }

    fn half_integer(m: u32, x: f64) -> f64 {
        let mut sum = 0.0;
        for j in 0..=m {
            let num: f64 = (1..=(m + j)).map(|v| v as f64).product();
            let den: f64 = (1..=(m - j)).map(|v| v as f64).product::<f64>()
                * (1..=j).map(|v| v as f64).product::<f64>();
            sum += num / den * (2.0 * x).powi(-(j as i32));
        }
        (PI / (2.0 * x)).sqrt() * sum * (-x).exp()
    }

    #[test]
    fn temme_gammas_match_direct_gamma() {
        for &mu in &[0.5, 0.3, 0.1, -0.2, -0.5] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let rp = 1.0 / gamma(1.0 + mu);
            let rm = 1.0 / gamma(1.0 - mu);
            assert!((gp - rp).abs() < 1e-15);
            assert!((gm - rm).abs() < 1e-15);
            assert!((g2 - 0.5 * (rm + rp)).abs() < 1e-15);
            assert!((g1 - (rm - rp) / (2.0 * mu)).abs() < 1e-13);
        }
        let (g1, ..) = temme_gammas(0.0);
        assert!((g1 + 0.577_215_664_901_532_9).abs() < 1e-16);
    }

    #[test]
    fn spot_values() {
        let k = bessel_k(0.5, 1.0).unwrap().value;
        assert!(rel(k, (PI / 2.0).sqrt() * (-1.0f64).exp()) < 1e-14);
        assert!((k - 0.461_068_504).abs() < 1e-9);
        let k = bessel_k(1.5, 2.0).unwrap().value;
        let closed = (PI / 4.0).sqrt() * 1.5 * (-2.0f64).exp();
        assert!(rel(k, closed) < 1e-13);
        assert!((k - 0.179_906).abs() < 1e-6);
        let k0 = bessel_k(0.0, 1e-6).unwrap().value;
        assert!((k0 / -(1e-6f64).ln() - 1.0).abs() < 0.05);
    }

    #[test]
    fn matches_integral_representation() {
        for &nu in &[0.0, 0.3, 0.5, 1.0, 2.7, 6.0, 10.0, 25.5] {
            for &x in &[1e-3, 0.05, 0.5, 1.9, 2.0, 2.1, 5.0, 10.0, 60.0, 300.0] {
                let got = bessel_k(nu, x);
                let Ok(got) = got else { continue };
                let expect = integral_oracle(nu, x);
                if !expect.is_finite() || expect == 0.0 {
                    continue;
                }
                assert!(rel(got.value, expect) < 1e-12, "nu={nu} x={x} {} {}", got.value, expect);
            }
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        for m in 0..=8u32 {
            for &x in &[1e-3, 0.1, 0.7, 1.0, 2.0, 3.3, 10.0, 40.0, 200.0] {
                let got = bessel_k(m as f64 + 0.5, x).unwrap().value;
                assert!(rel(got, half_integer(m, x)) < 1e-12, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn negative_order_symmetry() {
        for &nu in &[0.25, 1.0, 3.7] {
            let a = bessel_k(nu, 1.3).unwrap().value;
            let b = bessel_k(-nu, 1.3).unwrap().value;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn recurrence_identity() {
        for i in 0..=10 {
            let nu = i as f64;
            for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
                let km = bessel_k_scaled(nu - 1.0, x).unwrap().value;
                let k = bessel_k_scaled(nu, x).unwrap().value;
                let kp = bessel_k_scaled(nu + 1.0, x).unwrap().value;
                let rhs = km + 2.0 * nu / x * k;
                assert!(rel(kp, rhs) < 1e-10, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn limiting_forms() {
        for &nu in &[0.5, 1.0, 2.5, 4.0] {
            let x = 1e-7;
            let asym = 2f64.powf(nu - 1.0) * gamma(nu) * x.powf(-nu);
            let k = bessel_k(nu, x).unwrap().value;
            assert!((k / asym - 1.0).abs() < 0.01, "nu={nu}");
        }
        for &nu in &[0.0, 0.5, 1.0, 2.5] {
            let x = 200.0;
            let asym = (PI / (2.0 * x)).sqrt() * (-x).exp();
            let k = bessel_k(nu, x).unwrap().value;
            assert!((k / asym - 1.0).abs() < 0.02, "nu={nu}");
        }
    }

    #[test]
    fn differentiation_formula() {
        // d/dx (x^ν K_ν(x)) = −x^ν K_{ν−1}(x)
        for &nu in &[0.0, 0.5, 1.0, 2.3, 5.0] {
            for &x in &[0.3, 1.0, 3.0, 12.0] {
                let f = |t: f64| t.powf(nu) * bessel_k(nu, t).unwrap().value;
                let h = 1e-5 * x;
                let fd = (f(x + h) - f(x - h)) / (2.0 * h);
                let exact = -x.powf(nu) * bessel_k(nu - 1.0, x).unwrap().value;
                assert!(rel(fd, exact) < 1e-6, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn monotone_decreasing_in_x() {
        for &nu in &[0.0, 0.5, 3.0, 12.0] {
            let mut prev = f64::INFINITY;
            let mut x = 0.01;
            while x < 600.0 {
                let k = bessel_k(nu, x).unwrap().value;
                assert!(k < prev);
                prev = k;
                x *= 1.3;
            }
        }
    }

    #[test]
    fn range_signals() {
        assert!(matches!(bessel_k(1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(1.0, -2.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(0.0, 800.0), Err(Error::Range(_))));
        let s = bessel_k_scaled(0.0, 800.0).unwrap().value;
        assert!(rel(s, (PI / 1600.0).sqrt()) < 1e-3);
        assert!(matches!(bessel_k(60.0, 1e-8), Err(Error::Range(_))));
        let l = ln_bessel_k(60.0, 1e-8).unwrap();
        let asym = 59.0 * 2f64.ln() + crate::specfun::ln_gamma(60.0) - 60.0 * (1e-8f64).ln();
        assert!((l - asym).abs() < 1e-10 * asym);
    }

    #[test]
    fn wide_range_against_oracle() {
        for &nu in &[0.0, 7.5, 33.0, 60.0] {
            for &x in &[1e-8, 1e-4, 3.0, 150.0, 700.0] {
                if let Ok(k) = bessel_k(nu, x) {
                    let o = integral_oracle(nu, x);
                    if o.is_finite() && o > 0.0 {
                        assert!(rel(k.value, o) < 1e-12, "nu={nu} x={x} {} {}", k.value, o);
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_bounds() {
        for &x in &[0.01, 0.5, 1.0, 7.0, 50.0] {
            let b = bessel_ratio_bounds(1.5, x).unwrap();
            let r = bessel_k_ratio(1.5, x).unwrap();
            let sharp = b.sharp.unwrap();
            assert!((sharp - x / (1.0 + x)).abs() < 1e-15);
            assert!((r - sharp).abs() < 1e-13);
        }
        let b = bessel_ratio_bounds(2.0, 5.0).unwrap();
        let r = bessel_k_ratio(2.0, 5.0).unwrap();
        assert!(b.lower < r && r < b.upper && r < b.sharp.unwrap());
        let b = bessel_ratio_bounds(1.0, 0.1).unwrap();
        let r = bessel_k(0.0, 0.1).unwrap().value / bessel_k(1.0, 0.1).unwrap().value;
        assert!(b.lower < r && r < b.upper);
        assert!(b.sharp.is_none());
        assert!(bessel_ratio_bounds(0.5, 1.0).is_err());
    }
}
