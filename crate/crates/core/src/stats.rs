//! Sample statistics: Kolmogorov–Smirnov tests, k-statistics, empirical
//! Wasserstein distance.

use alloc::vec::Vec;

use crate::prelude::*;

/// Kolmogorov–Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n_eff: f64,
}

/// `Q_KS(λ) = 2 Σ (−1)^{j−1} e^{−2j²λ²}`, the Kolmogorov survival function.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_p(d: f64, n_eff: f64) -> f64 {
    let sq = n_eff.sqrt();
    kolmogorov_q((sq + 0.12 + 0.11 / sq) * d)
}

fn sorted(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("sample contains NaN"));
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    Ok(v)
}

/// One-sample KS test of `xs` against the continuous CDF `cdf`.
pub fn ks_one_sample<F: FnMut(f64) -> Result<f64>>(xs: &[f64], mut cdf: F) -> Result<KsResult> {
    if xs.is_empty() {
        return Err(Error::Domain("empty sample"));
    }
    let v = sorted(xs)?;
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x)?;
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult {
        statistic: d,
        p_value: ks_p(d, n),
        n_eff: n,
    })
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("empty sample"));
    }
    let (a, b) = (sorted(a)?, sorted(b)?);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let n_eff = na * nb / (na + nb);
    Ok(KsResult {
        statistic: d,
        p_value: ks_p(d, n_eff),
        n_eff,
    })
}

/// Unbiased k-statistics `k₁..k₄`.
pub fn k_statistics(xs: &[f64]) -> Result<[f64; 4]> {
    let n = xs.len();
    if n < 4 {
        return Err(Error::Domain("k-statistics need at least 4 observations"));
    }
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let (mut s1, mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - mean;
        let d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    let k2 = (nf * s2 - s1 * s1) / (nf * (nf - 1.0));
    let k3 = (2.0 * s1.powi(3) - 3.0 * nf * s1 * s2 + nf * nf * s3) / (nf * (nf - 1.0) * (nf - 2.0));
    let k4 = (-6.0 * s1.powi(4) + 12.0 * nf * s1 * s1 * s2 - 3.0 * nf * (nf - 1.0) * s2 * s2
        - 4.0 * nf * (nf + 1.0) * s1 * s3
        + nf * nf * (nf + 1.0) * s4)
        / (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0));
    Ok([mean + s1 / nf, k2, k3, k4])
}

/// Standard errors of `k₁..k₄` for a sample of size `n` from a law with
/// cumulants `κ₁..κ₈` (Fisher's sampling variances).
pub fn k_statistic_std_errors(kappa: &[f64], n: usize) -> Result<[f64; 4]> {
    if kappa.len() < 8 {
        return Err(Error::Domain("need cumulants up to order 8"));
    }
    if n < 4 {
        return Err(Error::Domain("sample size must be at least 4"));
    }
    let k = |r: usize| kappa[r - 1];
    let nf = n as f64;
    let (n1, n2, n3) = (nf - 1.0, nf - 2.0, nf - 3.0);
    let v1 = k(2) / nf;
    let v2 = k(4) / nf + 2.0 * k(2) * k(2) / n1;
    let v3 = k(6) / nf + 9.0 * (k(2) * k(4) + k(3) * k(3)) / n1 + 6.0 * nf * k(2).powi(3) / (n1 * n2);
    let v4 = k(8) / nf
        + (16.0 * k(2) * k(6) + 48.0 * k(3) * k(5) + 34.0 * k(4) * k(4)) / n1
        + 72.0 * nf * (k(2) * k(2) * k(4) + 2.0 * k(2) * k(3) * k(3)) / (n1 * n2)
        + 24.0 * nf * (nf + 1.0) * k(2).powi(4) / (n1 * n2 * n3);
    Ok([v1.sqrt(), v2.sqrt(), v3.sqrt(), v4.sqrt()])
}

/// Plug-in sample cumulants `κ₁..κ₆` from central sample moments.
pub fn sample_cumulants6(xs: &[f64]) -> Result<[f64; 6]> {
    if xs.len() < 2 {
        return Err(Error::Domain("need at least 2 observations"));
    }
    let nf = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let mut m = [0.0f64; 7];
    for &x in xs {
        let d = x - mean;
        let mut p = d * d;
        for r in 2..=6 {
            m[r] += p;
            p *= d;
        }
    }
    for v in m.iter_mut() {
        *v /= nf;
    }
    Ok([
        mean,
        m[2],
        m[3],
        m[4] - 3.0 * m[2] * m[2],
        m[5] - 10.0 * m[3] * m[2],
        m[6] - 15.0 * m[4] * m[2] - 10.0 * m[3] * m[3] + 30.0 * m[2].powi(3),
    ])
}

/// Wasserstein-1 distance between two empirical distributions,
/// `∫ |F_a − F_b|`.
pub fn wasserstein1(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("empty sample"));
    }
    let (a, b) = (sorted(a)?, sorted(b)?);
    if a.len() == b.len() {
        return Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut last = a[0].min(b[0]);
    let mut total = 0.0;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => break,
        };
        total += (i as f64 / na - j as f64 / nb).abs() * (x - last);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        last = x;
    }
    Ok(total)
}
