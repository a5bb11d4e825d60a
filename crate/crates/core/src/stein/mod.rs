//! Stein characterisation and characteristic-function ODE checks.
//!
//! The operator is
//! `A g(w) = sₙ²(1−ρ²) w g″(w) + (n sₙ²(1−ρ²) + 2ρsₙ w) g′(w) + (ρs − w) g(w)`,
//! whose expectation vanishes for all suitable `g` exactly when `W ~ Z̄ₙ`.
//! (The coefficient of `g` is `ρs − w`; the printed form with `ρ s_n` is a
//! known typo.)

mod functions;

use alloc::vec::Vec;

pub use functions::TestFunction;

use crate::dist::{cf, cf_derivative, moment_set, pdf, MomentRoute};
use crate::prelude::*;
use crate::quad::{integrate_lower, integrate_upper, QuadConfig};
use crate::sampling::{sample, Representation};
use crate::DistParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinMethod {
    Quadrature,
    MonteCarlo { seed: u64, count: usize },
}

impl SteinMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SteinMethod::Quadrature => "quadrature",
            SteinMethod::MonteCarlo { .. } => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinReport {
    pub test_function: TestFunction,
    /// Estimate of `E[A g(W)]`.
    pub residual: f64,
    /// Monte-Carlo standard error, or the quadrature error estimate.
    pub error: f64,
    pub method: SteinMethod,
}

/// `A g(w)` for the operator of `params`.
pub fn stein_operator(p: &DistParams, g: &TestFunction, w: f64) -> f64 {
    let (g0, g1, g2) = g.eval(w);
    let sn = p.s_n();
    let c = sn * sn * (1.0 - p.rho()) * (1.0 + p.rho());
    c * w * g2 + (p.nf() * c + 2.0 * p.rho() * sn * w) * g1 + (p.rho() * p.s() - w) * g0
}

/// `E[A g(W)]` with the operator of `operator` and `W` distributed by `law`.
pub fn stein_residual_under(operator: &DistParams, law: &DistParams, g: &TestFunction, method: SteinMethod) -> Result<SteinReport> {
    let (residual, error) = match method {
        SteinMethod::Quadrature => {
            let h = |x: f64| {
                let f = pdf(law, x).unwrap_or(0.0);
                if f == 0.0 {
                    0.0
                } else {
                    stein_operator(operator, g, x) * f
                }
            };
            // tail contributions must have decayed well inside the mapped range
            let far_r = 200.0 * law.s_n() * (1.0 + law.rho()) * (1.0 + law.nf());
            let far_l = -200.0 * law.s_n() * (1.0 - law.rho()) * (1.0 + law.nf());
            let (tr, tl) = (h(far_r), h(far_l));
            if !(tr.abs() <= 1e-12 && tl.abs() <= 1e-12) {
                return Err(Error::Growth("Stein integrand does not decay in the tails"));
            }
            let scale_r = law.s_n() * (1.0 + law.rho()) * (0.5 * law.nf()).max(1.0);
            let scale_l = law.s_n() * (1.0 - law.rho()) * (0.5 * law.nf()).max(1.0);
            // the residual is a cancellation of O(∫|h|) terms: set the
            // absolute target from that magnitude
            let rough = QuadConfig::with_tol(0.0, 1e-6);
            let magnitude = integrate_upper(|x| h(x).abs(), 0.0, scale_r, &rough)?.value
                + integrate_lower(|x| h(x).abs(), 0.0, scale_l, &rough)?.value;
            let cfg = QuadConfig::with_tol(1e-13 * magnitude.max(f64::MIN_POSITIVE), 1e-12);
            let r = integrate_upper(h, 0.0, scale_r, &cfg)?;
            let l = integrate_lower(h, 0.0, scale_l, &cfg)?;
            (r.value + l.value, r.abs_err + l.abs_err)
        }
        SteinMethod::MonteCarlo { seed, count } => {
            if count < 2 {
                return Err(Error::Domain("Monte Carlo needs at least 2 draws"));
            }
            let batch = sample(law, Representation::R4GammaDifference, seed, count)?;
            let vals: Vec<f64> = batch.values.iter().map(|&w| stein_operator(operator, g, w)).collect();
            let nf = count as f64;
            let mean = vals.iter().sum::<f64>() / nf;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
            (mean, (var / nf).sqrt())
        }
    };
    if !residual.is_finite() {
        return Err(Error::Growth("Stein expectation is not finite"));
    }
    Ok(SteinReport {
        test_function: *g,
        residual,
        error,
        method,
    })
}

/// `E[A g(W)]` for `W ~ Z̄ₙ(params)`; zero up to the reported error.
pub fn stein_residual(p: &DistParams, g: &TestFunction, method: SteinMethod) -> Result<SteinReport> {
    stein_residual_under(p, p, g, method)
}

/// `E[A x^k]` assembled from moments of the chosen route (no sampling or
/// quadrature): exactly the first moment recursion when the moments are
/// those of `Z̄ₙ`.
pub fn stein_monomial_algebraic(p: &DistParams, k: u32, route: MomentRoute) -> Result<f64> {
    let ms = moment_set(p, k as usize + 1, route)?;
    let m = |j: u32| if j == 0 { 1.0 } else { ms.raw[j as usize - 1] };
    let sn = p.s_n();
    let c = sn * sn * (1.0 - p.rho()) * (1.0 + p.rho());
    let kf = k as f64;
    let mut r = (2.0 * p.rho() * sn * kf + p.rho() * p.s()) * m(k) - m(k + 1);
    if k >= 1 {
        r += kf * (kf - 1.0 + p.nf()) * c * m(k - 1);
    }
    Ok(r)
}

/// Result of running a test-function suite under a mismatched law.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrimination {
    pub reports: Vec<SteinReport>,
    /// `|residual| > 5·error` for the report at the same index.
    pub flagged: Vec<bool>,
}

impl Discrimination {
    pub fn any_flagged(&self) -> bool {
        self.flagged.iter().any(|&f| f)
    }
}

/// Monte-Carlo Stein residuals of `params`' operator under `wrong` draws.
pub fn stein_discriminates(
    p: &DistParams,
    wrong: &DistParams,
    suite: &[TestFunction],
    seed: u64,
    count: usize,
) -> Result<Discrimination> {
    let mut reports = Vec::with_capacity(suite.len());
    let mut flagged = Vec::with_capacity(suite.len());
    for (i, g) in suite.iter().enumerate() {
        let r = stein_residual_under(p, wrong, g, SteinMethod::MonteCarlo { seed: seed.wrapping_add(i as u64), count })?;
        flagged.push(r.residual.abs() > 5.0 * r.error);
        reports.push(r);
    }
    Ok(Discrimination { reports, flagged })
}

/// Largest modulus of the CF ODE residual
/// `(sₙ²(1−ρ²)t² − 2ρisₙt + 1)φ′ + (nsₙ²(1−ρ²)t − ρinsₙ)φ` over `ts`,
/// with `φ` taken from `phi_law` (equal to `p` for the true CF).
pub fn cf_ode_residual_with(p: &DistParams, phi_law: &DistParams, ts: &[f64]) -> f64 {
    let sn = p.s_n();
    let c = sn * sn * (1.0 - p.rho()) * (1.0 + p.rho());
    let n = p.nf();
    ts.iter()
        .map(|&t| {
            let a = num_complex::Complex64::new(c * t * t + 1.0, -2.0 * p.rho() * sn * t);
            let b = num_complex::Complex64::new(n * c * t, -p.rho() * n * sn);
            (a * cf_derivative(phi_law, t) + b * cf(phi_law, t)).norm()
        })
        .fold(0.0, f64::max)
}

pub fn cf_ode_residual(p: &DistParams, ts: &[f64]) -> f64 {
    cf_ode_residual_with(p, p, ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, rho: f64, s: f64) -> DistParams {
        DistParams::with_scale(n, rho, s).unwrap()
    }

    #[test]
    fn constant_and_linear() {
        let p = params(3, 0.4, 1.0);
        let r = stein_residual(&p, &TestFunction::Monomial(0), SteinMethod::Quadrature).unwrap();
        assert!(r.residual.abs() <= 1e-8);
        let r = stein_residual(&p, &TestFunction::Monomial(1), SteinMethod::Quadrature).unwrap();
        assert!(r.residual.abs() <= 1e-8);
    }

    #[test]
    fn suite_by_quadrature() {
        for &(n, rho) in &[(1u32, 0.5), (3, 0.4), (4, -0.7)] {
            let p = params(n, rho, 1.0);
            for g in TestFunction::suite() {
                let r = stein_residual(&p, &g, SteinMethod::Quadrature).unwrap_or_else(|e| panic!("n={n} {g:?}: {e}"));
                assert!(r.residual.abs() <= 1e-6, "n={n} {:?}: {}", g, r.residual);
            }
        }
    }

    #[test]
    fn algebraic_monomials() {
        let p = params(3, 0.6, 1.5);
        for k in 0..=6 {
            for route in [MomentRoute::Hypergeometric, MomentRoute::Cgf] {
                let r = stein_monomial_algebraic(&p, k, route).unwrap();
                let scale = moment_set(&p, k as usize + 1, route).unwrap().raw[k as usize].abs();
                assert!(r.abs() <= 1e-9 * scale.max(1.0), "k={k}: {r}");
            }
        }
    }

    #[test]
    fn monte_carlo_agrees() {
        let p = params(2, 0.3, 1.0);
        let g = TestFunction::Sin;
        let r = stein_residual(&p, &g, SteinMethod::MonteCarlo { seed: 5, count: 200_000 }).unwrap();
        assert!(r.residual.abs() < 5.0 * r.error);
    }

    #[test]
    fn discrimination() {
        let a = params(1, 0.5, 1.0);
        let b = params(1, 0.0, 1.0);
        let d = stein_discriminates(&a, &b, &[TestFunction::Monomial(1)], 1, 100_000).unwrap();
        assert!(d.any_flagged());
    }

    #[test]
    fn cf_ode() {
        let ts: Vec<f64> = (0..101).map(|i| -20.0 + 0.4 * i as f64).collect();
        for &(n, rho, s) in &[(1u32, 0.3, 1.0), (5, -0.8, 2.0), (2, 0.0, 0.5)] {
            let p = params(n, rho, s);
            assert!(cf_ode_residual(&p, &ts) <= 1e-10);
            let q = p.with_rho(rho + 0.1).unwrap();
            assert!(cf_ode_residual_with(&p, &q, &ts) > 1e-3);
        }
    }

    #[test]
    fn growth_detected() {
        let p = params(1, 0.2, 1.0);
        let r = stein_residual(&p, &TestFunction::ExpLinear(5.0), SteinMethod::Quadrature);
        assert!(matches!(r, Err(Error::Growth(_))), "{r:?}");
    }
}
