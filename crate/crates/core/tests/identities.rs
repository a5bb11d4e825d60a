//! Integral identities of K_ν checked by brute-force quadrature.

use prodnorm_core::quad::{integrate, integrate_upper, QuadConfig};
use prodnorm_core::specfun::{bessel_k, bessel_k_scaled, gamma, gauss_2f1, struve_l};
use std::f64::consts::PI;

fn k(nu: f64, x: f64) -> f64 {
    bessel_k(nu, x).unwrap().value
}

// e^{x}K_ν(x)
fn ks(nu: f64, x: f64) -> f64 {
    bessel_k_scaled(nu, x).unwrap().value
}

fn cfg() -> QuadConfig {
    QuadConfig::with_tol(0.0, 1e-12)
}

#[test]
fn struve_integral() {
    for nu in [0.0, 0.5, 1.0, 2.0] {
        for (alpha, a) in [(1.0, 0.7), (2.5, 1.3), (0.4, 6.0)] {
            let lhs = integrate(|t| if t > 0.0 { t.powf(nu) * k(nu, alpha * t) } else { 0.0 }, 0.0, a, &cfg())
                .unwrap()
                .value;
            let z = alpha * a;
            let rhs = PI.sqrt() * 2f64.powf(nu - 1.0) * gamma(nu + 0.5) / alpha.powf(nu)
                * a
                * (k(nu, z) * struve_l(nu - 1.0, z).unwrap().value + k(nu - 1.0, z) * struve_l(nu, z).unwrap().value);
            assert!(((lhs - rhs) / rhs).abs() < 1e-8, "nu={nu} alpha={alpha} a={a}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn laplace_type_integral() {
    // (mu, nu, alpha, beta)
    let grid = [
        (1.0, 0.0, 1.0, 0.0),
        (1.5, 0.5, 1.0, 0.3),
        (2.0, 1.0, 2.0, -0.5),
        (2.5, 0.0, 1.0, 0.8),
        (3.0, 1.5, 1.5, 0.2),
        (4.0, 2.0, 1.0, -1.0),
        (1.2, 0.3, 0.7, 0.1),
        (5.0, 3.0, 3.0, 2.0),
        (2.2, -0.7, 1.0, 0.5),
        (3.5, 0.5, 0.5, -0.25),
    ];
    for (mu, nu, alpha, beta) in grid {
        let f = |t: f64| {
            if t > 0.0 {
                t.powf(mu - 1.0) * ((beta - alpha) * t).exp() * ks(nu, alpha * t)
            } else {
                0.0
            }
        };
        let head = integrate(f, 0.0, 1.0, &cfg()).unwrap().value;
        let tail = integrate_upper(f, 1.0, 1.0 / (alpha - beta), &cfg()).unwrap().value;
        let lhs = head + tail;
        let rhs = PI.sqrt() * (2.0 * alpha).powf(nu) / (alpha - beta).powf(mu + nu) * gamma(mu + nu) * gamma(mu - nu)
            / gamma(mu + 0.5)
            * gauss_2f1(mu + nu, nu + 0.5, mu + 0.5, -(alpha + beta) / (alpha - beta)).unwrap().value;
        assert!(((lhs - rhs) / rhs).abs() < 1e-7, "({mu},{nu},{alpha},{beta}): {lhs} vs {rhs}");
    }
}

#[test]
fn tail_integral_asymptote() {
    // the first correction is ≈ (4ν²−1)/(8αx) + (ν−½)/((α−β)x), so higher
    // orders need a larger x for the same accuracy
    for (nu, alpha, beta, mult) in [
        (0.0, 1.0, 0.0, 30.0),
        (0.5, 1.0, 0.5, 30.0),
        (1.0, 2.0, -1.0, 30.0),
        (-0.3, 1.0, 0.9, 30.0),
        (2.0, 2.0, -1.0, 120.0),
    ] {
        let x = mult / (alpha - beta);
        let tail = integrate_upper(
            |t| ((beta - alpha) * t).exp() * t.powf(nu) * ks(nu, alpha * t),
            x,
            1.0 / (alpha - beta),
            &cfg(),
        )
        .unwrap()
        .value;
        let asym = (PI / (2.0 * alpha)).sqrt() / (alpha - beta) * x.powf(nu - 0.5) * (-(alpha - beta) * x).exp();
        assert!((tail / asym - 1.0).abs() < 0.05, "nu={nu}: ratio {}", tail / asym);
    }
}
