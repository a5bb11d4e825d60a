use proptest::prelude::*;

use prodnorm_core::chaos::{chaos_cumulants, six_moment_gap, y_phi_params, ChaosSpec};
use prodnorm_core::dist::*;
use prodnorm_core::quad::{integrate_lower, integrate_upper, QuadConfig};
use prodnorm_core::sampling::{sample, second_chaos_form, Representation};
use prodnorm_core::specfun::bessel_k;
use prodnorm_core::stein::stein_monomial_algebraic;
use prodnorm_core::DistParams;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn params() -> impl Strategy<Value = DistParams> {
    (1u32..=12, -0.95f64..0.95, 0.2f64..3.0).prop_map(|(n, r, s)| DistParams::with_scale(n, r, s).unwrap())
}

fn params_pos_rho() -> impl Strategy<Value = DistParams> {
    (3u32..=14, 0.05f64..0.95, 0.2f64..3.0).prop_map(|(n, r, s)| DistParams::with_scale(n, r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bessel_recurrence(nu in 0.0f64..10.0, x in 0.1f64..50.0) {
        let k = |v: f64| bessel_k(v, x).unwrap().value;
        let lhs = k(nu + 1.0);
        let rhs = k(nu - 1.0) + 2.0 * nu / x * k(nu);
        prop_assert!(rel(lhs, rhs) < 1e-10, "{lhs} {rhs}");
    }

    #[test]
    fn reflection_symmetry(p in params(), x in -20.0f64..20.0) {
        let q = p.with_rho(-p.rho()).unwrap();
        let a = pdf(&p, x).unwrap();
        let b = pdf(&q, -x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn even_n_elementary_form(k in 1u32..=6, r in -0.95f64..0.95, s in 0.2f64..3.0, u in -20.0f64..20.0) {
        let p = DistParams::with_scale(2 * k, r, s).unwrap();
        let x = u * s;
        if x != 0.0 {
            let a = pdf(&p, x).unwrap();
            let b = pdf_elementary(&p, x).unwrap();
            if b > 1e-250 {
                prop_assert!(rel(a, b) < 1e-10, "{a} {b}");
            }
        }
    }

    #[test]
    fn cdf_monotone_and_complementary(p in params(), mut xs in prop::collection::vec(-8.0f64..8.0, 2..12)) {
        xs.sort_by(f64::total_cmp);
        let mut last = 0.0;
        for &u in &xs {
            let x = u * p.s_n() * 3.0;
            let c = cdf(&p, x).unwrap();
            prop_assert!(c >= last - 1e-14);
            prop_assert!((0.0..=1.0).contains(&c));
            let sv = survival(&p, x).unwrap();
            prop_assert!((c + sv - 1.0).abs() < 1e-9);
            last = c;
        }
    }

    #[test]
    fn quantile_inverts_cdf(p in params(), q in 0.001f64..0.999) {
        let x = quantile(&p, q).unwrap();
        prop_assert!((cdf(&p, x).unwrap() - q).abs() <= 1e-8);
    }

    #[test]
    fn moment_routes_agree(p in params()) {
        let rec = moment_set(&p, 8, MomentRoute::Recursion).unwrap();
        let hyp = moment_set(&p, 8, MomentRoute::Hypergeometric).unwrap();
        let cgf = moment_set(&p, 8, MomentRoute::Cgf).unwrap();
        for k in 0..8 {
            let scale = rec.raw[k].abs().max(p.s_n().powi(k as i32 + 1) * 1e-3);
            prop_assert!((rec.raw[k] - hyp.raw[k]).abs() / scale < 1e-8, "k={} {} {}", k + 1, rec.raw[k], hyp.raw[k]);
            prop_assert!((rec.raw[k] - cgf.raw[k]).abs() / scale < 1e-8, "k={} {} {}", k + 1, rec.raw[k], cgf.raw[k]);
        }
    }

    #[test]
    fn kan_route_for_single_product(r in -0.95f64..0.95, s in 0.2f64..3.0) {
        let p = DistParams::with_scale(1, r, s).unwrap();
        let rec = moment_set(&p, 8, MomentRoute::Recursion).unwrap();
        let kan = moment_set(&p, 8, MomentRoute::Kan).unwrap();
        for k in 0..8 {
            let scale = rec.raw[k].abs().max(s.powi(k as i32 + 1) * 1e-3);
            prop_assert!((rec.raw[k] - kan.raw[k]).abs() / scale < 1e-8);
        }
    }

    #[test]
    fn mgf_derivatives_match_moments(p in params()) {
        let h = 1e-3 / p.s_n();
        let m = |t: f64| mgf(&p, t).unwrap();
        let d1 = (m(h) - m(-h)) / (2.0 * h);
        let d2 = (m(h) - 2.0 * m(0.0) + m(-h)) / (h * h);
        let d3 = (m(2.0 * h) - 2.0 * m(h) + 2.0 * m(-h) - m(-2.0 * h)) / (2.0 * h * h * h);
        let raw = moments_recursive(&p, 3).raw;
        let sc = |k: i32| p.s_n().powi(k) * p.nf().powi(k);
        prop_assert!((d1 - raw[0]).abs() / raw[0].abs().max(1e-2 * sc(1)) < 1e-4);
        prop_assert!((d2 - raw[1]).abs() / raw[1].abs() < 1e-4);
        prop_assert!((d3 - raw[2]).abs() / raw[2].abs().max(1e-2 * sc(3)) < 1e-4);
    }

    #[test]
    fn mode_brackets(p in params_pos_rho()) {
        let m = mode(&p).unwrap();
        let b = mode_bounds(&p);
        prop_assert!(b.coarse.0 < m && m < b.coarse.1, "{m} {:?}", b.coarse);
        if let Some(lo) = b.sharp_magnitude {
            prop_assert!(m >= lo * (1.0 - 1e-12));
        }
        let gap = p.rho() * p.s() - m;
        prop_assert!(b.mean_gap.0 < gap && gap < b.mean_gap.1);
    }

    #[test]
    fn survival_bound_single_product(r in 0.0f64..0.99, s in 0.2f64..3.0, u in 0.01f64..40.0) {
        let p = DistParams::with_scale(1, r, s).unwrap();
        let x = u * s;
        prop_assert!(survival(&p, x).unwrap() < survival_bound(&p, x).unwrap());
    }

    #[test]
    fn stein_monomials_are_exact(p in params(), k in 0u32..=6) {
        let m2 = moments_recursive(&p, 2).raw[1];
        let r = stein_monomial_algebraic(&p, k, MomentRoute::Hypergeometric).unwrap();
        prop_assert!(r.abs() <= 1e-9 * m2.powf(0.5 * (k as f64 + 1.0)).max(1.0), "{r}");
    }

    #[test]
    fn chaos_oracle(p in params()) {
        let form = second_chaos_form(&p);
        prop_assert!((form.shift - p.rho() * p.s()).abs() < 1e-14 * p.s());
        let k = chaos_cumulants(&form.eigenvalues);
        let exact = cumulants(&p, 6);
        for i in 0..5 {
            prop_assert!(rel(k[i], exact[i + 1]) < 1e-12 || (k[i] - exact[i + 1]).abs() < 1e-13 * exact[1].powf(0.5 * (i as f64 + 2.0)));
        }
    }

    #[test]
    fn y_phi_unit_variance(phi in 0.01f64..0.99) {
        let y = y_phi_params(phi).unwrap();
        prop_assert!((y.a * y.a + y.b * y.b - 1.0).abs() < 1e-12);
        prop_assert!((y.s * (1.0 + y.rho) / 2.0 - y.a / 2f64.sqrt()).abs() < 1e-12);
        prop_assert!((y.s * (1.0 - y.rho) / 2.0 - y.b / 2f64.sqrt()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalisation(p in params()) {
        let cfg = QuadConfig::with_tol(1e-13, 1e-12);
        let f = |x: f64| pdf(&p, x).unwrap_or(0.0);
        let lo = integrate_lower(f, 0.0, p.s_n() * (1.0 - p.rho()), &cfg).unwrap().value;
        let hi = integrate_upper(f, 0.0, p.s_n() * (1.0 + p.rho()), &cfg).unwrap().value;
        prop_assert!((lo + hi - 1.0).abs() < 1e-8, "{}", lo + hi);
    }

    #[test]
    fn closed_cdf_branches(k in 1u32..=5, r in -0.9f64..0.9, u in -6.0f64..6.0) {
        let p = DistParams::with_scale(2 * k, r, 1.0).unwrap();
        let x = u * p.s_n() * 2.0;
        prop_assert!((cdf_even_closed(&p, x).unwrap() - cdf_quadrature(&p, x).unwrap()).abs() < 1e-8);
        let q = DistParams::with_scale(2 * k - 1, 0.0, 1.0).unwrap();
        prop_assert!((cdf_struve(&q, x).unwrap() - cdf_quadrature(&q, x).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn sampling_is_deterministic(p in params(), seed in any::<u64>(), rep in 0usize..4) {
        let rep = Representation::ALL[rep];
        if rep.supports(&p) {
            let a = sample(&p, rep, seed, 300).unwrap();
            let b = sample(&p, rep, seed, 300).unwrap();
            prop_assert_eq!(a.values, b.values);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn chaos_gap_nonnegative(g in -0.7f64..-0.51, phi in 0.3f64..0.9) {
        if let Ok(spec) = ChaosSpec::new(g, phi, 24) {
            let r = six_moment_gap(&spec).unwrap();
            prop_assert!(r.m >= 0.0);
            prop_assert!(r.gaps.iter().all(|v| *v >= 0.0));
            let mx = r.gaps.iter().cloned().fold(0.0, f64::max);
            prop_assert_eq!(mx, r.m);
        }
    }
}
