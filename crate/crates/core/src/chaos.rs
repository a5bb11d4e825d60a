//! Second-Wiener-chaos machinery: cumulants of quadratic Gaussian forms,
//! the six-moment gap `M(F)`, and the generalised Rosenblatt limit
//! experiment.
//!
//! The generalised Rosenblatt variable at time 1 is the double Wiener–Itô
//! integral of
//! `h(x₁,x₂) = ½∫₀¹ [(s−x₁)₊^{γ₁}(s−x₂)₊^{γ₂} + (s−x₁)₊^{γ₂}(s−x₂)₊^{γ₁}] ds`.
//! Writing `h = ½B*JB` with `(Bu)_i(s) = ∫(s−x)₊^{γ_i}u(x)dx` and `J` the
//! component swap, the non-zero spectrum of `h` equals that of `½JG`,
//! `G = BB*`, a 2×2 block operator on `[0,1]` with kernel
//! `G_ij(s,t) = B(γ_e+1, c)|s−t|^{−c}`, `c = −(γ_i+γ_j+1)`, where `γ_e` is
//! the exponent attached to the earlier of `s, t`. Working with `G` avoids
//! truncating the unbounded `x` domain. `G` is discretised by Galerkin
//! projection on `m` cells with exact cell integrals.
//!
//! The eigenvalues of the kernel decay only like `k^{−(1−c)}`, so the
//! discrete `2Σλ²` converges to the variance very slowly (like `m^{−2(½−c)}`).
//! The variance is therefore computed exactly, the eigenvalues are scaled by
//! it, and the unresolved remainder `1 − 2Σλ²` — spread over infinitely many
//! tiny eigenvalues — is carried as an independent Gaussian term, which
//! contributes to `κ₂` only.

use alloc::vec::Vec;

use crate::dist::cumulants;
use crate::linalg::{pivoted_cholesky, symmetric_eigenvalues, Matrix};
use crate::prelude::*;
use crate::sampling::VariateRng;
use crate::specfun::ln_gamma;
use crate::stats::wasserstein1;
use crate::DistParams;

/// Mesh grading exponent; 1 is uniform. Grading towards the endpoints does not
/// help: the slow part of the convergence is the eigenvalue tail, which is
/// handled through the exact variance.
pub const DEFAULT_GRADING: f64 = 1.0;

/// Parameters of the generalised Rosenblatt experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosSpec {
    pub gamma1: f64,
    pub phi: f64,
    /// `(γ₁ + ½)/φ − ½`.
    pub gamma2: f64,
    /// Cells per component; the discrete operator has size `2·grid_m`.
    pub grid_m: usize,
    /// Mesh grading exponent (1 = uniform).
    pub grading: f64,
}

impl ChaosSpec {
    pub fn new(gamma1: f64, phi: f64, grid_m: usize) -> Result<Self> {
        if !(phi > 0.0 && phi < 1.0) {
            return Err(Error::Domain("phi must lie in (0, 1)"));
        }
        if !(gamma1 > -1.0 && gamma1 < -0.5) {
            return Err(Error::Domain("gamma1 must lie in (-1, -1/2)"));
        }
        let gamma2 = (gamma1 + 0.5) / phi - 0.5;
        if !(gamma2 > -1.0 && gamma1 + gamma2 > -1.5) {
            return Err(Error::Domain("gamma2 = (gamma1 + 1/2)/phi - 1/2 leaves the admissible range"));
        }
        if grid_m == 0 {
            return Err(Error::Domain("grid_m must be positive"));
        }
        Ok(Self {
            gamma1,
            phi,
            gamma2,
            grid_m,
            grading: DEFAULT_GRADING,
        })
    }

    pub fn with_grading(mut self, grading: f64) -> Result<Self> {
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::Domain("grading exponent must be >= 1"));
        }
        self.grading = grading;
        Ok(self)
    }
}

/// Limit law `Y_φ = (a_φ/√2)(N₁²−1) − (b_φ/√2)(N₂²−1)` and its
/// `(s, ρ)` parametrisation as a centred `Z̄₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YPhi {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub rho: f64,
}

impl YPhi {
    pub fn params(&self) -> Result<DistParams> {
        DistParams::with_scale(1, self.rho, self.s)
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        [self.a * r, -self.b * r]
    }
}

pub fn y_phi_params(phi: f64) -> Result<YPhi> {
    if !(phi > 0.0 && phi < 1.0) {
        return Err(Error::Domain("phi must lie in (0, 1)"));
    }
    let num_a = 0.5 / phi.sqrt() + 1.0 / (phi + 1.0);
    let num_b = 0.5 / phi.sqrt() - 1.0 / (phi + 1.0);
    let den = (0.5 / phi + 2.0 / ((phi + 1.0) * (phi + 1.0))).sqrt();
    Ok(YPhi {
        a: num_a / den,
        b: num_b / den,
        s: (1.0 + phi) / (1.0 + 6.0 * phi + phi * phi).sqrt(),
        rho: 2.0 * phi.sqrt() / (phi + 1.0),
    })
}

/// `κ₂..κ₆` of `Σλ_j(N_j²−1)`: `κ_p = 2^{p−1}(p−1)! Σλ_j^p`.
pub fn chaos_cumulants(eigs: &[f64]) -> [f64; 5] {
    let mut out = [0.0; 5];
    let mut fact = 1.0; // (p−1)!
    for p in 2..=6usize {
        fact *= (p - 1) as f64;
        let sum: f64 = eigs.iter().map(|l| l.powi(p as i32)).sum();
        out[p - 2] = 2f64.powi(p as i32 - 1) * fact * sum;
    }
    out
}

fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Galerkin matrix of `G` in the orthonormal cell basis; block `(i, j)`
/// occupies rows `i·m..` and columns `j·m..`.
pub fn covariance_matrix(spec: &ChaosSpec) -> Matrix {
    let m = spec.grid_m;
    let nodes = mesh(m, spec.grading);
    let g = [spec.gamma1, spec.gamma2];
    let mut out = Matrix::zeros(2 * m);
    for bi in 0..2 {
        for bj in 0..2 {
            let p = g[bi] + g[bj] + 1.0; // exponent of |s−t|, in (−1, 0)
            let c = -p;
            let beta_i = beta(g[bi] + 1.0, c);
            let beta_j = beta(g[bj] + 1.0, c);
            let norm = 1.0 / ((p + 1.0) * (p + 2.0));
            let f = |d: f64| if d <= 0.0 { 0.0 } else { d.powf(p + 2.0) * norm };
            for k in 0..m {
                let (k0, k1) = (nodes[k], nodes[k + 1]);
                for l in 0..m {
                    let (l0, l1) = (nodes[l], nodes[l + 1]);
                    let v = if k == l {
                        (k1 - k0).powf(p + 2.0) * norm * (beta_i + beta_j)
                    } else {
                        // earlier cell first; the Beta factor belongs to its component
                        let (a0, a1, b0, b1, bf) = if k < l { (k0, k1, l0, l1, beta_i) } else { (l0, l1, k0, k1, beta_j) };
                        bf * (f(b1 - a0) - f(b1 - a1) - f(b0 - a0) + f(b0 - a1))
                    };
                    out[(bi * m + k, bj * m + l)] = v / ((k1 - k0) * (l1 - l0)).sqrt();
                }
            }
        }
    }
    out
}

/// Exact `Var(Z_{γ₁,γ₂}(1)) = 2‖h‖² = ½ tr(JGJG)`, from closed-form
/// integrals of products of the power kernels.
pub fn exact_variance(spec: &ChaosSpec) -> f64 {
    let g = [spec.gamma1, spec.gamma2];
    let c = |i: usize, j: usize| -(g[i] + g[j] + 1.0);
    // ∫∫ G_ij(s,t) G_kl(t,s) ds dt
    let pair = |i: usize, j: usize, k: usize, l: usize| {
        let q = -c(i, j) - c(k, l);
        let b = beta(g[i] + 1.0, c(i, j)) * beta(g[l] + 1.0, c(k, l)) + beta(g[j] + 1.0, c(i, j)) * beta(g[k] + 1.0, c(k, l));
        b / ((q + 1.0) * (q + 2.0))
    };
    let mut tr = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            tr += pair(1 - a, b, 1 - b, a);
        }
    }
    0.5 * tr
}

/// Cell boundaries on `[0, 1]`, graded towards both endpoints where the
/// eigenfunctions are singular: `x = u^q/(u^q + (1−u)^q)`.
pub fn mesh(m: usize, grading: f64) -> Vec<f64> {
    (0..=m)
        .map(|k| {
            let u = k as f64 / m as f64;
            let (a, b) = (u.powf(grading), (1.0 - u).powf(grading));
            a / (a + b)
        })
        .collect()
}

// ½LᵀJL for G ≈ LLᵀ: symmetric, same non-zero spectrum as ½JG.
fn symmetric_operator(spec: &ChaosSpec) -> Matrix {
    let g = covariance_matrix(spec);
    let m = spec.grid_m;
    let cols = pivoted_cholesky(&g, 1e-15);
    let r = cols.len();
    Matrix::from_fn(r, |a, b| {
        let (ca, cb) = (&cols[a], &cols[b]);
        let mut s = 0.0;
        for k in 0..m {
            s += ca[k] * cb[m + k] + ca[m + k] * cb[k];
        }
        0.5 * s
    })
}

/// Eigenvalues of the discretised generalised Rosenblatt kernel scaled by
/// the exact standard deviation (sorted descending), and the unresolved
/// variance `1 − 2Σλ²`.
pub fn rosenblatt_eigenvalues(spec: &ChaosSpec) -> Result<(Vec<f64>, f64)> {
    let op = symmetric_operator(spec);
    let mut eigs = symmetric_eigenvalues(&op).map_err(|_| Error::NoConvergence {
        what: "Rosenblatt kernel eigen-decomposition",
        best: 0.0,
        err_est: f64::NAN,
    })?;
    let var = exact_variance(spec);
    let scale = 1.0 / var.sqrt();
    for l in eigs.iter_mut() {
        *l *= scale;
    }
    eigs.reverse();
    let resolved: f64 = 2.0 * eigs.iter().map(|l| l * l).sum::<f64>();
    let tail = 1.0 - resolved;
    if !(tail > -1e-9 && resolved > 0.0) {
        return Err(Error::NoConvergence {
            what: "Rosenblatt kernel discretisation",
            best: resolved,
            err_est: tail,
        });
    }
    Ok((eigs, tail.max(0.0)))
}

/// `κ₂..κ₆` of the normalised discretisation from traces of `(½JG)^p`
/// (no eigen-decomposition); a cross-check of the eigenvalue route. `κ₂`
/// here is the resolved part only.
pub fn rosenblatt_cumulants_by_traces(spec: &ChaosSpec) -> [f64; 5] {
    let op = symmetric_operator(spec);
    let mut power = op.clone();
    let mut traces = [0.0; 5];
    for p in 2..=6usize {
        power = power.mul(&op);
        traces[p - 2] = power.trace();
    }
    let var = exact_variance(spec);
    let mut out = [0.0; 5];
    let mut fact = 1.0;
    for p in 2..=6usize {
        fact *= (p - 1) as f64;
        out[p - 2] = 2f64.powi(p as i32 - 1) * fact * traces[p - 2] / var.powf(0.5 * p as f64);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosResult {
    pub spec: ChaosSpec,
    pub eigenvalues: Vec<f64>,
    /// Variance not resolved by the discrete eigenvalues (Gaussian remainder).
    pub tail_variance: f64,
    /// `κ₂..κ₆` of the normalised variable.
    pub cumulants: [f64; 5],
    pub target_cumulants: [f64; 5],
    /// `|κ_i(F) − κ_i(Y_φ)|`, `i = 2..6`.
    pub gaps: [f64; 5],
    /// Six-moment gap `M(F) = max gaps`.
    pub m: f64,
    pub target: YPhi,
}

/// Six-moment gap between the discretised Rosenblatt variable and `Y_φ`.
pub fn six_moment_gap(spec: &ChaosSpec) -> Result<ChaosResult> {
    let (eigenvalues, tail_variance) = rosenblatt_eigenvalues(spec)?;
    let target = y_phi_params(spec.phi)?;
    let mut kf = chaos_cumulants(&eigenvalues);
    kf[0] += tail_variance;
    let ky = cumulants(&target.params()?, 6);
    let mut gaps = [0.0; 5];
    for i in 0..5 {
        gaps[i] = (kf[i] - ky[i + 1]).abs();
    }
    let m = gaps.iter().copied().fold(0.0, f64::max);
    Ok(ChaosResult {
        spec: *spec,
        eigenvalues,
        tail_variance,
        cumulants: kf,
        target_cumulants: [ky[1], ky[2], ky[3], ky[4], ky[5]],
        gaps,
        m,
        target,
    })
}

/// Draws `shift + Σλ_j(N_j² − 1)`.
///
/// The largest and the most negative eigenvalue take their normals from a
/// dedicated stream, so two forms sampled with the same seed share that
/// leading Gaussian pair (common random numbers for distance estimates).
pub fn sample_chaos(eigs: &[f64], shift: f64, seed: u64, count: usize) -> Vec<f64> {
    sample_chaos_with_remainder(eigs, 0.0, shift, seed, count)
}

/// As [`sample_chaos`], plus an independent `N(0, remainder_var)` term.
pub fn sample_chaos_with_remainder(eigs: &[f64], remainder_var: f64, shift: f64, seed: u64, count: usize) -> Vec<f64> {
    let mut lead = [0.0f64; 2];
    let mut rest: Vec<f64> = Vec::new();
    if !eigs.is_empty() {
        let (imax, _) = eigs.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap_or((0, &0.0));
        let (imin, _) = eigs.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap_or((0, &0.0));
        lead[0] = eigs[imax];
        if imin != imax {
            lead[1] = eigs[imin];
        }
        rest = eigs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != imax && *i != imin)
            .map(|(_, l)| *l)
            .collect();
    }
    let sd = remainder_var.max(0.0).sqrt();
    let mut out = alloc::vec![0.0; count];
    for (c, chunk) in out.chunks_mut(crate::sampling::CHUNK).enumerate() {
        let mut ra = VariateRng::new(seed, 2 * c as u64);
        let mut rb = VariateRng::new(seed, 2 * c as u64 + 1);
        for v in chunk.iter_mut() {
            let mut acc = shift;
            for &l in &lead {
                let z = ra.normal();
                acc += l * (z * z - 1.0);
            }
            for &l in &rest {
                let z = rb.normal();
                acc += l * (z * z - 1.0);
            }
            if sd > 0.0 {
                acc += sd * rb.normal();
            }
            *v = acc;
        }
    }
    out
}

/// One row of a `γ₁` sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub result: ChaosResult,
    /// Empirical Wasserstein-1 distance to `Y_φ` (None when not requested).
    pub wasserstein: Option<f64>,
}

/// Runs the experiment at each `γ₁`. With `wasserstein_draws > 0` it also
/// estimates `d_W(F, Y_φ)` from coupled samples of that size.
pub fn sweep(phi: f64, gammas: &[f64], grid_m: usize, wasserstein_draws: usize, seed: u64) -> Result<Vec<SweepRow>> {
    gammas
        .iter()
        .map(|&g| sweep_point(phi, g, grid_m, wasserstein_draws, seed))
        .collect()
}

/// A single sweep point; independent of every other point.
pub fn sweep_point(phi: f64, gamma1: f64, grid_m: usize, wasserstein_draws: usize, seed: u64) -> Result<SweepRow> {
    let spec = ChaosSpec::new(gamma1, phi, grid_m)?;
    let result = six_moment_gap(&spec)?;
    let wasserstein = if wasserstein_draws > 0 {
        let f = sample_chaos_with_remainder(&result.eigenvalues, result.tail_variance, 0.0, seed, wasserstein_draws);
        let y = sample_chaos(&result.target.eigenvalues(), 0.0, seed, wasserstein_draws);
        Some(wasserstein1(&f, &y)?)
    } else {
        None
    };
    Ok(SweepRow { result, wasserstein })
}

/// Least-squares slope of `log M` against `log(−γ₁ − ½)`.
pub fn log_log_slope(rows: &[SweepRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((-r.result.spec.gamma1 - 0.5).ln(), r.result.m.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
