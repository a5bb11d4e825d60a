//! Exact samplers for `Z̄ₙ` through four distributional representations.
//!
//! Draws are produced in fixed chunks of [`CHUNK`] values; chunk `c` uses
//! stream `c` of the seeded generator. The output for a given
//! `(params, rep, seed, count)` is therefore identical whether the chunks
//! are generated sequentially or in parallel.

mod rng;

use alloc::vec::Vec;

pub use rng::VariateRng;

use crate::dist::cdf;
use crate::prelude::*;
use crate::stats::{ks_one_sample, KsResult};
use crate::DistParams;

/// Values per RNG stream.
pub const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `sₙ Σ (√(1−ρ²) X_j W_j + ρ X_j²)` with i.i.d. standard normals.
    R1Bilinear,
    /// `ρsₙS + sₙ√(1−ρ²)√S·T`, `S ~ χ²ₙ`, `T ~ N(0,1)`.
    R2ChisqNormal,
    /// `(sₙ/2)(1+ρ)V − (sₙ/2)(1−ρ)V'`, `V, V' ~ χ²ₙ`.
    R4GammaDifference,
    /// `−sₙ(1+ρ)Σ_{j≤n/2} log U_j + sₙ(1−ρ)Σ_{j>n/2} log U_j`; even `n` only.
    R5UniformLogs,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::R1Bilinear,
        Representation::R2ChisqNormal,
        Representation::R4GammaDifference,
        Representation::R5UniformLogs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::R1Bilinear => "r1_bilinear",
            Representation::R2ChisqNormal => "r2_chisq_normal",
            Representation::R4GammaDifference => "r4_gamma_difference",
            Representation::R5UniformLogs => "r5_uniform_logs",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s))
    }

    pub fn supports(self, p: &DistParams) -> bool {
        self != Representation::R5UniformLogs || p.n() % 2 == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub params: DistParams,
    pub rep: Representation,
    pub seed: u64,
    pub values: Vec<f64>,
}

fn draw(p: &DistParams, rep: Representation, rng: &mut VariateRng) -> f64 {
    let sn = p.s_n();
    let rho = p.rho();
    let n = p.n();
    match rep {
        Representation::R1Bilinear => {
            let c = ((1.0 - rho) * (1.0 + rho)).sqrt();
            let mut acc = 0.0;
            for _ in 0..n {
                let x = rng.normal();
                let w = rng.normal();
                acc += c * x * w + rho * x * x;
            }
            sn * acc
        }
        Representation::R2ChisqNormal => {
            let s = rng.chi_square(p.nf());
            let t = rng.normal();
            rho * sn * s + sn * ((1.0 - rho) * (1.0 + rho)).sqrt() * s.sqrt() * t
        }
        Representation::R4GammaDifference => {
            let v = rng.chi_square(p.nf());
            let w = rng.chi_square(p.nf());
            0.5 * sn * ((1.0 + rho) * v - (1.0 - rho) * w)
        }
        Representation::R5UniformLogs => {
            let half = n / 2;
            let (mut a, mut b) = (0.0, 0.0);
            for _ in 0..half {
                a += rng.uniform_open0().ln();
            }
            for _ in 0..half {
                b += rng.uniform_open0().ln();
            }
            -sn * (1.0 + rho) * a + sn * (1.0 - rho) * b
        }
    }
}

/// Fills `out` with the draws of chunk `chunk` (stream `chunk` of `seed`).
pub fn sample_chunk(p: &DistParams, rep: Representation, seed: u64, chunk: u64, out: &mut [f64]) -> Result<()> {
    if !rep.supports(p) {
        return Err(Error::Domain("uniform-log representation requires even n"));
    }
    let mut rng = VariateRng::new(seed, chunk);
    for v in out.iter_mut() {
        *v = draw(p, rep, &mut rng);
    }
    Ok(())
}

/// `count` i.i.d. draws of `Z̄ₙ` by the chosen representation.
pub fn sample(p: &DistParams, rep: Representation, seed: u64, count: usize) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1"));
    }
    if !rep.supports(p) {
        return Err(Error::Domain("uniform-log representation requires even n"));
    }
    let mut values = alloc::vec![0.0; count];
    for (c, chunk) in values.chunks_mut(CHUNK).enumerate() {
        sample_chunk(p, rep, seed, c as u64, chunk)?;
    }
    Ok(SampleBatch {
        params: *p,
        rep,
        seed,
        values,
    })
}

/// `Z̄ₙ = shift + Σ λ_j (N_j² − 1)` as an element of the second chaos.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosForm {
    pub shift: f64,
    pub eigenvalues: Vec<f64>,
}

pub fn second_chaos_form(p: &DistParams) -> ChaosForm {
    let n = p.n() as usize;
    let mut eigenvalues = alloc::vec![0.5 * p.s_n() * (1.0 + p.rho()); n];
    eigenvalues.extend(core::iter::repeat(0.5 * p.s_n() * (p.rho() - 1.0)).take(n));
    ChaosForm {
        shift: p.rho() * p.s(),
        eigenvalues,
    }
}

/// Draws `shift + Σ λ_j(N_j² − 1)`, chunked like [`sample`].
pub fn sample_quadratic_form(shift: f64, eigenvalues: &[f64], seed: u64, count: usize) -> Vec<f64> {
    let mut values = alloc::vec![0.0; count];
    for (c, chunk) in values.chunks_mut(CHUNK).enumerate() {
        let mut rng = VariateRng::new(seed, c as u64);
        for v in chunk.iter_mut() {
            let mut acc = shift;
            for &l in eigenvalues {
                let z = rng.normal();
                acc += l * (z * z - 1.0);
            }
            *v = acc;
        }
    }
    values
}

/// One-sample KS test of a batch against the exact CDF of its parameters.
pub fn ks_statistic(batch: &SampleBatch) -> Result<KsResult> {
    ks_against(batch, &batch.params)
}

/// One-sample KS test of a batch against the CDF of `law`.
pub fn ks_against(batch: &SampleBatch, law: &DistParams) -> Result<KsResult> {
    ks_one_sample(&batch.values, |x| cdf(law, x))
}
