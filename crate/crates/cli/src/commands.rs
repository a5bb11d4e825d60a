//! Execution of each subcommand into a [`Table`] (or raw samples).

use serde_json::{json, Value};

use prodnorm_core::chaos::{log_log_slope, sweep_point, SweepRow};
use prodnorm_core::dist::{
    cdf, median, median_conjecture_audit, mode, mode_bounds, moment_set, pdf, quantile, shape, survival,
    MomentRoute,
};
use prodnorm_core::sampling::{sample_chunk, Representation, CHUNK};
use prodnorm_core::stein::{stein_residual_under, SteinMethod, TestFunction};
use prodnorm_core::DistParams;

use crate::args::{Command, DistArgs, Format, Method, PointsArgs, Rep, Route};
use crate::config::AuditConfig;
use crate::error::{CliError, CliResult};
use crate::output::{encode_binary, Cell, Table};
use crate::workers::{par_map, worker_count};

pub const TABLE1_N: [u32; 5] = [1, 3, 5, 7, 10];
pub const TABLE1_RHO: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// What a command produced.
pub enum Artifact {
    Table(Table),
    Samples(Table, Vec<f64>),
}

impl Artifact {
    pub fn encode(&self, format: Format) -> CliResult<Vec<u8>> {
        match (self, format) {
            (Artifact::Table(t) | Artifact::Samples(t, _), Format::Csv) => t.to_csv(),
            (Artifact::Table(t) | Artifact::Samples(t, _), Format::Json) => t.to_json(),
            (Artifact::Samples(_, v), Format::Binary) => Ok(encode_binary(v)),
            (Artifact::Table(t), Format::Binary) => Err(CliError::Config(format!(
                "binary output is only available for `sample`, not `{}`",
                t.command
            ))),
        }
    }
}

fn params(d: &DistArgs) -> CliResult<DistParams> {
    Ok(DistParams::new(d.n, d.rho, d.sigma_x, d.sigma_y)?)
}

fn params_json(p: &DistParams) -> Value {
    json!({
        "n": p.n(),
        "rho": p.rho(),
        "sigma_x": p.sigma_x(),
        "sigma_y": p.sigma_y(),
        "s": p.s(),
        "s_n": p.s_n(),
    })
}

/// Parses `start:stop:count` into `count` evenly spaced points.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Config(format!("grid must be start:stop:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let k: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if k == 0 || !a.is_finite() || !b.is_finite() || (k == 1 && a != b) {
        return Err(bad());
    }
    if k == 1 {
        return Ok(vec![a]);
    }
    let h = (b - a) / (k - 1) as f64;
    Ok((0..k).map(|i| if i == k - 1 { b } else { a + i as f64 * h }).collect())
}

fn points(p: &PointsArgs) -> CliResult<Vec<f64>> {
    let mut xs = p.x.clone();
    if let Some(g) = &p.grid {
        xs.extend(parse_grid(g)?);
    }
    if xs.is_empty() {
        return Err(CliError::Config("no evaluation points: give --x and/or --grid".into()));
    }
    Ok(xs)
}

fn route(r: Route) -> MomentRoute {
    match r {
        Route::Recursion => MomentRoute::Recursion,
        Route::Hypergeometric => MomentRoute::Hypergeometric,
        Route::Cgf => MomentRoute::Cgf,
        Route::Kan => MomentRoute::Kan,
        Route::Rho0 => MomentRoute::Rho0,
    }
}

fn representation(r: Rep) -> Representation {
    match r {
        Rep::R1Bilinear => Representation::R1Bilinear,
        Rep::R2ChisqNormal => Representation::R2ChisqNormal,
        Rep::R4GammaDifference => Representation::R4GammaDifference,
        Rep::R5UniformLogs => Representation::R5UniformLogs,
    }
}

/// Same draws as `prodnorm_core::sampling::sample`, filled chunk-wise on
/// up to `workers` threads.
pub fn sample_parallel(p: &DistParams, rep: Representation, seed: u64, count: usize, workers: usize) -> CliResult<Vec<f64>> {
    if count == 0 {
        return Err(CliError::Config("--count must be at least 1".into()));
    }
    let mut values = vec![0.0; count];
    let chunks: Vec<(u64, &mut [f64])> = values.chunks_mut(CHUNK).enumerate().map(|(c, s)| (c as u64, s)).collect();
    let results = par_map(chunks, workers, |(c, slice)| sample_chunk(p, rep, seed, c, slice));
    for r in results {
        r?;
    }
    Ok(values)
}

pub fn run(cmd: &Command) -> CliResult<Artifact> {
    let name = cmd.name();
    Ok(match cmd {
        Command::Pdf { dist, points: pts, .. } => {
            let p = params(dist)?;
            let mut t = Table::new(name, params_json(&p), None, &["x", "pdf"]);
            for x in points(pts)? {
                t.push(vec![x.into(), pdf(&p, x)?.into()]);
            }
            Artifact::Table(t)
        }
        Command::Cdf { dist, points: pts, .. } => {
            let p = params(dist)?;
            let mut t = Table::new(name, params_json(&p), None, &["x", "cdf", "survival"]);
            for x in points(pts)? {
                t.push(vec![x.into(), cdf(&p, x)?.into(), survival(&p, x)?.into()]);
            }
            Artifact::Table(t)
        }
        Command::Quantile { dist, q, .. } => {
            let p = params(dist)?;
            let mut t = Table::new(name, params_json(&p), None, &["q", "x"]);
            for &qq in q {
                t.push(vec![qq.into(), quantile(&p, qq)?.into()]);
            }
            Artifact::Table(t)
        }
        Command::Moments { dist, k, route: r, .. } => {
            let p = params(dist)?;
            if *k == 0 {
                return Err(CliError::Config("--k must be at least 1".into()));
            }
            let set = moment_set(&p, *k, route(*r))?;
            let mut t = Table::new(name, params_json(&p), None, &["k", "raw", "central", "cumulant"]);
            for i in 0..*k {
                t.push(vec![(i + 1).into(), set.raw[i].into(), set.central[i].into(), set.cumulants[i].into()]);
            }
            let sh = shape(&p);
            t.summary.insert("route".into(), Value::from(set.route.name()));
            t.summary.insert("skewness".into(), json!(sh.skewness));
            t.summary.insert("kurtosis".into(), json!(sh.kurtosis));
            t.summary.insert("excess_kurtosis".into(), json!(sh.excess_kurtosis));
            Artifact::Table(t)
        }
        Command::Mode { dist, .. } => {
            let p = params(dist)?;
            let b = mode_bounds(&p);
            let mut t = Table::new(
                name,
                params_json(&p),
                None,
                &["mode", "bracket_lower", "bracket_upper", "sharp_magnitude_lower", "mean"],
            );
            let (lo, hi) = if p.n() >= 3 { (Some(b.coarse.0), Some(b.coarse.1)) } else { (None, None) };
            t.push(vec![mode(&p)?.into(), lo.into(), hi.into(), b.sharp_magnitude.into(), (p.rho() * p.s()).into()]);
            Artifact::Table(t)
        }
        Command::Median { dist, .. } => {
            let p = params(dist)?;
            let mut t = Table::new(name, params_json(&p), None, &["median"]);
            t.push(vec![median(&p)?.into()]);
            Artifact::Table(t)
        }
        Command::Sample { dist, count, rep, seed, .. } => {
            let p = params(dist)?;
            let rep = representation(*rep);
            if !rep.supports(&p) {
                return Err(prodnorm_core::Error::Domain("uniform-log representation requires even n").into());
            }
            let values = sample_parallel(&p, rep, *seed, *count, worker_count()?)?;
            let mut pj = params_json(&p);
            pj["representation"] = Value::from(rep.name());
            let mut t = Table::new(name, pj, Some(*seed), &["value"]);
            for &v in &values {
                t.push(vec![v.into()]);
            }
            Artifact::Samples(t, values)
        }
        Command::Stein { dist, method, count, law_rho, seed, .. } => {
            let p = params(dist)?;
            let law = match law_rho {
                Some(r) => p.with_rho(*r)?,
                None => p,
            };
            let m = match method {
                Method::Quadrature => SteinMethod::Quadrature,
                Method::MonteCarlo => SteinMethod::MonteCarlo { seed: *seed, count: *count },
            };
            let mut pj = params_json(&p);
            pj["law_rho"] = Value::from(law.rho());
            let seed_out = matches!(method, Method::MonteCarlo).then_some(*seed);
            let mut t = Table::new(name, pj, seed_out, &["test_function", "residual", "error", "method"]);
            for g in TestFunction::suite() {
                let r = stein_residual_under(&p, &law, &g, m)?;
                t.push(vec![g.label().into(), r.residual.into(), r.error.into(), m.name().into()]);
            }
            Artifact::Table(t)
        }
        Command::Audit { config, .. } => {
            let cfg = AuditConfig::load(config.as_deref())?;
            let mut t = Table::new(
                name,
                json!({ "grid": { "n": cfg.grid.n, "rho": cfg.grid.rho, "s": cfg.grid.s }, "config_version": cfg.version }),
                None,
                &[
                    "n", "rho", "s", "median", "mean", "mode", "lower", "exp_upper", "poly_upper", "log2_upper",
                    "lower_ok", "exp_ok", "chain_ok", "log2_ok", "mode_median_mean", "all_hold",
                ],
            );
            let mut all = true;
            for &n in &cfg.grid.n {
                for &r in &cfg.grid.rho {
                    let p = DistParams::with_scale(n, r, cfg.grid.s)?;
                    let a = median_conjecture_audit(&p)?;
                    all &= a.all_hold();
                    t.push(vec![
                        n.into(),
                        r.into(),
                        cfg.grid.s.into(),
                        a.median.into(),
                        a.mean.into(),
                        a.mode.into(),
                        a.lower.into(),
                        a.exp_upper.into(),
                        a.poly_upper.into(),
                        a.log2_upper.into(),
                        a.checks[0].into(),
                        a.checks[1].into(),
                        a.checks[2].into(),
                        a.checks[3].into(),
                        a.ordering.into(),
                        a.all_hold().into(),
                    ]);
                }
            }
            t.summary.insert("all_hold".into(), Value::from(all));
            Artifact::Table(t)
        }
        Command::ChaosSweep { phi, gammas, grid_m, draws, seed, .. } => {
            if gammas.is_empty() {
                return Err(CliError::Config("--gammas must list at least one value".into()));
            }
            let rows = par_map(gammas.clone(), worker_count()?, |g| sweep_point(*phi, g, *grid_m, *draws, *seed));
            let rows: Vec<SweepRow> = rows.into_iter().collect::<Result<_, _>>()?;
            let mut t = Table::new(
                name,
                json!({ "phi": phi, "gammas": gammas, "grid_m": grid_m, "draws": draws }),
                Some(*seed),
                &[
                    "gamma1", "phi", "grid_m", "kappa2_gap", "kappa3_gap", "kappa4_gap", "kappa5_gap", "kappa6_gap",
                    "M", "wasserstein_est", "gamma2", "tail_variance",
                ],
            );
            for r in &rows {
                let c = &r.result;
                let mut row: Vec<Cell> = vec![c.spec.gamma1.into(), c.spec.phi.into(), c.spec.grid_m.into()];
                row.extend(c.gaps.iter().map(|g| Cell::from(*g)));
                row.extend([c.m.into(), r.wasserstein.into(), c.spec.gamma2.into(), c.tail_variance.into()]);
                t.push(row);
            }
            if rows.len() >= 2 {
                t.summary.insert("log_log_slope".into(), json!(log_log_slope(&rows)));
            }
            Artifact::Table(t)
        }
        Command::Table1 { .. } => {
            let mut cols = vec!["n".to_owned()];
            cols.extend(TABLE1_RHO.iter().map(|r| format!("rho_{r}")));
            let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
            let mut t = Table::new(name, json!({ "n": TABLE1_N, "rho": TABLE1_RHO, "s": 1.0 }), None, &col_refs);
            for n in TABLE1_N {
                let mut row = vec![Cell::from(n)];
                for r in TABLE1_RHO {
                    row.push(Cell::Rounded(median(&DistParams::with_scale(n, r, 1.0)?)?, 3));
                }
                t.push(row);
            }
            Artifact::Table(t)
        }
    })
}
