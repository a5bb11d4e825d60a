//! Versioned audit-grid configuration.

use std::path::Path;

use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const AUDIT_GRID_VERSION: u32 = 1;
pub const DEFAULT_AUDIT_GRID: &str = include_str!("../config/audit_grid.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub version: u32,
    pub grid: AuditGrid,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditGrid {
    pub n: Vec<u32>,
    pub rho: Vec<f64>,
    #[serde(default = "one")]
    pub s: f64,
}

fn one() -> f64 {
    1.0
}

impl AuditConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: AuditConfig = toml::from_str(text).map_err(|e| CliError::Config(format!("audit grid: {e}")))?;
        if cfg.version != AUDIT_GRID_VERSION {
            return Err(CliError::Config(format!(
                "audit grid: unsupported version {} (expected {AUDIT_GRID_VERSION})",
                cfg.version
            )));
        }
        if cfg.grid.n.is_empty() || cfg.grid.rho.is_empty() {
            return Err(CliError::Config("audit grid: n and rho must be non-empty".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Self::parse(DEFAULT_AUDIT_GRID),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("audit grid {}: {e}", p.display())))?;
                Self::parse(&text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_grid() {
        let c = AuditConfig::load(None).unwrap();
        assert_eq!(c.grid.n, vec![1, 3, 5, 7, 10]);
        assert_eq!(c.grid.rho.len(), 5);
        assert_eq!(c.grid.s, 1.0);
    }

    #[test]
    fn rejects_other_versions_and_fields() {
        assert!(AuditConfig::parse("version = 2\n[grid]\nn=[1]\nrho=[0.5]\n").is_err());
        assert!(AuditConfig::parse("version = 1\n[grid]\nn=[1]\nrho=[0.5]\nfoo=1\n").is_err());
        assert!(AuditConfig::parse("version = 1\n[grid]\nn=[]\nrho=[0.5]\n").is_err());
        let c = AuditConfig::parse("version = 1\n[grid]\nn=[2]\nrho=[0.5]\n").unwrap();
        assert_eq!(c.grid.s, 1.0);
    }
}
