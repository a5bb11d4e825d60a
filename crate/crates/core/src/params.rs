use crate::{Error, Result};

/// Parameters of `Z̄ₙ`, the mean of `n` independent copies of `XY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistParams {
    n: u32,
    rho: f64,
    sigma_x: f64,
    sigma_y: f64,
    s_n: f64,
}

impl DistParams {
    pub fn new(n: u32, rho: f64, sigma_x: f64, sigma_y: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1"));
        }
        if !(rho.abs() < 1.0) {
            return Err(Error::Domain("rho must lie in (-1, 1)"));
        }
        if !(sigma_x > 0.0 && sigma_x.is_finite() && sigma_y > 0.0 && sigma_y.is_finite()) {
            return Err(Error::Domain("sigma_x and sigma_y must be positive and finite"));
        }
        Ok(Self {
            n,
            rho,
            sigma_x,
            sigma_y,
            s_n: sigma_x * sigma_y / n as f64,
        })
    }

    /// Parameters with `σ_X = s`, `σ_Y = 1`.
    pub fn with_scale(n: u32, rho: f64, s: f64) -> Result<Self> {
        Self::new(n, rho, s, 1.0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn sigma_y(&self) -> f64 {
        self.sigma_y
    }

    /// `s = σ_Xσ_Y`, computed as `n·sₙ` so that the two scales agree exactly.
    pub fn s(&self) -> f64 {
        self.nf() * self.s_n
    }

    /// `sₙ = σ_Xσ_Y / n`.
    pub fn s_n(&self) -> f64 {
        self.s_n
    }

    /// `1 − ρ²`.
    pub(crate) fn one_minus_rho2(&self) -> f64 {
        (1.0 - self.rho) * (1.0 + self.rho)
    }

    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(self.n, rho, self.sigma_x, self.sigma_y)
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::new(n, self.rho, self.sigma_x, self.sigma_y)
    }
}

/// Bivariate normal with non-zero means, for the product density series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonZeroMeanParams {
    pub mu_x: f64,
    pub mu_y: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub rho: f64,
}

impl NonZeroMeanParams {
    pub fn new(mu_x: f64, mu_y: f64, sigma_x: f64, sigma_y: f64, rho: f64) -> Result<Self> {
        if !(sigma_x > 0.0 && sigma_y > 0.0) {
            return Err(Error::Domain("sigma_x and sigma_y must be positive"));
        }
        if !(rho.abs() < 1.0) {
            return Err(Error::Domain("rho must lie in (-1, 1)"));
        }
        if !(mu_x.is_finite() && mu_y.is_finite()) {
            return Err(Error::Domain("means must be finite"));
        }
        Ok(Self {
            mu_x,
            mu_y,
            sigma_x,
            sigma_y,
            rho,
        })
    }
}
