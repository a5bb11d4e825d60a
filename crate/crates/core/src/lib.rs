//! Distributional theory for the product `Z = XY` of zero-mean correlated
//! normal random variables and the mean `Z̄ₙ` of `n` independent copies.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! numerics: special functions, densities and distribution functions,
//! moments, exact samplers, Stein-identity checks and the second Wiener
//! chaos experiments. File formats and the command-line front end live in
//! the companion `prodnorm` crate.
//!
//! All operations take a [`DistParams`], which fixes `(n, ρ, σ_X, σ_Y)`
//! together with the derived scales `s = σ_Xσ_Y` and `sₙ = s/n`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chaos;
pub mod dist;
mod error;
pub mod linalg;
mod params;
mod prelude;
pub mod quad;
pub mod roots;
pub mod sampling;
pub mod specfun;
pub mod stats;
pub mod stein;

pub use error::{Error, Result};
pub use params::{DistParams, NonZeroMeanParams};
