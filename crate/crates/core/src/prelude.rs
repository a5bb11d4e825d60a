//! Crate-internal imports shared by the numerical modules.

pub(crate) use crate::{Error, Result};
// Method resolution for `f64` math in `no_std`; unused when a dependency
// turns on `num-traits/std`.
#[allow(unused_imports)]
pub(crate) use num_traits::Float;
