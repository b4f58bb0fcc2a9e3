//! Truncated q-series arithmetic and congruence verification for broken
//! k-diamond partitions.

pub mod congruence;
pub mod diamond;
pub mod error;
pub mod operators;
pub mod products;
pub mod series;

pub use error::{Error, Result};
pub use products::{broken_diamond_gf, dissection_a, expand_spec, pochhammer, psi_series, ProductFactor, ProductSpec};
pub use series::{CoefficientRing, Comparison, TruncatedSeries};
