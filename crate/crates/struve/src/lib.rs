//! Modified Struve and Bessel functions, the series built from them, and a
//! suite that checks series-equals-integral identities by computing both
//! sides through independent routes.

// negated comparisons are deliberate: they reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bessel_struve;
pub mod config;
pub mod error;
pub mod identity;
pub mod report;
pub mod quadrature;
pub mod scalar;
pub mod series;

pub use config::{EvalResult, NumericConfig, PrecisionTier};
pub use error::{Error, Result};
