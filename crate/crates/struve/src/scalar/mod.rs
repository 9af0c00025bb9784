//! Scalar special functions: Gamma, zeta/eta, polylogarithm, hypergeometric
//! series and the Fox-Wright function.

pub mod complex;
pub mod dd;
pub mod gamma;
pub mod hyper;
pub mod polylog;
pub mod zeta;

pub use gamma::{gamma, gamma_ln, pochhammer, rgamma};
pub use hyper::{fox_wright_1psi1, hyp2f1, hyp_pfq};
pub use polylog::{polylog, polylog_integral, polylog_series};
pub use zeta::{eta, zeta};

/// Rising factorial argument (lambda)_{n} with a real shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerArg {
    pub base: f64,
    pub shift: f64,
}

impl PochhammerArg {
    pub fn value(&self) -> crate::error::Result<f64> {
        if self.shift == self.shift.floor() && self.shift >= 0.0 && self.shift <= u32::MAX as f64 {
            Ok(pochhammer(self.base, self.shift as u32))
        } else {
            gamma::pochhammer_real(self.base, self.shift)
        }
    }
}
