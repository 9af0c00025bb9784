//! Series engines: Dirichlet series directly and in Laplace form, Neumann
//! expansions of L, Schloemilch and Upsilon series, Kapteyn series, the Mathieu
//! series and the Omega function.

pub mod coefficients;
pub mod dirichlet;
pub mod generic;
pub mod kapteyn;
pub mod mathieu;
pub mod neumann;
pub mod schloemilch;

pub use coefficients::{CoefficientSequence, Exponents, FracOperator, SignPattern};
pub use dirichlet::{cahen_laplace, dirichlet_direct};
pub use generic::{
    hamburger_closed_form, hamburger_sum, sum_alternating_monotone, sum_geometric, sum_power_tail,
};
pub use kapteyn::{kapteyn_domain_bound, kapteyn_gegenbauer, kapteyn_k, kapteyn_k_derivatives};
pub use mathieu::{mathieu_s, omega, omega_partial_fraction_sum, omega_ratio, Route};
pub use neumann::{neumann_l, NeumannForm};
pub use schloemilch::{
    schloemilch_t, schloemilch_t_derivatives, upsilon, upsilon_derivatives, weighted_difference_series,
    PowerWeight, SeriesParams,
};
