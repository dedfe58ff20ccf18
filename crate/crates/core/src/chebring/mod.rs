//! Chebyshev rings, their regular representation, and the exact real field they evaluate into.

pub mod algreal;
pub mod elem;
pub mod poly;

pub use algreal::{field, AlgReal, Field};
pub use elem::{basis_product, cheb_mul, reg_rep, reg_rep_elem, sigma, sigma_theta, ChebElem};
pub use poly::{chebyshev_v, cyclotomic, minimal_poly};
