//! Exact scalars: integers, rationals, polynomials in `q` and `t`, and
//! reduced rational functions of them.

mod exact;
pub mod parse;
mod qtpoly;
mod upoly;

pub use exact::ExactScalar;
pub use qtpoly::{monomial_cmp, QtPoly};
pub use upoly::UPoly;
