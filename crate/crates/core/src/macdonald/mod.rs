//! Macdonald operators and polynomials with formal `(q, t)`.

pub mod appendix;
mod operator;
mod poly;

pub use operator::{first_order_via_schur, MacdonaldOp};
pub use poly::{eigen_solve, macdonald_poly, remember, MacdonaldPoly};
