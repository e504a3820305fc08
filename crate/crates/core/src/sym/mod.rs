//! Partitions and classical symmetric polynomials.

mod partition;
mod symfunc;

pub use partition::Partition;
pub use symfunc::{
    distinct_permutations, monomial_sym, monomial_sym_in, power_sum, schur, straighten_schur, Basis, SymExpansion,
};
