pub mod error;
pub mod laurent;
pub mod macdonald;
pub mod qseries;
pub mod scalar;
pub mod sym;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
