//! Exact homological algebra over positively graded quotient rings.

pub mod algebra;
pub mod dcat;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod modops;
pub mod oracle;
pub mod sdc;

pub use algebra::*;
pub use error::{Error, Result};
