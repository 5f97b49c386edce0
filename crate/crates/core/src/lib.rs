//! Exact computations with Weil-Deligne representations of the Weil group of
//! an l-adic local field: conductors, Frobenius-semisimplification,
//! decomposition into Sp-blocks, purity, and families over Laurent
//! polynomial domains with their specializations.

pub mod error;
pub mod families;
pub mod localfield;
pub mod report;
pub mod scalars;
pub mod wdrep;

pub use error::{Error, Result};
