pub mod bialgebra;
pub mod cli;
pub mod coverage;
pub mod error;
pub mod freealg;
pub mod oracle;
pub mod rewrite;
pub mod scalars;

pub use error::{Error, Result};
