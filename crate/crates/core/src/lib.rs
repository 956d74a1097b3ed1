pub mod cli;
pub mod error;
pub mod exact;
pub mod io;
pub mod spectral;
pub mod structure;
pub mod tiling;
pub mod weird;
pub mod zonotope;

pub use error::{Error, Result};
