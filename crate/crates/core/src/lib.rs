pub mod bounds;
pub mod cli;
pub mod env;
pub mod error;
pub mod gaussian;
pub mod optimize;
pub mod quad;
pub mod sorter;
pub mod states;

pub use error::{Error, Result};
