//! Search and verification toolkit for quaternary Legendre pairs.

pub mod cyclotomic;
pub mod error;
pub mod feasibility;
pub mod numtheory;
pub mod pairs;
pub mod quat;
pub mod search;

pub use error::{Error, Result};
