pub mod chain;
pub mod cocycles;
pub mod coeff;
pub mod error;
pub mod exactlin;
pub mod knot;
pub mod quandle;
pub mod suite;

pub use error::{Error, Result};
