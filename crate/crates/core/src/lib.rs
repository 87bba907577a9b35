//! Homological algebra over three small exact categories: rational vector spaces,
//! two-step filtered rational vector spaces, and finitely generated abelian groups.

pub mod chain;
pub mod doldkan;
pub mod error;
pub mod exactlin;
pub mod excat;
pub mod freealg;
pub mod model;
pub mod monoidal;
pub mod resolve;

pub use error::{Error, Result};
