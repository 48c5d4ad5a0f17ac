pub mod adm;
pub mod chainring;
pub mod error;
pub mod group;
pub mod json;
pub mod lambda;
pub mod lattice;
pub mod verify;

pub use error::{Error, Result};
