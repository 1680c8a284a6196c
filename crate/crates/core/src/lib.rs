//! Nonabelian tensor squares of small finite groups and the tensor degrees
//! built from them.

pub mod coset;
pub mod degrees;
pub mod error;
pub mod families;
pub mod group;
pub mod rational;
pub mod spec;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
