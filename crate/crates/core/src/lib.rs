//! Stellar representation of spin-`s` `k`-planes.

pub mod decomp;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod majorana;
pub mod multicon;
pub mod poly;
pub mod principal;
pub mod roots;
pub mod spin;

pub use error::{Result, StellarError};
