//! Multiplicities for finite-dimensional representations of hyper loop
//! algebras over finite fields, computed through ℓ-characters.

pub mod cli;
pub mod error;
pub mod galois;
pub mod gchar;
pub mod lchar;
pub mod lweight;
pub mod mult;
pub mod oracle;
pub mod rootsys;

pub use error::{Error, Result};
