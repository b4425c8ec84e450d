//! Exact computations with truncated FI- and OI-modules over the rationals.

pub mod artin;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod linalgq;
pub mod modcore;
pub mod nakayama;
pub mod oimod;
pub mod skelcat;
pub mod symrep;
pub mod torsion;

pub use error::{Error, Result};
