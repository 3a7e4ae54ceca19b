//! Exact point counts of quiver moduli, Grassmannians and flags over finite
//! fields via Hall-algebra characters, with a brute-force finite-field oracle.

pub mod error;
pub mod exactq;
pub mod quiver;
pub mod series;
pub mod count;
pub mod oracle;
pub mod cluster;
pub mod lambdaring;
pub mod dilog;

pub use error::{Error, Result};
