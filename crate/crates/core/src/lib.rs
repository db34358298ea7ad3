//! Partial-norm entanglement monotones and their convex roofs.
//!
//! The crate covers the full pipeline from dense complex linear algebra
//! ([`numkit`]) through state algebra ([`states`]), pure-state measures and
//! their reduced functions ([`measures`]), convex-roof optimisation
//! ([`roof`]) up to the monogamy and concavity analyses ([`analysis`]).
//!
//! It is `no_std` and only needs `alloc`. File formats and the command line
//! front end live in the `monotone-lab` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
pub mod measures;
pub mod numkit;
pub mod random;
pub mod roof;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
