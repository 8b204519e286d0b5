//! Point counting over prime fields for fibre products of rational elliptic
//! surfaces, extraction of the Frobenius trace on the two-dimensional piece of
//! `H^3`, newform matching, and the finite group theory behind 2-adic
//! comparison certificates.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation; reading model files, caching counts and the command-line
//! driver live in the `fibreprod` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod catalog;
pub mod curves;
pub mod exact;
pub mod ff;
pub mod galois;
pub mod newforms;
pub mod surfaces;
pub mod threefold;

pub use error::{Error, Result};
pub use ff::{legendre, Fp, Prime};
