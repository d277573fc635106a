//! Truncated operator algebra for q-deformed spheres.
//!
//! The crate builds explicit representations of the Podleś spheres, the
//! quantum orthogonal 4-sphere and the odd quantum spheres as sparse
//! weighted-shift kernels on labelled orthonormal bases, and evaluates index
//! pairings, twisted traces, Haar states and zeta-function data by interior
//! truncated traces.

pub mod error;
pub mod oddspheres;
pub mod opalg;
pub mod podles;
pub mod qcore;
pub mod s4q;
pub mod verify;

pub use error::{Error, Result};
