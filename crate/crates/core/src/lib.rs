//! Exact arithmetic for Suslin matrices, the elementary unimodular vector
//! group and its image in the split orthogonal group.

pub mod elemgen;
pub mod harness;
pub mod linalg;
pub mod ortho;
pub mod ring;
pub mod suslin;

pub use linalg::{LinalgError, RMatrix};
pub use ring::{Elem, Ring, RingError};
