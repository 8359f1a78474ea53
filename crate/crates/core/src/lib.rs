//! Exact computation of Lie algebra, equivariant and Poisson cohomology and of
//! spectral sequences of finite filtered complexes.

#![allow(clippy::needless_range_loop)]

pub mod basis;
pub mod gdiff;
pub mod lie;
pub mod io;
pub mod linalg;
pub mod poisson;
pub mod scalar;
pub mod spectral;

pub use scalar::Scalar;
