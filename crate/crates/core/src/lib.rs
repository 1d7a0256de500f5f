//! Finite ordinal cubes, combinatorial cubes of correspondences, higher
//! Segal checks for finite simplicial sets, and counting Hall algebras.

pub mod corrlim;
pub mod cyclic;
pub mod error;
pub mod hall;
pub mod hcomb;
pub mod ordcube;
pub mod segal;
pub mod sset;

pub use error::Error;
