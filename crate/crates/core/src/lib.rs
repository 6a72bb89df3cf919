//! Exact first cohomology of finite simplicial manifolds, and certificates
//! relating it to open domains that fail to cut the manifold.

pub mod certificate;
pub mod circle_map;
pub mod cli;
pub mod complex;
pub mod domain;
pub mod homology;
pub mod library;
pub mod theorem;
pub mod tower;
pub mod witness;
mod util;
