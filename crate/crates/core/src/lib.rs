//! Exact computations for weighted foldings of quivers onto the non-crystallographic
//! types H₃, H₄ and I₂(2n+1): Chebyshev coefficient rings, mutation, unfoldings,
//! Auslander–Reiten theory of the unfolded quiver, cluster-tilting, and tropical seeds.

pub mod chebring;
pub mod clustercat;
pub mod error;
pub mod exchange;
pub mod repcat;
pub mod rootsys;
pub mod scalar;
pub mod tropical;
pub mod unfolding;

pub use error::{Error, Result};
