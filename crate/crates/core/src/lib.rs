//! Burnt pancake graphs `BP_n`, alternating group networks `AN_n` and godan
//! graphs `EA_n`, with constructive packings of `n - 1` internally
//! edge-disjoint Steiner trees for every 3-set of vertices and a certifier
//! that checks them family-wide.

pub mod error;
pub mod flows;
pub mod par;
pub mod perm;
pub mod topology;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{Permutation, SignedPermutation};
pub use topology::{ClusterId, Family, Graph, VertexLabel};
