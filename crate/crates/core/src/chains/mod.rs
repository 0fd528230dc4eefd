//! Twisted chain complexes over `S(A)`, their homology, the null homotopy of a
//! cone and the Mayer-Vietoris short exact sequence.

mod complex;
mod homotopy;
mod mv;

pub use complex::{twisted_group_chains, twisted_product_chains, BoundaryWitness, ChainComplex};
pub use homotopy::{cone_face_identities, cone_null_homotopy, verify_null_homotopy, ChainHomotopy, HomotopyWitness};
pub use mv::{mayer_vietoris_check, ChainMap, DegreeCounts, MayerVietorisReport};
