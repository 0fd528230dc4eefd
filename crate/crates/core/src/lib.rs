//! Twisted simplicial machinery over finite ordered simplicial complexes and
//! finite categories.
//!
//! A *twisted structure* assigns to every vertex `v` of the input space an
//! endomorphism `δ_v` of a coefficient object, subject to `δ_v ∘ δ_w = δ_w ∘ δ_v`
//! whenever `v` and `w` are joined by an edge (or an arrow). The crate builds
//! the resulting twisted chain complexes, twisted free constructions on finite
//! groups and twisted Cartesian products, and checks the identities they are
//! supposed to satisfy exactly, with integer arithmetic throughout.
//!
//! Module map:
//! - [`abelian`]: integer matrices, Smith normal form, presented abelian groups.
//! - [`spaces`]: ordered complexes, finite categories, their path simplicial sets.
//! - [`twist`]: twisted structures for the three coefficient kinds.
//! - [`chains`]: twisted chain complexes, homology, cone null homotopy, Mayer-Vietoris.
//! - [`groupwords`]: the non-abelian word model and its identity checker.
//! - [`products`]: twisted Cartesian and smash products, bundle local triviality.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod chains;
pub mod error;
pub mod groupwords;
pub mod products;
pub mod spaces;
pub mod twist;

pub use error::{Error, Result};
