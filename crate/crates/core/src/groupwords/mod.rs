//! The non-abelian word model: reduced words in labelled copies of a finite
//! group, twisted faces and degeneracies, and checks of the simplicial identities.

mod check;
mod group;
mod words;

pub use check::{
    abelianization_mismatch, abelianize, abelianized_chains, check_simplicial_identities, enumerate_words, CheckConfig,
    IdentityReport, WordFailure,
};
pub use group::{Abelianization, FiniteGroupTable};
pub use words::{Letter, TwistedFiniteGroupStructure, TwistedFreeConstruction, Word};
