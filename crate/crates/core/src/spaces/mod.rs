//! Input spaces (ordered simplicial complexes and finite categories), their
//! path simplicial sets, and tabulated degree-truncated slices.

mod category;
mod complex;
mod identities;
mod nerve;
mod path;
mod slice;

pub use category::{identity_name, CategoryViolation, FiniteCategory, Morphism};
pub use complex::{ComplexViolation, OrderedComplex};
pub use identities::{check_element, Graded, IdentityFailure, IdentityKind};
pub use nerve::{nerve_slice, standard_simplex, standard_simplex_slice, Nerve, Space};
pub use path::{AdjacencyRelation, Path, PathSpace};
pub use slice::{SimplicialSlice, SliceMap, SliceReport, SliceViolation};
