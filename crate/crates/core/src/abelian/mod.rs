//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod smith;

pub use group::{
    automorphism_inverse, cokernel_summary, endomorphisms_commute, exactness_witness, is_automorphism,
    is_valid_endomorphism, AbelianEndomorphism, EndomorphismCertificate, FgAbelianGroup, GroupSummary,
    PresentedMap,
};
pub use lattice::{column_span_basis, columns_in_span, kernel_basis, kernel_modulo, solve_in_lattice, LatticeSolver};
pub use matrix::{int_vec, IntegerMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};
