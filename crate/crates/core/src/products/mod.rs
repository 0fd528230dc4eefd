//! Twisted Cartesian and smash products with a slice fibre `Y`, and the
//! fibre-bundle check over every simplex of the base.

mod bundle;
mod product;

pub use bundle::{
    monotone_decomposition, untwisting_iso, verify_bundle_local_triviality, BundleFailureKind, BundleReport,
    BundleWitness, MonotoneDecomposition, UntwistingMap,
};
pub use product::{
    twisted_product, twisted_product_unchecked, twisted_smash, SmashSlice, TwistedProductSlice, SMASH_BASEPOINT,
};

pub(crate) fn pair_label(y: &str, x: &str) -> String {
    format!("[{y} | {x}]")
}
