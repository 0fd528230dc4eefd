//! Twisted structures: a self-map `δ_v` of the coefficients at every vertex,
//! commuting along edges and arrows.

mod coefficients;
mod structure;

pub use coefficients::Coefficients;
pub use structure::{
    CommutingViolation, Invertibility, NonSingularityCertificate, TwistReport, TwistedAbelianStructure,
    TwistedSliceStructure, TwistedStructure,
};
