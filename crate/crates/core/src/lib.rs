//! Multidegrees of tame polynomial automorphisms.
//!
//! Given a tuple of degrees, [`classify::classify`] either builds an explicit
//! tame automorphism with that multidegree, produces a checkable certificate
//! that none exists (dimension 3), or reports that neither side applies.

pub mod classify;
#[cfg(feature = "cli")]
pub mod cli;
pub mod exactpoly;
pub mod obstruction;
pub mod polymap;
pub mod realizer;
pub mod search;

pub use classify::{classify, Certificate, Verdict};
pub use exactpoly::{Coefficient, Degree, PolyError, Polynomial};
pub use polymap::{ElementaryFactor, FactorList, PolyMap};
pub use realizer::{realize, DegreeTuple};
