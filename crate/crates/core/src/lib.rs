//! Discrete fuzzy measures (capacities) on finite criteria sets.
//!
//! The crate covers the measure type itself ([`lattice`]), linear transforms and
//! interaction indices ([`transforms`]), special families ([`families`]), the
//! Choquet, Sugeno and pan integrals ([`integrals`]), seeded random generation
//! ([`random`]), least-absolute-deviation fitting ([`fitting`]), comparison
//! analytics ([`analysis`]), lattice and chart rendering ([`render`]) and the
//! on-disk formats ([`io`]).

pub mod analysis;
pub mod error;
pub mod families;
pub mod fitting;
pub mod integrals;
pub mod io;
pub mod lattice;
pub mod random;
pub mod render;
pub mod transforms;

pub use error::{Error, Result};
pub use lattice::{FuzzyMeasure, LabelMode, SetFunction, SubsetMask, Universe, ValidationReport, DEFAULT_TOLERANCE};
