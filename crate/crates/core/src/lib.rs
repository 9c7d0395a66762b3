//! Exact filtered linear algebra over ℚ(i) and the invariants of the Rees
//! bundle on P² attached to a trifiltered vector space: Chern data, the
//! splitting level α, equivariant K₀ classes, Deligne splittings of mixed
//! Hodge structures, period-matrix α for punctured nodal curves, and
//! stratifications of sampled families.

pub mod curves;
pub mod error;
pub mod exactfield;
pub mod families;
pub mod filtration;
pub mod invariants;
pub mod linalg;
pub mod mhs;
pub mod multifilt;
pub mod sample;

pub use num_complex::Complex64;

pub use curves::{CurveConfig, CurveReport, PeriodMatrix, ProjPoint};
pub use error::{CoreError, Result};
pub use exactfield::{GaussianRational, Rational};
pub use families::{SampledFamily, StrataReport};
pub use filtration::FilteredSpace;
pub use invariants::{ChernData, InvariantReport, K0Class, SplittingType};
pub use linalg::{Matrix, Scalar, Subspace, Vector};
pub use mhs::{DeligneSplitting, ExtensionLift, MixedHodgeStructure};
pub use multifilt::{DimensionTable, FilteredMorphism, Table2, Table3, TrifilteredSpace};
