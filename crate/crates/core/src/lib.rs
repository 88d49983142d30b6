//! Graded BiHom matrix algebras over exact fields.

#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod connect;
pub mod decompose;
pub mod document;
pub mod field;
pub mod group;
pub mod linalg;
pub mod verdict;

pub use algebra::{
    AlgebraError, GradedBiHomAlgebra, Support, TwistMap, TwistSpec, ValidationReport,
};
pub use catalog::{AnyAlgebra, CatalogEntry, CatalogError};
pub use classify::{Criterion, SimplicityReport};
pub use connect::{ClassPartition, ConnectionWitness};
pub use decompose::{DecompositionReport, GradedIdeal};
pub use document::{DocumentError, InputDocument};
pub use field::{Field, FieldError, FieldSpec, PrimeField, Rationals, Scalar};
pub use group::{BiHomGroup, GroupAuto, GroupElem, GroupError, GroupSpec};
pub use linalg::{Coordinates, LinalgError, Mat, Subspace};
pub use verdict::{BasisRef, Verdict, Witness};

pub type RationalAlgebra = GradedBiHomAlgebra<Rationals>;
pub type PrimeAlgebra = GradedBiHomAlgebra<PrimeField>;
