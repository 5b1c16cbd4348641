//! Nested canalizing functions over finite fields.
//!
//! Functions `F_p^n -> F_p` are held as dense [`TruthTable`]s. The [`ncf`]
//! module builds nested canalizing functions from case tables or layered
//! indicator products and recognizes arbitrary tables, returning the unique
//! layered form. [`counting`] evaluates the closed and recursive counting
//! formulas exactly and checks them against enumeration and brute force.

pub mod anf;
pub mod counting;
pub mod error;
pub mod field;
pub mod ncf;
pub mod table;

pub use anf::AnfPolynomial;
pub use counting::{CountReport, Method};
pub use error::{Error, Result};
pub use field::{enumerate_subsets, FieldMode, FieldSpec, ValueSubset, Variant};
pub use ncf::{
    layers_from_beta, permutation_equivalent, permutation_equivalent_exhaustive, recognize, ClassKey,
    LayerEntry, LayerStructure, PiecewiseSpec,
};
pub use table::{CanalizingEntry, CanalizingProfile, Profile, TruthTable};
