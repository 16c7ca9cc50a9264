//! Cycle types, Coxeter polynomials and Coxeter numbers of connected
//! non-negative unit forms of Dynkin type A, computed through quivers.
//!
//! Everything is generic over an exact integer [`Scalar`]; the aliases
//! below fix it to the arbitrary-precision [`Int`]. The exhaustive sweeps
//! in [`sweep`] run on `i64`.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod partition;
pub mod quiver;
pub mod realize;
pub mod scalar;
pub mod sweep;
pub mod unitform;

pub use error::{Error, Result};
pub use invariants::{
    coxeter_numbers, coxeter_polynomial, coxeter_polynomial_table, cycle_type_from_cox_poly,
    cycle_type_of_form, enumerate_coxeter_polynomials, form_invariants, CoxeterNumbers,
    CoxeterTableRow, FormInvariants,
};
pub use linalg::{Matrix, Permutation, Polynomial};
pub use partition::{FactoredCoxPoly, Partition};
pub use quiver::{inverse_quiver, vertex_permutation, Quiver};
pub use realize::{realize, RealizationResult, Strategy};
pub use scalar::{Int, Scalar};
pub use unitform::UnitForm;

pub type IntMatrix = Matrix<Int>;
pub type IntPoly = Polynomial<Int>;
pub type IntForm = UnitForm<Int>;
pub type IntRealization = RealizationResult<Int>;
