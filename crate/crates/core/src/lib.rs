#![no_std]

extern crate alloc;

pub mod error;
pub mod factor;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod oracle;

pub use error::{Error, Result};
pub use field::{ArithOp, FieldDescriptor, FieldKind, FieldScalar};
pub use factor::{
    decide, factor, verify_witness, Decision, FactorSpec, Role, Witness, WitnessFactor,
};
pub use invariants::{invariant_report, InvariantReport};
pub use matrix::{Matrix, Rref, SubspaceBasis, Vector};
