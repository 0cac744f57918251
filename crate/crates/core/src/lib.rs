//! Exact computational homological algebra for finite-dimensional Hopf
//! algebras: Hopf bimodules, bar and cobar resolutions, the three Hopf
//! bimodule cohomology theories, cup products, and extension calculus.

pub mod bimodule;
pub mod cohomology;
pub mod cup;
pub mod error;
pub mod extension;
pub mod field;
pub mod hopf;
pub mod linalg;
pub mod resolution;
pub mod spec_file;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rational, Rationals};
