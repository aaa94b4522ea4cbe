//! Exact symbolic engine for the combinatorial and differential-equation data
//! attached to finite-order gradings of the classical Lie algebras: quiver
//! dimension models, semi-invariant tables, b-functions with an independent
//! symbolic verifier, Fourier-dual exponents, component-group orbits, and the
//! enumeration of the associated character-sheaf labels.
//!
//! All arithmetic is exact over the rationals; nothing here ever touches
//! floating point.

pub mod affine;
pub mod b_function;
pub mod bs_oracle;
pub mod component_orbits;
pub mod coords;
pub mod error;
pub(crate) mod fastpoly;
pub mod grading;
pub mod poly;
pub mod rational;
pub mod semi_invariants;
pub mod rotation;
pub mod sheaf_enum;

pub use affine::AffineForm;
pub use error::{Error, Result};
pub use grading::{build_grading, Family, GradingSpec, ReflectionGroupDesc};
pub use poly::{SymbolicPoly, VarSet};
pub use rational::Rat;
pub use rotation::RotationNumber;
