//! Exact computation with finite-dimensional Lie algebras of vector fields
//! in up to three variables.
//!
//! Coefficients live in the ring of polynomials with rational coefficients
//! times exponentials of rational linear forms. On top of that sit brackets,
//! bracket closure with structure constants, central and derived series,
//! projections, Jordan chains of nilpotent operators, split-extension checks,
//! a classification of nilpotent algebras in three variables, and random
//! generators for each family.

pub mod classify;
pub mod coeffring;
pub mod error;
pub mod exactlinalg;
pub mod genlib;
pub mod liealgebra;
pub mod parse;
pub mod report;
pub mod vectorfield;

pub use coeffring::{ExpMonomial, ExpPoly, Rational};
pub use error::{CapKind, Error, ParseError, Result};
pub use liealgebra::{Caps, LieAlgebra};
pub use vectorfield::{CoordinateChange, VariableContext, VectorField};
