//! Exact-arithmetic toolkit for zero-dimensional subschemes of the projective
//! plane: prime-field linear algebra, graded ideals of point sets, Hilbert
//! functions and Betti tables, and seeded residuation (liaison) experiments.

pub mod field;
pub mod ideal;
pub mod liaison;
pub mod linalg;
pub mod ring;
pub mod sampler;

pub use field::{Field, FieldError, PrimeField, Rationals};
