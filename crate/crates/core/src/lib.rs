//! Exact graded commutative algebra over prime fields: Gröbner bases and
//! syzygies, minimal free resolutions, trimming complexes, DG products on
//! short resolutions, Koszul homology algebras and Golod verdicts.

pub mod cli;
pub mod complex;
pub mod corpus;
pub mod dg;
pub mod error;
pub mod field;
pub mod golod;
pub mod groebner;
pub mod homology;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod resolutions;
pub mod trimming;

pub use complex::{ChainComplex, ComplexMorphism, GradedFreeModule, Matrix};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, PolynomialRing};
