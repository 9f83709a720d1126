//! Exact arithmetic, monomials, polynomials and graded matrices.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod poly;

pub use field::{Field, Fp, Rationals, DEFAULT_PRIME};
pub use matrix::{GradedFree, GradedMatrix};
pub use monomial::{Monomial, ModuleOrderKind, MonomialOrderKind, TermOrder, MAX_VARS};
pub use poly::{Poly, PolyRing, Term, Vector};
