//! Partial linear spaces and generalized quadrangles as test designs.
//!
//! The lines of a partial linear space of order `(s, t)` form an
//! `s`-disjunct family of point sets, so the line-by-point incidence matrix
//! is a testing matrix that recovers up to `s` positive samples.

mod construct;
mod field;
mod pls;

pub use construct::{construct_grid, construct_symplectic, symplectic_form, GqDescriptor, Provenance};
pub use field::{is_prime, FieldElement, PrimeField};
pub use pls::{
    incidence_matrix, is_generalized_quadrangle, to_testing_scheme, validate_pls, GeometryError,
    PartialLinearSpace, QuadrangleViolation,
};
