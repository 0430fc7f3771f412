//! Exact arithmetic in ℚ(√2) and the matrix groups built on it.

mod group;
mod linalg;
mod qsqrt2;

pub use group::{
    close_group, close_group_capped, determinant, element_order, flip_group_listed, flip_mirror,
    flip_rotoreflection, group_invariants, identify_group, minimal_generators, named_elements, sigma,
    sigma_prime, GroupId, GroupInvariants, NamedGenerator, Naming, SymGroup, DEFAULT_CLOSURE_CAP,
};
pub use linalg::{Mat3, Vec3};
pub use qsqrt2::QSqrt2;
