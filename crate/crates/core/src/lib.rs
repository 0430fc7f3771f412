//! Exact enumeration of the dihedral folding tilings of the sphere that
//! arise from the (2,3,4) Möbius triangle by removing edges of a single
//! class from one of two monohedral base tilings.
//!
//! The pipeline is: build a [`complex::BaseComplex`], derive the
//! [`complex::EdgeTemplate`] for an edge class, solve its parity system
//! ([`enumerate::solve_parity`]), merge removed units into prototiles
//! ([`enumerate::apply_assignment`]), verify, then deduplicate either by
//! symmetry orbits ([`symmetry`]) or by reduced-graph isomorphism
//! ([`graphiso`]). [`report`] turns the classes into labelled records.

pub mod algebra;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod graphiso;
pub mod report;
pub mod selftest;
pub mod symmetry;

pub use algebra::{GroupId, Mat3, NamedGenerator, QSqrt2, SymGroup, Vec3};
pub use complex::{Angle, Base, BaseComplex, EdgeClass, EdgeTemplate, ReducedGraph};
pub use enumerate::{Assignment, Census, TileKind, Tiling};
pub use error::{Error, Result};
