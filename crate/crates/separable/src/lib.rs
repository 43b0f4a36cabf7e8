//! Separable packings of congruent disks in the Euclidean, spherical, and
//! hyperbolic planes.
//!
//! A packing of disks of radius `rho` is *lambda-separable* when the
//! concentric disks of radius `lambda <= rho` form a totally separable
//! packing: every pair can be split by a geodesic that misses the interiors
//! of all the shrunken disks. This crate provides
//!
//! * a geometry kernel for the three constant-curvature planes ([`geom`]),
//! * the closed-form scalar functions behind the extremal triangle families
//!   and their monotone-branch inverses ([`formulas`]),
//! * the extremal isosceles triangle families themselves ([`triangles`]),
//! * piecewise density, tightness, and contact-number bounds ([`bounds`]),
//! * Delaunay and bridge-refined cell decompositions ([`decomposition`]),
//! * verification and measurement of concrete packings ([`packing`]),
//! * constructors for the named extremal configurations ([`generators`]),
//! * text formats and SVG rendering ([`io`], [`svg`]).

pub mod bounds;
pub mod decomposition;
mod error;
pub mod formulas;
pub mod generators;
pub mod geom;
pub mod io;
pub mod packing;
pub mod svg;
pub mod triangles;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
