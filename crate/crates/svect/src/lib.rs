//! Exact invariants of the stable category of vector bundles on a weighted
//! projective line with three weights.
//!
//! * [`picard`]: the grading group `L`, its order, degree and graded dimensions.
//! * [`bundles`]: symbolic extension bundles and their stable Hom dimensions.
//! * [`ktheory`]: Grothendieck groups, Euler forms, Cartan and Coxeter matrices.
//! * [`coxzoo`]: Coxeter polynomials, Calabi-Yau dimensions, Nakayama classification.
//! * [`tubular`]: slope maps for the tubular weight types.

pub mod bundles;
pub mod coxzoo;
pub mod error;
pub mod ktheory;
pub mod matrix;
pub mod picard;
pub mod poly;
pub mod selfcheck;
pub mod tubular;

pub use error::{Error, Result};
pub use picard::{LElt, WeightTriple};
