//! Commutative algebra over exact fields for coherent sheaves on projective space:
//! Gröbner bases of graded modules, minimal free resolutions, Hilbert polynomials,
//! Ext and Tor, sheaf cohomology and sheaf Ext, and pair-stability walls.

#![forbid(unsafe_code)]

pub mod cohomology;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod mon;
pub mod ops;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod scenarios;
pub mod session;
pub mod vector;
pub mod walls;

pub use error::{Error, Result};
pub use field::{Field, Fp, Q};
pub use matrix::GradedMatrix;
pub use module::Presentation;
pub use mon::{Mon, MonOrder};
pub use poly::{Poly, Ring};
pub use resolution::{BettiTable, FreeResolution};
