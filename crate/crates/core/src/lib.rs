//! Transversal diagonal gates on 3D color codes: complex construction, CSS
//! codes over GF(2), Pauli algebra modulo eighth roots of unity and the
//! phase polynomial machinery that decides which logical gate a transversal
//! layer implements.

pub mod color;
pub mod complex;
pub mod css;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod pauli;
pub mod phase_poly;
pub mod verify;

pub use color::{Color, ColorPair};
pub use complex::{build_cube, build_truncated_cube, validate, Bipartition, ColoredComplex};
pub use error::{Error, Result};
