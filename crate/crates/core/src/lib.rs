//! Arithmetic of cubic characters over the Eisenstein integers and
//! numerical moments of their central L-values.

pub mod characters;
pub mod constants;
pub mod eisenstein;
pub mod error;
pub mod gauss;
pub mod lfunction;
pub mod moments;
pub mod scalar;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Eisenstein integers with 128-bit coordinates, used throughout.
pub type Eisenstein = eisenstein::EisensteinInt<i128>;
