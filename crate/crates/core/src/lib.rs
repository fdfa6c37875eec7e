//! Orthogonal polynomials on the unit circle: Christoffel–Darboux kernels,
//! Christoffel transforms of measures by a non-negative Laurent factor, and
//! the `(c, g)` parametrization of Verblunsky coefficients.
//!
//! Everything is cross-checked against closed-form families and an
//! independent moment/Levinson oracle (see [`oracle`] and [`verify`]).

pub mod cgrec;
pub mod christoffel;
pub mod cli;
pub mod dd;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod opuc;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
