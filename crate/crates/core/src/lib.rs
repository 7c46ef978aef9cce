//! Octonionic linear algebra, exact Hessian calculus in 16 real variables,
//! module syzygies over ℚ, and a spectral Newton solver for the octonionic
//! Monge–Ampère equation on the flat torus.

pub mod error;
pub mod herm2;
pub mod lie;
pub mod lines;
pub mod monge_ampere;
pub mod octonion;
pub mod poly;
pub mod polycalc;
pub mod random;
pub mod scalar;
pub mod schemas;
pub mod syzygy;
pub mod trig;
pub mod verify;

pub use error::{Error, Result};
