#![no_std]
//! Numerical core for folded holomorphic maps into the folded symplectic
//! 4-sphere `S⁴ ⊂ ℝ⁵` with fold the equatorial `S³ ⊂ ℂ²`.

extern crate alloc;

pub mod c2;
pub mod cheb;
pub mod error;
pub mod fft;
pub mod geometry;
pub mod grid;
pub mod harmonic;
pub mod index;
pub mod moduli;
pub mod polarization;
pub mod tolerance;
pub mod tunneling;

pub use c2::{C, C2};
pub use error::{Error, Result};
pub use tolerance::Tolerances;
