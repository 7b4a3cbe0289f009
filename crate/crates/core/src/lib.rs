//! Clifford-valued Fourier analysis on grids and radial functions.
//!
//! Everything is generic over the floating-point type through [`Scalar`]
//! (`f32` or `f64`); the aliases at the crate root fix it to `f64`.

pub mod approach_a;
pub mod clifford;
mod error;
pub mod gft;
pub mod mustard;
pub mod qft_image;
mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use clifford::{AlgebraDim, Multivector, RootOfMinusOne};
pub use gft::{GftPlan, GridMode, GridSpec, MultivectorField};

pub type Multivector64 = clifford::Multivector<f64>;
pub type Root64 = clifford::RootOfMinusOne<f64>;
pub type Field64 = gft::MultivectorField<f64>;
pub type Plan64 = gft::GftPlan<f64>;
pub type Grid64 = gft::GridSpec<f64>;
