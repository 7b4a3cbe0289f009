//! Two-sided geometric Fourier transforms on periodic and calibrated grids.

mod axis;
mod clff;
mod eigen;
mod field;
mod grid;
mod plan;

pub use axis::{axis_transform, AxisKernel, AxisPath, Direction, MixTable, Side};
pub use clff::{read_clff, write_clff};
pub use eigen::{hermite_eigen_gap, hermite_eigenvalue, hermite_field, multi_indices};
pub use field::MultivectorField;
pub(crate) use field::pointwise_product_into;
pub use grid::{GridMode, GridSpec};
pub use plan::GftPlan;
