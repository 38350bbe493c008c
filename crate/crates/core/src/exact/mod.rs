//! Exact rational arithmetic, linear algebra and a small feasibility solver.
//! Nothing in the kernel uses floating point.

pub mod linalg;
pub mod lp;
mod rational;

pub use linalg::{
    affine_dimension, affine_hull, determinant, line_hyperplane_intersection, null_space, rank,
    rref, AffineSubspace, Hyperplane, Vector,
};
pub use rational::{ParseRationalError, Rational};
