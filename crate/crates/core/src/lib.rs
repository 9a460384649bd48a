//! Generalized (`p`-norm) trigonometry.
//!
//! The unit `p`-circle `|x|^p + |y|^p = 1` parametrized by twice the swept
//! sector area gives `cos_p` and `sin_p`. This crate evaluates them and
//! their inverses numerically, builds their Taylor series exactly for
//! integer `p`, computes `π_p` several independent ways, solves the
//! "halfway between circle and square" problems, and classifies rational
//! points on `p`-circles.

pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod pi;
pub mod ptrig;
pub mod quadrature;
pub mod roots;
pub mod series;

pub use error::{Error, Result};
pub use ptrig::{PParam, PlanePoint};
pub use quadrature::QuadratureConfig;
