//! Quasi-lattice operations on finite-dimensional ordered Banach spaces.
//!
//! A closed cone `C ⊆ ℝⁿ` orders the space by `x ≤ y ⇔ y − x ∈ C`. Upper bounds of a
//! pair rarely have a least element, but the upper bound closest to both points in the
//! distance-sum sense is unique whenever the norm is strictly convex. This crate
//! computes that quasi-supremum and builds the derived algebra, order-theoretic
//! diagnostics and operator experiments on top of it.

pub mod error;
pub mod harness;
pub mod operators;
pub mod order_metrics;
pub mod quasilattice;
pub mod sampling;
pub mod solver;
pub mod spaces;

pub use error::{Error, Result};
pub use spaces::{Cone, NormSpec, OrderedSpace};

/// Dense real coordinate vector.
pub type Vector = nalgebra::DVector<f64>;

/// Builds a [`Vector`] from a slice.
pub fn vector(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}
