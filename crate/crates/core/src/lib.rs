//! Exact-arithmetic toolkit for 2xe matrices of linear forms: Kronecker-
//! Weierstrass normal forms of their matrix pencils, Koszul filtrations and
//! degreewise certification for the associated determinantal rings, Hilbert
//! series and regularity formulas, rational normal scroll classification, and
//! multigraded Betti numbers via relative simplicial homology of monoid
//! divisibility intervals.

pub mod filtration;
pub mod homology;
pub mod invariants;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod rational;
pub mod ringmodel;
pub mod schema;

pub use matrix::{MatrixError, QMatrix, Rref};
pub use poly::{rational_linear_factors, LinearFactors, QPoly};
pub use rational::Rational;
