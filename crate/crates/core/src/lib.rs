//! Exact construction and independent verification of the complete solution
//! classifications of two Wilson-type functional equations
//!
//! ```text
//!   f(xy) + μ(y) f(σ(y)x) = 2 f(x) g(y)      (variant W1)
//!   f(xy) + μ(y) f(σ(y)x) = 2 f(y) g(x)      (variant W2)
//! ```
//!
//! and the associated d'Alembert-type equations, over two kinds of carrier:
//! finite semigroups given by Cayley tables and rational vector semigroups
//! (ℚᵈ, +) handled symbolically.  Here σ is an involutive automorphism and μ
//! a multiplicative function with μ(x σ(x)) = 1; all carriers are required to
//! be generated by their squares.
//!
//! All arithmetic is exact (cyclotomic fields over ℚ), every structural
//! hypothesis is validated rather than assumed, and claimed solution sets are
//! checked against independently computed solution spaces.

pub mod funcspace;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod qspace;
pub mod scalar;
pub mod semigroup;
pub mod wilson;

pub use scalar::{rat, rat_int, CycField, Cyclotomic, Rational, ScalarError};
