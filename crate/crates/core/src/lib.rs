//! Exact-arithmetic workbench for order-one differential operators with
//! constant leading coefficients, the classical orthogonal polynomial
//! families they generate through Rodrigues-type formulas, membership in
//! the operator images, exact moment functionals, and a bounded-horizon
//! empirical tester for the Mathieu-subspace property.
//!
//! Everything is computed over Q (with a Gaussian-rational extension for
//! the oscillatory integrals); there is no floating point anywhere in the
//! library proper.

pub mod diffop;
pub mod error;
pub mod families;
pub mod image;
pub mod laurent;
pub mod linalg;
pub mod mathieu;
pub mod moments;
pub mod orthopoly;
pub mod rational;
pub mod repro;

pub use error::{Error, Result};
pub use laurent::{exact_div, LaurentPoly, Monomial, Poly};
pub use rational::{rat, rat_int, GaussianRational, Rational};
