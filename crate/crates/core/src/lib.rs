//! Exact finite free additive convolution and certified root inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: dense rational polynomials and the convolution `p ⊞ⁿ q`.
//! - [`roots`]: Sturm-certified root isolation, root vectors, interlacing
//!   and the inverse Cauchy transform.
//! - [`majorization`] and [`horn`]: majorization order, pinches, Horn
//!   triples and a random-Hermitian falsification oracle.
//! - [`lab`]: verifiers for the root inequalities, the pinch machinery
//!   used in the submodularity proof, and the conjecture search harness.
//! - [`multiaffine`]: the multivariate convolution, strongly Rayleigh
//!   certificates, points above the roots and potentials.
//!
//! All arithmetic that feeds a verdict is exact. Comparisons between
//! irrational roots go through [`interval::Trilean`], which never rounds.

pub mod error;
pub mod horn;
pub mod interval;
pub mod lab;
pub mod majorization;
pub mod multiaffine;
pub mod poly;
pub mod rat;
pub mod roots;

pub use error::{Error, Result};
pub use interval::{Interval, Trilean};
pub use poly::RatPoly;
pub use rat::Rat;
