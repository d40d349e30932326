//! Exact-arithmetic toolkit for integral symplectic groups and their
//! finite quotients.
//!
//! The crate is organised around a handful of small, exact domains:
//!
//! - [`ratmat`]: arbitrary-precision rational matrices with Smith and
//!   Hermite normal forms.
//! - [`symplectic`]: symplectic similitudes over Q, the integral group
//!   Sp_2g(Z) and its principal congruence subgroups.
//! - [`elemdiv`]: the symplectic elementary divisor decomposition
//!   gamma = kappa * delta * lambda and the matrix complexity function.
//! - [`hecke`]: degrees of Hecke correspondences via lattice-orbit
//!   enumeration, coset representatives and explicit coset witnesses.
//! - [`finquot`]: Sp_2g(Z/qZ) closures, word lifting, surjectivity and
//!   index experiments.
//! - [`expander`]: Cayley graphs of the finite quotients, spectral gaps,
//!   edge expansion, and scans over power-free moduli.
//! - [`fundom`]: the genus-one fundamental domain reduction and the
//!   height-versus-complexity experiment.
//!
//! All algebraic computation is exact (big integers and big rationals);
//! floating point appears only in the spectral and upper half-plane
//! modules, with stated tolerances.

pub mod elemdiv;
pub mod error;
pub mod expander;
pub mod finquot;
pub mod fundom;
pub mod hecke;
pub mod ratmat;
pub mod symplectic;

pub use error::{Error, Result};
pub use ratmat::{Rat, RatMatrix, SnfResult};
pub use symplectic::{GeneratorSet, SimilitudeElement};
