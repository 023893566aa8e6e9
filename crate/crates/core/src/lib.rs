//! Exact wreath products and triangular actions of finite-dimensional Lie
//! algebras over ℚ, built on truncated formal series of polynomial maps.
//!
//! * [`algebra`]: structure constants, `ad`, ideals and quotients.
//! * [`poly`]: homogeneous maps, truncated series, polarization, derivation.
//! * [`lie_series`]: brackets on `S(X)` and `A[[Y]]`, embeddings into `S(X×Y)`.
//! * [`actions`]: Bernoulli coefficients, the fundamental action, formal actions.
//! * [`wreath`]: the semidirect bracket on `A[[Y]] × B` and the triangular action.
//! * [`extensions`]: the Kaloujnine-Krasner representation of an extension.

pub mod actions;
pub mod algebra;
pub mod cli;
pub mod display;
pub mod error;
pub mod extensions;
pub mod format;
pub mod lie_series;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod rational;
pub mod wreath;

pub use algebra::LieAlgebra;
pub use error::{Error, Result};
pub use linalg::{LinearMap, Vector};
pub use poly::{FormalSeries, HomogeneousMap, MultiIndex, MultilinearTensor};
pub use rational::Rational;
