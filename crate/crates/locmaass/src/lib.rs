//! Numerical evaluation of local Maass forms and locally harmonic Maass forms
//! as lattice sums over binary quadratic forms, together with the indefinite
//! theta kernels and half-integral-weight Poincare series that tie the two
//! weights together. The verification suites check modularity, Laplacian
//! eigenvalue equations, xi-operator intertwining, Hecke relations and the
//! jump structure across the exceptional geodesics as numerical identities.

pub(crate) mod acc;
pub mod cli;
pub mod error;
pub mod diffops;
pub mod eta;
pub mod geodesics;
pub mod hecke;
pub mod evaluators;
pub mod poincare;
pub mod qforms;
pub mod quad;
pub mod specfun;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
