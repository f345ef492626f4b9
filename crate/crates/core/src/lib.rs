//! Exact T-module arithmetic over F_q[T] and bounded-height point counting
//! over non-archimedean local fields of any characteristic.
//!
//! The crate is organized around seven subsystems:
//!
//! - [`localfield`]: precision-tracked elements of F_{q^f}((u)) and Q_p,
//!   the base rings F_q[T], F_q(T), Q, and the height function;
//! - [`twisted`]: non-commutative twisted polynomials (scalar and matrix);
//! - [`tmodule`]: T-modules, their differentials, the j invariant, torsion
//!   points and torsion counts inside subvarieties;
//! - [`expmap`]: exponential/logarithm series from the functional equation
//!   and the lattice-quotient counting sets;
//! - [`hensel`]: multivariate Newton iteration and implicit-function charts;
//! - [`counting`]: bounded-height rational-point enumeration, membership at
//!   finite precision, and the hypersurface covering engine;
//! - [`cli`]: the batch front-end behind the `tmod` binary.

pub mod counting;
pub mod cli;
pub mod error;
pub mod expmap;
pub mod hensel;
pub mod linalg;
pub mod localfield;
pub mod mpoly;
pub mod ring;
pub mod textexpr;
pub mod tmodule;
pub mod twisted;

pub use error::{Error, Result};
