//! Ghost-force error in one-dimensional quasicontinuum lattice dynamics.
//!
//! The crate is organized bottom-up:
//!
//! - [`lattice`]: lattice configuration, fields, the atomistic / Cauchy–Born /
//!   quasicontinuum difference operators and the ghost force.
//! - [`dynamics`]: velocity-Verlet integration of the three error models,
//!   discrete gradients, energy accounting and trajectories.
//! - [`spectral`]: dispersion relation, lattice Green's function and the
//!   closed-form mode sums for the Cauchy–Born error model.
//! - [`bounds`]: numerical verification of the exponential-sum machinery and
//!   the short-time / long-time error estimates.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration used by [`bounds`].

pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod quadrature;
pub mod spectral;
pub mod summation;

pub use error::{Error, Result};
pub use lattice::{build_config, Field, FieldKind, LatticeConfig, OperatorKind};
