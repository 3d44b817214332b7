//! Equilibrium thermodynamics of the three-level Lambda Dicke model in the
//! thermodynamic limit.
//!
//! The partition sum reduces to a Laplace integral over scaled field
//! quadratures `(y1, z1, y2, z2)`; everything observable follows from the
//! global minimum of the exponent `f` and the thermal state of the 3x3
//! single-particle Hamiltonian at that point.

pub mod error;
pub mod free_energy;
pub mod minimizer;
pub mod model;
pub mod observables;
pub mod phase_diagram;
pub mod spectrum;
pub mod zero_temp;

pub use error::{Error, Result};
pub use model::{Branch, MeanField, ModelParams, PhaseLabel, ThermoPoint};
