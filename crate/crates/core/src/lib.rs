//! Bare hadron mass spectrum of the bi-Hamiltonian models h8 and h16,
//! calibration of their free parameters, creation probabilities, and exact
//! checks of the underlying operator algebra.
//!
//! ```
//! use bispec::spectrum::{mass_squared, Model, QuantumNumbers};
//!
//! let nucleon = QuantumNumbers::new(1, 1, 1, 1);
//! let m = mass_squared(Model::H16, &nucleon, 0.067, 1.0).unwrap();
//! assert!((m.physical_mass(1).unwrap() - 1.144).abs() < 1e-3);
//! ```

pub mod amplitudes;
pub mod calibrate;
pub mod cli;
pub mod error;
pub mod physops;
pub mod report;
pub mod specfun;
pub mod spectrum;
pub mod symcore;
pub mod verify;

pub use error::{Error, Result};
