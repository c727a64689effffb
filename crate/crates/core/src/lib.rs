//! Simulation of an NMR switch built from a two-electron quantum dot with a
//! spin-½ impurity nucleus at its center.
//!
//! The magnetic field drives the two-electron ground state through a sequence
//! of angular-momentum ("magic number") transitions. Each transition changes
//! the electron density at the nucleus, which changes the contact hyperfine
//! coupling and therefore the nuclear resonance frequency. Infra-red excitation
//! of the center-of-mass motion renormalizes the coupling a second way.
//!
//! Module map:
//! - [`config`]: physical parameters and unit conversions
//! - [`numerics`]: Hermitian eigensolver, unitary propagation, root bracketing
//! - [`spectrum`]: orbital ground state and transition points
//! - [`hyperfine`]: electron density at the nucleus and the coupling `A(m)`
//! - [`spin`]: nuclear⊗electron spin Hamiltonian and the NMR frequency
//! - [`gates`]: RF pulses, Hadamard and conditional-resonance CNOT
//! - [`sweep`]: field sweeps, CSV/SVG output and run manifests

pub mod config;
pub mod error;
pub mod gates;
pub mod hyperfine;
pub mod numerics;
pub mod spectrum;
pub mod spin;
pub mod sweep;

pub use config::{DotConfig, FieldPoint};
pub use error::{ConfigError, Error, Result};
