//! Discrete-time entanglement dynamics of a pair of qubits.
//!
//! A two-qubit density matrix is evolved by alternating a local quantum
//! channel (acting on one side of the pair) with a global unitary coupling
//! `U = exp(i·α·H)`. Along the way the crate records entanglement of
//! formation, von Neumann entropy and marginal entropies.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats, the
//! command-line front end and parallel ensemble execution live in the
//! companion `entdyn` crate.
//!
//! Conventions used everywhere:
//! - subsystem A is the left tensor factor, B the right one;
//! - the two-qubit basis is ordered `|00⟩, |01⟩, |10⟩, |11⟩`;
//! - `|0⟩` is the ground state of the amplitude damping channel;
//! - all entropies are in nats.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod channels;
pub mod dynamics;
mod error;
pub mod matcore;
pub mod measures;
pub mod sampling;
pub mod states;
pub mod tol;

pub use channels::{KrausChannel, LocalChannel, PauliField, TestResult};
pub use dynamics::{
    ChannelPreset, ChannelSpec, DynamicsConfig, EnsembleRow, EnsembleSeries, HamiltonianSpec, InitialSpec,
    ObservableRecord, TrajectorySeries,
};
pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, Spectrum, SubsystemId, C64};
pub use measures::{EntanglementValue, EntropyReport};
pub use sampling::RandomSource;
pub use states::{BlochDecomposition, DensityMatrix, PureState};
