//! Dense state-vector simulation of small qubit registers.

mod gate;
mod noise;
mod rotation;
mod state;

pub use gate::{apply_controlled_rotation, apply_sequence, Blueprint, ControlledRotation, Edge, Gate, GateSequence};
pub use noise::{apply_noise_channel, NoiseModel};
pub use rotation::{rotation_matrix, RotationParams, Unitary2};
pub use state::{BasisOutcome, StateVector, MAX_QUBITS};
