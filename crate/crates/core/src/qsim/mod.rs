//! Dense statevector quantum-circuit simulator.
//!
//! Amplitude ordering is little-endian throughout the crate: bit `k` of a
//! basis index is qubit `k`, and the same convention indexes the characters
//! of measurement bitstrings. Rotation gates use the generator convention
//! `R_P(t) = exp(-i t P / 2)`, so `RZ(t) = diag(e^{-it/2}, e^{+it/2})`.

mod circuit;
mod dense;
mod gate;
mod observable;
mod sampling;
mod shift;
mod state;

pub use circuit::{Circuit, ParamBinding};
pub use dense::{dense_unitary, DenseMatrix, DENSE_QUBIT_CAP};
pub use gate::{Gate, GateKind};
pub use observable::{expectation, Observable, Pauli, PauliString};
pub use sampling::sample_measurements;
pub use shift::parameter_shift_grad;
pub use state::{zero_state, zero_state_with_cap, StateVector, QUBIT_CAP};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QsimError {
    #[error("requested {requested} qubits exceeds the cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("gate index {index} out of range for circuit of {len} gates")]
    GateOutOfRange { index: usize, len: usize },

    #[error("parameter `{0}` has no binding")]
    UnboundParameter(String),

    #[error("parameter `{symbol}` drives gate {gate_index}, which is not a rotation gate")]
    NonRotationBinding { symbol: String, gate_index: usize },

    #[error("parameter `{symbol}` cannot be differentiated: gate {gate_index} is not an RX/RY/RZ rotation")]
    UnsupportedGradient { symbol: String, gate_index: usize },

    #[error("observable acts on {obs_qubits} qubits but state has {state_qubits}")]
    QubitCountMismatch {
        obs_qubits: usize,
        state_qubits: usize,
    },

    #[error("expectation has non-negligible imaginary part {imag}")]
    NonRealExpectation { imag: f64 },
}

pub type Result<T> = std::result::Result<T, QsimError>;
