//! Hybrid quantum-classical neural network for binary image classification.
//!
//! The pieces, bottom up:
//!
//! - [`qsim`] — dense statevector simulator with Pauli-observable
//!   expectations and parameter-shift differentiation.
//! - [`ansatz`] — the 2-qubit QAOA-style circuit (cost + mixer blocks) used
//!   as the quantum output layer, plus the grid calibration of its
//!   hyperparameters.
//! - [`nn`] — a small CNN kernel (conv / pool / dense / activations) with
//!   manual backpropagation and momentum SGD.
//! - [`data`] — MNIST IDX and image-folder ingestion, plus synthetic
//!   stand-in corpora for environments without the real datasets.
//! - [`train`] — the hybrid loop: CNN -> theta -> quantum layer ->
//!   probability -> binary cross-entropy, differentiated end to end.
//! - [`checkpoint`] / [`plot`] — model persistence and SVG convergence
//!   charts.
//!
//! Numeric kernels are generic over [`float::Scalar`]; the pipeline runs at
//! the [`Real`] alias below.

pub mod ansatz;
pub mod checkpoint;
pub mod data;
pub mod float;
pub mod nn;
pub mod qsim;

/// Working precision of the shipped pipeline.
pub type Real = f64;
