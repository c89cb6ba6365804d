//! Minimal differentiable CNN kernel: tensors, conv/pool/dense/activation
//! layers with hand-written backpropagation, and momentum SGD.
//!
//! Layers cache nothing internally; forward passes return whatever backward
//! needs, so a missing cache is unrepresentable and per-sample passes can run
//! side by side on shared parameters.

mod activation;
mod conv;
mod dense;
mod optim;
mod pool;
mod tensor;
mod trunk;

pub use activation::ActivationKind;
pub use conv::ConvLayer;
pub use dense::DenseLayer;
pub use optim::Sgd;
pub use pool::{PoolKind, PoolSpec};
pub use tensor::Tensor;
pub use trunk::{ConvSpec, Trunk, TrunkCache, TrunkConfig, TrunkShapes};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NnError {
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("invalid configuration: {0}")]
    BadConfig(String),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, NnError>;
