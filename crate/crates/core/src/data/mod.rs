//! Dataset ingestion for the two binary image tasks: MNIST-style IDX files
//! (digits 0/1) and a Positive/Negative image folder (crack detection).
//!
//! Loading is deterministic: (paths, seed, config) fully determine sample
//! order, and a source index never lands in both splits.

mod folder;
mod mnist;
pub mod synth;

pub use folder::load_image_folder;
pub use mnist::{load_mnist_idx, parse_idx_images, parse_idx_labels};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::nn::Tensor;
use crate::Real;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot access dataset file: {0}")]
    Io(#[from] std::io::Error),

    #[error("bad IDX magic: expected {expected:#010x}, found {found:#010x}")]
    BadMagic { expected: u32, found: u32 },

    #[error("IDX file truncated: expected {expected} bytes of {what}, found {found}")]
    Truncated {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("image and label files disagree on the sample count ({images} vs {labels})")]
    CountMismatch { images: usize, labels: usize },

    #[error("dataset layout problem: {0}")]
    Layout(String),

    #[error("{skipped} of {total} images undecodable, more than the 10% budget")]
    TooManySkipped { skipped: usize, total: usize },

    #[error("class {label} would be empty in the {split} split")]
    Stratification { label: u8, split: &'static str },

    #[error("not enough samples: {0}")]
    NotEnough(String),
}

/// One image with its binary label. Pixels live in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Sample {
    pub image: Tensor<Real>,
    pub label: u8,
}

/// Disjoint train/validation sets, both containing each class.
#[derive(Debug, Clone)]
pub struct DatasetSplit {
    pub train: Vec<Sample>,
    pub validation: Vec<Sample>,
    pub seed: u64,
}

impl DatasetSplit {
    pub fn class_counts(samples: &[Sample]) -> (usize, usize) {
        let ones = samples.iter().filter(|s| s.label == 1).count();
        (samples.len() - ones, ones)
    }
}

/// Deterministic stratified split: per class, a seeded shuffle followed by a
/// proportional cut, so class proportions in each split stay within one
/// sample of the global proportion.
pub fn split(samples: Vec<Sample>, ratio: f64, seed: u64) -> Result<DatasetSplit, DataError> {
    assert!(ratio > 0.0 && ratio < 1.0, "split ratio must be in (0, 1)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut by_class: [Vec<Sample>; 2] = [Vec::new(), Vec::new()];
    for s in samples {
        by_class[s.label as usize].push(s);
    }

    let mut train = Vec::new();
    let mut validation = Vec::new();
    for (label, class) in by_class.into_iter().enumerate() {
        if class.is_empty() {
            continue;
        }
        let n = class.len();
        let n_train = ((ratio * n as f64).round() as usize).clamp(1, n.saturating_sub(1).max(1));
        if n_train == n {
            return Err(DataError::Stratification {
                label: label as u8,
                split: "validation",
            });
        }
        let mut class = class;
        class.shuffle(&mut rng);
        validation.extend(class.split_off(n_train));
        train.extend(class);
    }
    for split in [&train, &validation] {
        for label in [0u8, 1u8] {
            if !split.iter().any(|s| s.label == label) {
                return Err(DataError::Stratification {
                    label,
                    split: if std::ptr::eq(split, &train) {
                        "train"
                    } else {
                        "validation"
                    },
                });
            }
        }
    }
    train.shuffle(&mut rng);
    validation.shuffle(&mut rng);
    Ok(DatasetSplit {
        train,
        validation,
        seed,
    })
}

/// Round-robin interleave of per-class sample lists: every prefix is
/// balanced to within one sample per class.
pub(crate) fn interleave_classes(mut classes: Vec<Vec<Sample>>) -> Vec<Sample> {
    let total: usize = classes.iter().map(Vec::len).sum();
    for class in classes.iter_mut() {
        class.reverse(); // pop from the back = original order
    }
    let mut out = Vec::with_capacity(total);
    while out.len() < total {
        for class in classes.iter_mut() {
            if let Some(s) = class.pop() {
                out.push(s);
            }
        }
    }
    out
}

pub(crate) fn pixels_to_image(
    pixels: &[u8],
    height: usize,
    width: usize,
) -> Tensor<Real> {
    let values = pixels
        .iter()
        .map(|&p| Real::from(p) / 255.0)
        .collect();
    Tensor::from_values(&[1, height, width], values).expect("u8 pixels are finite")
}
