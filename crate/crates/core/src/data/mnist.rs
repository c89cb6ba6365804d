//! MNIST IDX container parsing and the binary-digit subset loader.
//!
//! IDX image files: magic `0x00000803`, then count, rows, cols as big-endian
//! `u32`, then one unsigned byte per pixel. Label files: magic `0x00000801`,
//! count, one byte per label.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::{interleave_classes, pixels_to_image, DataError, DatasetSplit, Sample};

pub const IDX_IMAGE_MAGIC: u32 = 0x0000_0803;
pub const IDX_LABEL_MAGIC: u32 = 0x0000_0801;

pub struct IdxImages {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
    pub pixels: Vec<u8>,
}

fn read_u32_be(bytes: &[u8], offset: usize, what: &'static str) -> Result<u32, DataError> {
    let end = offset + 4;
    if bytes.len() < end {
        return Err(DataError::Truncated {
            what,
            expected: end,
            found: bytes.len(),
        });
    }
    Ok(u32::from_be_bytes(bytes[offset..end].try_into().unwrap()))
}

pub fn parse_idx_images(bytes: &[u8]) -> Result<IdxImages, DataError> {
    let magic = read_u32_be(bytes, 0, "image magic")?;
    if magic != IDX_IMAGE_MAGIC {
        return Err(DataError::BadMagic {
            expected: IDX_IMAGE_MAGIC,
            found: magic,
        });
    }
    let count = read_u32_be(bytes, 4, "image count")? as usize;
    let rows = read_u32_be(bytes, 8, "image rows")? as usize;
    let cols = read_u32_be(bytes, 12, "image cols")? as usize;
    let expected = 16 + count * rows * cols;
    if bytes.len() < expected {
        return Err(DataError::Truncated {
            what: "image pixels",
            expected,
            found: bytes.len(),
        });
    }
    Ok(IdxImages {
        count,
        rows,
        cols,
        pixels: bytes[16..expected].to_vec(),
    })
}

pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<u8>, DataError> {
    let magic = read_u32_be(bytes, 0, "label magic")?;
    if magic != IDX_LABEL_MAGIC {
        return Err(DataError::BadMagic {
            expected: IDX_LABEL_MAGIC,
            found: magic,
        });
    }
    let count = read_u32_be(bytes, 4, "label count")? as usize;
    let expected = 8 + count;
    if bytes.len() < expected {
        return Err(DataError::Truncated {
            what: "labels",
            expected,
            found: bytes.len(),
        });
    }
    Ok(bytes[8..expected].to_vec())
}

/// Loads the two kept digits from an IDX image/label pair as a binary task.
///
/// `keep_digits.0` becomes label 0 and `keep_digits.1` label 1. Each kept
/// class is shuffled by `seed` and the classes are interleaved, so any prefix
/// is balanced to within one sample. The train split takes the first
/// `max_per_split` samples and validation the following
/// `max_per_split * (1 - ratio) / ratio` (rounded), disjoint by construction.
pub fn load_mnist_idx(
    images_path: &Path,
    labels_path: &Path,
    keep_digits: (u8, u8),
    max_per_split: usize,
    split_ratio: f64,
    seed: u64,
) -> Result<DatasetSplit, DataError> {
    assert!(split_ratio > 0.0 && split_ratio < 1.0);
    let images = parse_idx_images(&std::fs::read(images_path)?)?;
    let labels = parse_idx_labels(&std::fs::read(labels_path)?)?;
    if images.count != labels.len() {
        return Err(DataError::CountMismatch {
            images: images.count,
            labels: labels.len(),
        });
    }

    let image_len = images.rows * images.cols;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = Vec::new();
    for (target_label, digit) in [(0u8, keep_digits.0), (1u8, keep_digits.1)] {
        let mut members: Vec<Sample> = labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == digit)
            .map(|(i, _)| Sample {
                image: pixels_to_image(
                    &images.pixels[i * image_len..(i + 1) * image_len],
                    images.rows,
                    images.cols,
                ),
                label: target_label,
            })
            .collect();
        if members.is_empty() {
            return Err(DataError::NotEnough(format!(
                "digit {digit} not present in {}",
                labels_path.display()
            )));
        }
        members.shuffle(&mut rng);
        classes.push(members);
    }

    let ordered = interleave_classes(classes);
    let val_count =
        ((max_per_split as f64) * (1.0 - split_ratio) / split_ratio).round() as usize;
    let needed = max_per_split + val_count.max(2);
    if ordered.len() < needed {
        return Err(DataError::NotEnough(format!(
            "{} kept samples, but train={} + validation={} requested",
            ordered.len(),
            max_per_split,
            val_count
        )));
    }
    let mut ordered = ordered;
    let rest = ordered.split_off(max_per_split);
    let validation: Vec<Sample> = rest.into_iter().take(val_count.max(2)).collect();

    for (name, part) in [("train", &ordered), ("validation", &validation)] {
        for label in [0u8, 1u8] {
            if !part.iter().any(|s| s.label == label) {
                return Err(DataError::Stratification { label, split: name });
            }
        }
    }

    Ok(DatasetSplit {
        train: ordered,
        validation,
        seed,
    })
}
