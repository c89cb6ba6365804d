//! Image-folder ingestion: `<root>/Negative/*` labeled 0 and
//! `<root>/Positive/*` labeled 1.

use std::path::{Path, PathBuf};

use image::imageops::FilterType;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::{pixels_to_image, split, DataError, DatasetSplit, Sample};

const CLASS_DIRS: [(&str, u8); 2] = [("Negative", 0), ("Positive", 1)];

/// Loads, grayscales and bilinear-resizes every usable image, then splits
/// stratified by class.
///
/// Per class, file paths are sorted, seeded-shuffled and truncated to
/// `max_per_class`. Undecodable files are skipped with a warning; more than
/// 10% skipped fails the load.
pub fn load_image_folder(
    root: &Path,
    resize_to: usize,
    max_per_class: usize,
    split_ratio: f64,
    seed: u64,
) -> Result<DatasetSplit, DataError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut attempted = 0usize;
    let mut skipped = 0usize;

    for (dir_name, label) in CLASS_DIRS {
        let dir = root.join(dir_name);
        if !dir.is_dir() {
            return Err(DataError::Layout(format!(
                "missing class directory {}",
                dir.display()
            )));
        }
        let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| {
                p.extension()
                    .and_then(|e| e.to_str())
                    .map(|e| {
                        matches!(e.to_ascii_lowercase().as_str(), "jpg" | "jpeg" | "png")
                    })
                    .unwrap_or(false)
            })
            .collect();
        files.sort();
        files.shuffle(&mut rng);
        files.truncate(max_per_class);
        if files.is_empty() {
            return Err(DataError::Layout(format!(
                "no decodable images under {}",
                dir.display()
            )));
        }

        for path in files {
            attempted += 1;
            let decoded = match image::open(&path) {
                Ok(img) => img,
                Err(err) => {
                    log::warn!("skipping undecodable image {}: {err}", path.display());
                    skipped += 1;
                    continue;
                }
            };
            let gray = image::DynamicImage::ImageLuma8(decoded.to_luma8()).resize_exact(
                resize_to as u32,
                resize_to as u32,
                FilterType::Triangle,
            );
            samples.push(Sample {
                image: pixels_to_image(gray.to_luma8().as_raw(), resize_to, resize_to),
                label,
            });
        }
    }

    if skipped * 10 > attempted {
        return Err(DataError::TooManySkipped {
            skipped,
            total: attempted,
        });
    }
    split(samples, split_ratio, seed)
}
