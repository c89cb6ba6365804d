//! Synthetic stand-in corpora.
//!
//! The real datasets (MNIST, the concrete-crack corpus) have to be fetched
//! manually; these generators produce deterministic look-alike data in the
//! exact on-disk formats the loaders consume, so the full pipeline stays
//! runnable and testable without downloads. Digit images are handwritten-ish
//! rings (class 0) and strokes (class 1) at 28x28; crack images are textured
//! gray surfaces, the positive class carrying a dark meandering fissure.

use std::path::{Path, PathBuf};

use image::{GrayImage, Luma};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::mnist::{IDX_IMAGE_MAGIC, IDX_LABEL_MAGIC};
use crate::data::DataError;

const DIGIT_SIDE: usize = 28;

/// Writes `count` alternating 0/1 digit samples as a genuine IDX image/label
/// file pair; returns their paths.
pub fn write_synthetic_digit_idx(
    dir: &Path,
    count: usize,
    seed: u64,
) -> Result<(PathBuf, PathBuf), DataError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pixels = Vec::with_capacity(count * DIGIT_SIDE * DIGIT_SIDE);
    let mut labels = Vec::with_capacity(count);
    for i in 0..count {
        let label = (i % 2) as u8;
        let img = if label == 0 {
            draw_ring(&mut rng)
        } else {
            draw_stroke(&mut rng)
        };
        pixels.extend(img);
        labels.push(label);
    }

    std::fs::create_dir_all(dir)?;
    let images_path = dir.join("train-images-idx3-ubyte");
    let labels_path = dir.join("train-labels-idx1-ubyte");

    let mut image_bytes = Vec::with_capacity(16 + pixels.len());
    image_bytes.extend_from_slice(&IDX_IMAGE_MAGIC.to_be_bytes());
    image_bytes.extend_from_slice(&(count as u32).to_be_bytes());
    image_bytes.extend_from_slice(&(DIGIT_SIDE as u32).to_be_bytes());
    image_bytes.extend_from_slice(&(DIGIT_SIDE as u32).to_be_bytes());
    image_bytes.extend_from_slice(&pixels);
    std::fs::write(&images_path, image_bytes)?;

    let mut label_bytes = Vec::with_capacity(8 + labels.len());
    label_bytes.extend_from_slice(&IDX_LABEL_MAGIC.to_be_bytes());
    label_bytes.extend_from_slice(&(count as u32).to_be_bytes());
    label_bytes.extend_from_slice(&labels);
    std::fs::write(&labels_path, label_bytes)?;

    Ok((images_path, labels_path))
}

/// An elliptical ring: the digit "0" with jittered center, radii, stroke
/// width, brightness and pixel noise.
fn draw_ring(rng: &mut ChaCha8Rng) -> Vec<u8> {
    let cx = 13.5 + rng.gen_range(-2.0..2.0);
    let cy = 13.5 + rng.gen_range(-2.0..2.0);
    let ry = rng.gen_range(5.5..8.5);
    let rx = ry * rng.gen_range(0.6..0.95);
    let stroke = rng.gen_range(1.3..2.4);
    let brightness = rng.gen_range(0.75..1.0);
    render(rng, |x, y| {
        let dx = (x - cx) / rx;
        let dy = (y - cy) / ry;
        let radial = (dx * dx + dy * dy).sqrt();
        // distance from the unit ellipse, approximately in pixels
        let dist = (radial - 1.0).abs() * (rx + ry) / 2.0;
        brightness * (-(dist * dist) / (stroke * stroke)).exp()
    })
}

/// A slightly slanted vertical stroke: the digit "1", sometimes with a short
/// base serif.
fn draw_stroke(rng: &mut ChaCha8Rng) -> Vec<u8> {
    let cx = 13.5 + rng.gen_range(-2.5..2.5);
    let slant = rng.gen_range(-0.2..0.2);
    let top = rng.gen_range(4.0..7.0);
    let bottom = rng.gen_range(20.5..24.0);
    let stroke = rng.gen_range(1.1..2.0);
    let brightness = rng.gen_range(0.75..1.0);
    let serif = rng.gen_bool(0.4);
    let serif_half = rng.gen_range(2.0..3.5);
    render(rng, |x, y| {
        let mut value: f64 = 0.0;
        if y >= top && y <= bottom {
            let center = cx + slant * (y - 14.0);
            let dist = (x - center).abs();
            value = value.max(brightness * (-(dist * dist) / (stroke * stroke)).exp());
        }
        if serif && (y - bottom).abs() < 1.2 && (x - cx).abs() < serif_half {
            value = value.max(brightness * 0.9);
        }
        value
    })
}

fn render(rng: &mut ChaCha8Rng, intensity: impl Fn(f64, f64) -> f64) -> Vec<u8> {
    let mut out = Vec::with_capacity(DIGIT_SIDE * DIGIT_SIDE);
    for y in 0..DIGIT_SIDE {
        for x in 0..DIGIT_SIDE {
            let v = intensity(x as f64, y as f64) + rng.gen_range(0.0..0.10);
            out.push((v.clamp(0.0, 1.0) * 255.0) as u8);
        }
    }
    out
}

/// Writes `per_class` PNG images under `root/Negative` and `root/Positive`.
pub fn write_synthetic_crack_folder(
    root: &Path,
    per_class: usize,
    side: usize,
    seed: u64,
) -> Result<(), DataError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (dir_name, cracked) in [("Negative", false), ("Positive", true)] {
        let dir = root.join(dir_name);
        std::fs::create_dir_all(&dir)?;
        for i in 0..per_class {
            let img = draw_surface(&mut rng, side, cracked);
            img.save(dir.join(format!("{}_{i:05}.png", dir_name.to_lowercase())))
                .map_err(|e| DataError::Layout(format!("cannot write PNG: {e}")))?;
        }
    }
    Ok(())
}

/// A concrete-like surface: base gray with a soft illumination gradient,
/// speckle noise and occasional dark pores; cracked surfaces add a dark
/// random-walk fissure.
fn draw_surface(rng: &mut ChaCha8Rng, side: usize, cracked: bool) -> GrayImage {
    let base = rng.gen_range(0.45..0.75);
    let grad_x = rng.gen_range(-0.1..0.1) / side as f64;
    let grad_y = rng.gen_range(-0.1..0.1) / side as f64;
    let mut values = vec![0.0f64; side * side];
    for y in 0..side {
        for x in 0..side {
            values[y * side + x] = base
                + grad_x * x as f64
                + grad_y * y as f64
                + rng.gen_range(-0.06..0.06);
        }
    }
    // pores: small dark dots on either class
    for _ in 0..rng.gen_range(2..7) {
        let px = rng.gen_range(0..side) as f64;
        let py = rng.gen_range(0..side) as f64;
        let r = rng.gen_range(0.8..1.8);
        stamp_dark(&mut values, side, px, py, r, rng.gen_range(0.55..0.8));
    }
    if cracked {
        // meandering fissure from one edge
        let vertical = rng.gen_bool(0.5);
        let mut pos = if vertical {
            (rng.gen_range(0.15..0.85) * side as f64, 0.0)
        } else {
            (0.0, rng.gen_range(0.15..0.85) * side as f64)
        };
        let mut drift: f64 = rng.gen_range(-0.4..0.4);
        let darkness = rng.gen_range(0.25..0.5);
        let width = rng.gen_range(0.7..1.4);
        let steps = side * 2;
        for _ in 0..steps {
            stamp_dark(&mut values, side, pos.0, pos.1, width, darkness);
            drift = (drift + rng.gen_range(-0.25..0.25)).clamp(-1.0, 1.0);
            if vertical {
                pos.0 += drift;
                pos.1 += rng.gen_range(0.35..0.75);
            } else {
                pos.0 += rng.gen_range(0.35..0.75);
                pos.1 += drift;
            }
            if pos.0 < 0.0 || pos.1 < 0.0 || pos.0 >= side as f64 || pos.1 >= side as f64 {
                break;
            }
        }
    }
    let mut img = GrayImage::new(side as u32, side as u32);
    for y in 0..side {
        for x in 0..side {
            let v = (values[y * side + x].clamp(0.0, 1.0) * 255.0) as u8;
            img.put_pixel(x as u32, y as u32, Luma([v]));
        }
    }
    img
}

/// Multiplies a soft dark spot into the surface around (px, py).
fn stamp_dark(values: &mut [f64], side: usize, px: f64, py: f64, radius: f64, factor: f64) {
    let reach = (radius * 3.0).ceil() as i64;
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            let x = px as i64 + dx;
            let y = py as i64 + dy;
            if x < 0 || y < 0 || x >= side as i64 || y >= side as i64 {
                continue;
            }
            let fx = x as f64 - px;
            let fy = y as f64 - py;
            let falloff = (-(fx * fx + fy * fy) / (radius * radius)).exp();
            let cell = &mut values[y as usize * side + x as usize];
            *cell *= 1.0 - (1.0 - factor) * falloff;
        }
    }
}
