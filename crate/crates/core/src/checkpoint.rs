//! Self-describing binary tensor container.
//!
//! Layout: magic `VQNN`, format version `u16` LE, then one record per tensor
//! until end of file. Record: name length `u16` LE, UTF-8 name, rank `u8`,
//! each dim `u32` LE, then the values as little-endian 8-byte floats.
//! Round-trips are bit-exact.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::float::Scalar;
use crate::nn::Tensor;

pub const MAGIC: &[u8; 4] = b"VQNN";
pub const FORMAT_VERSION: u16 = 1;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("cannot access checkpoint: {0}")]
    Io(#[from] io::Error),

    #[error("bad checkpoint magic {0:02x?}")]
    BadMagic([u8; 4]),

    #[error("unsupported checkpoint format version {0}")]
    UnsupportedVersion(u16),

    #[error("checkpoint truncated while reading {0}")]
    Truncated(&'static str),

    #[error("tensor name is not valid UTF-8")]
    BadName,

    #[error("tensor `{name}` has non-finite values")]
    NonFinite { name: String },
}

pub fn save_tensors<T: Scalar>(
    path: &Path,
    tensors: &[(String, &Tensor<T>)],
) -> Result<(), CheckpointError> {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    for (name, tensor) in tensors {
        let name_bytes = name.as_bytes();
        bytes.extend_from_slice(&(name_bytes.len() as u16).to_le_bytes());
        bytes.extend_from_slice(name_bytes);
        bytes.push(tensor.shape().len() as u8);
        for &dim in tensor.shape() {
            bytes.extend_from_slice(&(dim as u32).to_le_bytes());
        }
        for &v in tensor.values() {
            bytes.extend_from_slice(&v.to_f64().to_le_bytes());
        }
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, bytes)?;
    Ok(())
}

pub fn load_tensors<T: Scalar>(path: &Path) -> Result<Vec<(String, Tensor<T>)>, CheckpointError> {
    let bytes = fs::read(path)?;
    let mut cursor = Cursor {
        bytes: &bytes,
        pos: 0,
    };

    let magic: [u8; 4] = cursor
        .take(4, "magic")?
        .try_into()
        .expect("fixed-size slice");
    if &magic != MAGIC {
        return Err(CheckpointError::BadMagic(magic));
    }
    let version = u16::from_le_bytes(cursor.take(2, "version")?.try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(CheckpointError::UnsupportedVersion(version));
    }

    let mut tensors = Vec::new();
    while !cursor.at_end() {
        let name_len = u16::from_le_bytes(cursor.take(2, "name length")?.try_into().unwrap());
        let name = std::str::from_utf8(cursor.take(name_len as usize, "name")?)
            .map_err(|_| CheckpointError::BadName)?
            .to_string();
        let rank = cursor.take(1, "rank")?[0] as usize;
        let mut shape = Vec::with_capacity(rank);
        for _ in 0..rank {
            shape.push(u32::from_le_bytes(cursor.take(4, "dims")?.try_into().unwrap()) as usize);
        }
        let len: usize = shape.iter().product();
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            let raw = f64::from_le_bytes(cursor.take(8, "values")?.try_into().unwrap());
            values.push(T::from_f64(raw));
        }
        let tensor =
            Tensor::from_values(&shape, values).map_err(|_| CheckpointError::NonFinite {
                name: name.clone(),
            })?;
        tensors.push((name, tensor));
    }
    Ok(tensors)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], CheckpointError> {
        if self.pos + n > self.bytes.len() {
            return Err(CheckpointError::Truncated(what));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }
}
