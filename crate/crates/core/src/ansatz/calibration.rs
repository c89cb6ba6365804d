//! Plain-text persistence of the calibrated hyperparameters.
//!
//! Format: one `key=value` per line, keys `gamma`, `beta`,
//! `achieved_expectation`, `theta_ref`, values printed with ten decimals so
//! reruns produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::float::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration<T> {
    pub gamma: T,
    pub beta: T,
    pub achieved_expectation: T,
    pub theta_ref: T,
}

#[derive(Debug, thiserror::Error)]
pub enum CalibrationFileError {
    #[error("cannot access calibration file: {0}")]
    Io(#[from] io::Error),

    #[error("calibration file line {line} is not `key=value`: {text:?}")]
    Malformed { line: usize, text: String },

    #[error("calibration value for `{key}` is not a number: {value:?}")]
    BadNumber { key: String, value: String },

    #[error("calibration file is missing key `{0}`")]
    MissingKey(&'static str),
}

impl<T: Scalar> Calibration<T> {
    pub fn to_key_value_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in [
            ("gamma", self.gamma),
            ("beta", self.beta),
            ("achieved_expectation", self.achieved_expectation),
            ("theta_ref", self.theta_ref),
        ] {
            writeln!(out, "{key}={:.10}", value.to_f64()).expect("string write");
        }
        out
    }
}

pub fn write_calibration_file<T: Scalar>(
    path: &Path,
    calibration: &Calibration<T>,
) -> Result<(), CalibrationFileError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, calibration.to_key_value_text())?;
    Ok(())
}

pub fn read_calibration_file<T: Scalar>(path: &Path) -> Result<Calibration<T>, CalibrationFileError> {
    let text = fs::read_to_string(path)?;
    let mut gamma = None;
    let mut beta = None;
    let mut achieved = None;
    let mut theta_ref = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(CalibrationFileError::Malformed {
            line: lineno + 1,
            text: line.to_string(),
        })?;
        let parsed: f64 = value
            .trim()
            .parse()
            .map_err(|_| CalibrationFileError::BadNumber {
                key: key.trim().to_string(),
                value: value.trim().to_string(),
            })?;
        match key.trim() {
            "gamma" => gamma = Some(parsed),
            "beta" => beta = Some(parsed),
            "achieved_expectation" => achieved = Some(parsed),
            "theta_ref" => theta_ref = Some(parsed),
            _ => {} // unknown keys are ignored for forward compatibility
        }
    }
    Ok(Calibration {
        gamma: T::from_f64(gamma.ok_or(CalibrationFileError::MissingKey("gamma"))?),
        beta: T::from_f64(beta.ok_or(CalibrationFileError::MissingKey("beta"))?),
        achieved_expectation: T::from_f64(
            achieved.ok_or(CalibrationFileError::MissingKey("achieved_expectation"))?,
        ),
        theta_ref: T::from_f64(theta_ref.ok_or(CalibrationFileError::MissingKey("theta_ref"))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_stable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cal.txt");
        let cal = Calibration {
            gamma: 1.2689570326f64,
            beta: 1.6878360531,
            achieved_expectation: -0.1239967209,
            theta_ref: 0.7853981634,
        };
        write_calibration_file(&path, &cal).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("theta_ref=0.7853981634"));
        let back: Calibration<f64> = read_calibration_file(&path).unwrap();
        assert!((back.gamma - cal.gamma).abs() < 1e-10);
        assert!((back.achieved_expectation - cal.achieved_expectation).abs() < 1e-10);

        // identical bytes when written twice
        let again = dir.path().join("cal2.txt");
        write_calibration_file(&again, &back).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    }

    #[test]
    fn missing_key_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cal.txt");
        std::fs::write(&path, "gamma=1.0\nbeta=2.0\n").unwrap();
        assert!(matches!(
            read_calibration_file::<f64>(&path),
            Err(CalibrationFileError::MissingKey("achieved_expectation"))
        ));
    }

    #[test]
    fn garbage_line_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cal.txt");
        std::fs::write(&path, "gamma&1.0\n").unwrap();
        assert!(matches!(
            read_calibration_file::<f64>(&path),
            Err(CalibrationFileError::Malformed { line: 1, .. })
        ));
    }
}
