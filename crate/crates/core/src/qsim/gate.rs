use std::fmt;

use crate::float::Scalar;
use crate::qsim::{QsimError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    Cx,
}

impl GateKind {
    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Cx => "CX",
        }
    }
}

/// One gate application on named qubits. Angles are radians and only present
/// on RX/RY/RZ; CX carries a control qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate<T: Scalar> {
    kind: GateKind,
    target: usize,
    control: Option<usize>,
    angle: Option<T>,
}

impl<T: Scalar> Gate<T> {
    pub fn h(target: usize) -> Self {
        Self::fixed(GateKind::H, target)
    }

    pub fn x(target: usize) -> Self {
        Self::fixed(GateKind::X, target)
    }

    pub fn y(target: usize) -> Self {
        Self::fixed(GateKind::Y, target)
    }

    pub fn z(target: usize) -> Self {
        Self::fixed(GateKind::Z, target)
    }

    pub fn rx(target: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rx, target, angle)
    }

    pub fn ry(target: usize, angle: T) -> Self {
        Self::rotation(GateKind::Ry, target, angle)
    }

    pub fn rz(target: usize, angle: T) -> Self {
        Self::rotation(GateKind::Rz, target, angle)
    }

    pub fn cx(control: usize, target: usize) -> Self {
        assert!(control != target, "CX control equals target");
        Gate {
            kind: GateKind::Cx,
            target,
            control: Some(control),
            angle: None,
        }
    }

    fn fixed(kind: GateKind, target: usize) -> Self {
        Gate {
            kind,
            target,
            control: None,
            angle: None,
        }
    }

    fn rotation(kind: GateKind, target: usize, angle: T) -> Self {
        assert!(angle.is_finite(), "rotation angle must be finite");
        Gate {
            kind,
            target,
            control: None,
            angle: Some(angle),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn control(&self) -> Option<usize> {
        self.control
    }

    pub fn angle(&self) -> Option<T> {
        self.angle
    }

    /// Same gate with a different angle; panics on non-rotation gates.
    pub(crate) fn with_angle(&self, angle: T) -> Self {
        assert!(self.kind.is_rotation());
        Self::rotation(self.kind, self.target, angle)
    }

    pub(crate) fn validate_for(&self, n_qubits: usize) -> Result<()> {
        if self.target >= n_qubits {
            return Err(QsimError::QubitOutOfRange {
                qubit: self.target,
                n_qubits,
            });
        }
        if let Some(c) = self.control {
            if c >= n_qubits {
                return Err(QsimError::QubitOutOfRange { qubit: c, n_qubits });
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.control, self.angle) {
            (Some(c), _) => write!(f, "{:<10} q{} -> q{}", self.kind.name(), c, self.target),
            (None, Some(a)) => write!(
                f,
                "{:<10} q{}",
                format!("{}({:.4})", self.kind.name(), a.to_f64()),
                self.target
            ),
            (None, None) => write!(f, "{:<10} q{}", self.kind.name(), self.target),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_one_line_per_gate() {
        assert_eq!(Gate::<f64>::h(0).to_string(), "H          q0");
        assert_eq!(Gate::rz(1, 0.0).to_string(), "RZ(0.0000) q1");
        assert_eq!(Gate::<f64>::cx(0, 1).to_string(), "CX         q0 -> q1");
    }

    #[test]
    #[should_panic(expected = "control equals target")]
    fn cx_rejects_equal_qubits() {
        let _ = Gate::<f64>::cx(1, 1);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn rotation_rejects_nan() {
        let _ = Gate::rx(0, f64::NAN);
    }
}
