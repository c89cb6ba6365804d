use num_complex::Complex;

use crate::float::Scalar;
use crate::qsim::{Gate, QsimError, Result};

/// Default cap on the number of qubits for dense simulation (2^12 amplitudes).
pub const QUBIT_CAP: usize = 12;

/// Full quantum state of an `n`-qubit register: 2^n complex amplitudes.
///
/// Immutable after construction; gate application returns a new state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

/// |0...0> on `n_qubits` qubits, subject to [`QUBIT_CAP`].
pub fn zero_state<T: Scalar>(n_qubits: usize) -> Result<StateVector<T>> {
    zero_state_with_cap(n_qubits, QUBIT_CAP)
}

/// |0...0> with a caller-chosen cap.
pub fn zero_state_with_cap<T: Scalar>(n_qubits: usize, cap: usize) -> Result<StateVector<T>> {
    if n_qubits == 0 || n_qubits > cap {
        return Err(QsimError::QubitCapExceeded {
            requested: n_qubits,
            cap,
        });
    }
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
    amps[0] = Complex::new(T::one(), T::zero());
    Ok(StateVector { n_qubits, amps })
}

impl<T: Scalar> StateVector<T> {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, p| acc + p)
            .sqrt()
    }

    /// |amplitude|^2 of one basis state.
    pub fn probability(&self, basis_index: usize) -> T {
        self.amps[basis_index].norm_sqr()
    }

    /// Returns G|psi> without mutating `self`.
    pub fn apply_gate(&self, gate: &Gate<T>) -> Result<StateVector<T>> {
        let mut next = self.clone();
        next.apply_gate_in_place(gate)?;
        Ok(next)
    }

    pub(crate) fn apply_gate_in_place(&mut self, gate: &Gate<T>) -> Result<()> {
        gate.validate_for(self.n_qubits)?;
        apply_kernel(&mut self.amps, gate);
        Ok(())
    }
}

/// Direct bit-twiddling gate kernel; bit `q` of an index is qubit `q`.
fn apply_kernel<T: Scalar>(amps: &mut [Complex<T>], gate: &Gate<T>) {
    use crate::qsim::GateKind::*;
    let q = gate.target();
    let step = 1 << q;
    match gate.kind() {
        H => {
            let f = Complex::new(T::from_f64(std::f64::consts::FRAC_1_SQRT_2), T::zero());
            for_pairs(amps, step, |a, b| (f * (a + b), f * (a - b)));
        }
        X => {
            for_pairs(amps, step, |a, b| (b, a));
        }
        Y => {
            let i = Complex::new(T::zero(), T::one());
            for_pairs(amps, step, |a, b| (-i * b, i * a));
        }
        Z => {
            for (idx, amp) in amps.iter_mut().enumerate() {
                if (idx >> q) & 1 == 1 {
                    *amp = -*amp;
                }
            }
        }
        Rx => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            let c = Complex::new(half.cos(), T::zero());
            let ms = Complex::new(T::zero(), -half.sin());
            for_pairs(amps, step, |a, b| (c * a + ms * b, ms * a + c * b));
        }
        Ry => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            let (c, s) = (half.cos(), half.sin());
            for_pairs(amps, step, |a, b| {
                (a.scale(c) - b.scale(s), a.scale(s) + b.scale(c))
            });
        }
        Rz => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            let e_neg = Complex::from_polar(T::one(), -half);
            let e_pos = Complex::from_polar(T::one(), half);
            for (idx, amp) in amps.iter_mut().enumerate() {
                *amp = if (idx >> q) & 1 == 0 {
                    e_neg * *amp
                } else {
                    e_pos * *amp
                };
            }
        }
        Cx => {
            let c = gate.control().unwrap();
            for idx in 0..amps.len() {
                if (idx >> c) & 1 == 1 && (idx >> q) & 1 == 0 {
                    amps.swap(idx, idx ^ step);
                }
            }
        }
    }
}

/// Visits every (target-bit-0, target-bit-1) amplitude pair once.
fn for_pairs<T: Scalar>(
    amps: &mut [Complex<T>],
    step: usize,
    f: impl Fn(Complex<T>, Complex<T>) -> (Complex<T>, Complex<T>),
) {
    for base in (0..amps.len()).step_by(2 * step) {
        for offset in 0..step {
            let lo = base + offset;
            let hi = lo + step;
            let (a, b) = (amps[lo], amps[hi]);
            let (na, nb) = f(a, b);
            amps[lo] = na;
            amps[hi] = nb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::Gate;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn assert_close(a: Complex<f64>, re: f64, im: f64) {
        assert!(
            (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12,
            "amplitude {a} != {re}+{im}i"
        );
    }

    #[test]
    fn zero_state_is_basis_zero() {
        let s = zero_state::<f64>(1).unwrap();
        assert_close(s.amps()[0], 1.0, 0.0);
        assert_close(s.amps()[1], 0.0, 0.0);

        let s = zero_state::<f64>(2).unwrap();
        assert_eq!(s.amps().len(), 4);
        assert_close(s.amps()[0], 1.0, 0.0);
        for &a in &s.amps()[1..] {
            assert_close(a, 0.0, 0.0);
        }
    }

    #[test]
    fn zero_state_respects_cap() {
        assert!(matches!(
            zero_state::<f64>(13),
            Err(QsimError::QubitCapExceeded {
                requested: 13,
                cap: 12
            })
        ));
        assert!(zero_state::<f64>(0).is_err());
        assert!(zero_state_with_cap::<f64>(13, 14).is_ok());
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let s = zero_state::<f64>(1).unwrap().apply_gate(&Gate::h(0)).unwrap();
        assert_close(s.amps()[0], FRAC_1_SQRT_2, 0.0);
        assert_close(s.amps()[1], FRAC_1_SQRT_2, 0.0);
    }

    #[test]
    fn rx_pi_is_minus_i_x() {
        let s = zero_state::<f64>(1)
            .unwrap()
            .apply_gate(&Gate::rx(0, PI))
            .unwrap();
        assert_close(s.amps()[0], 0.0, 0.0);
        assert_close(s.amps()[1], 0.0, -1.0);
    }

    #[test]
    fn cx_truth_table() {
        // |10> in char-k-is-qubit-k notation: qubit 0 set -> index 1.
        let s = zero_state::<f64>(2).unwrap().apply_gate(&Gate::x(0)).unwrap();
        let s = s.apply_gate(&Gate::cx(0, 1)).unwrap();
        assert_close(s.amps()[3], 1.0, 0.0);
        // control clear leaves the target alone
        let s = zero_state::<f64>(2).unwrap().apply_gate(&Gate::cx(0, 1)).unwrap();
        assert_close(s.amps()[0], 1.0, 0.0);
    }

    #[test]
    fn invalid_qubit_is_an_error() {
        let s = zero_state::<f64>(1).unwrap();
        assert!(matches!(
            s.apply_gate(&Gate::x(1)),
            Err(QsimError::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn gates_preserve_norm() {
        let mut s = zero_state::<f64>(3).unwrap();
        for g in [
            Gate::h(0),
            Gate::rx(1, 0.37),
            Gate::cx(0, 2),
            Gate::ry(2, -1.2),
            Gate::rz(1, 2.6),
            Gate::y(0),
            Gate::z(2),
            Gate::x(1),
        ] {
            s = s.apply_gate(&g).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn unitarity_round_trip_restores_state() {
        let start = zero_state::<f64>(2)
            .unwrap()
            .apply_gate(&Gate::h(0))
            .unwrap()
            .apply_gate(&Gate::ry(1, 0.83))
            .unwrap();
        let cases = [
            (Gate::rx(0, 1.1), Gate::rx(0, -1.1)),
            (Gate::rz(1, -0.4), Gate::rz(1, 0.4)),
            (Gate::h(1), Gate::h(1)),
            (Gate::cx(1, 0), Gate::cx(1, 0)),
        ];
        for (fwd, inv) in cases {
            let round = start
                .apply_gate(&fwd)
                .unwrap()
                .apply_gate(&inv)
                .unwrap();
            for (a, b) in round.amps().iter().zip(start.amps()) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn kernels_work_in_f32_too() {
        let s = zero_state::<f32>(1).unwrap().apply_gate(&Gate::h(0)).unwrap();
        assert!((s.amps()[0].re - std::f32::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        assert!((s.norm() - 1.0).abs() < 1e-6);
    }
}
