use num_complex::Complex;

use crate::float::Scalar;
use crate::qsim::{QsimError, Result, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// A weighted Pauli word: `coeff * P_0 (x) P_1 (x) ... (x) P_{n-1}`, with
/// letter `k` acting on qubit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString<T> {
    coeff: T,
    letters: Vec<Pauli>,
}

impl<T: Scalar> PauliString<T> {
    pub fn new(coeff: T, letters: Vec<Pauli>) -> Self {
        assert!(coeff.is_finite(), "Pauli coefficient must be finite");
        assert!(!letters.is_empty(), "Pauli string must cover at least one qubit");
        PauliString { coeff, letters }
    }

    /// Parses letters from text, e.g. `"ZZ"` or `"XIY"`; character `k` is the
    /// letter on qubit `k`.
    pub fn parse(coeff: T, letters: &str) -> Self {
        let letters = letters
            .chars()
            .map(|c| match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => panic!("unknown Pauli letter {other:?}"),
            })
            .collect();
        Self::new(coeff, letters)
    }

    pub fn coeff(&self) -> T {
        self.coeff
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }
}

/// Weighted sum of Pauli strings. Real coefficients keep it Hermitian, so the
/// expectation in any normalized state is real.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T> {
    terms: Vec<PauliString<T>>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(terms: Vec<PauliString<T>>) -> Self {
        assert!(!terms.is_empty(), "observable needs at least one term");
        let n = terms[0].n_qubits();
        assert!(
            terms.iter().all(|t| t.n_qubits() == n),
            "all terms must cover the same qubits"
        );
        Observable { terms }
    }

    pub fn single(coeff: T, letters: &str) -> Self {
        Self::new(vec![PauliString::parse(coeff, letters)])
    }

    /// The all-Z parity word `Z (x) Z (x) ... (x) Z` with coefficient 1.
    pub fn zz_parity(n_qubits: usize) -> Self {
        Self::new(vec![PauliString::new(T::one(), vec![Pauli::Z; n_qubits])])
    }

    pub fn terms(&self) -> &[PauliString<T>] {
        &self.terms
    }

    pub fn n_qubits(&self) -> usize {
        self.terms[0].n_qubits()
    }
}

/// `<psi|O|psi>`. The imaginary residue is asserted below tolerance and
/// discarded.
pub fn expectation<T: Scalar>(state: &StateVector<T>, obs: &Observable<T>) -> Result<T> {
    if obs.n_qubits() != state.n_qubits() {
        return Err(QsimError::QubitCountMismatch {
            obs_qubits: obs.n_qubits(),
            state_qubits: state.n_qubits(),
        });
    }
    let mut total = Complex::new(T::zero(), T::zero());
    for term in obs.terms() {
        total = total + pauli_term_expectation(state, term);
    }
    if total.im.abs() > T::norm_tol() {
        return Err(QsimError::NonRealExpectation {
            imag: total.im.to_f64(),
        });
    }
    Ok(total.re)
}

/// `coeff * <psi|P|psi>` for one Pauli word, computed from the action
/// `P|i> = phase(i) |i ^ flip_mask>`.
fn pauli_term_expectation<T: Scalar>(
    state: &StateVector<T>,
    term: &PauliString<T>,
) -> Complex<T> {
    let mut flip_mask = 0usize;
    for (q, letter) in term.letters().iter().enumerate() {
        if matches!(letter, Pauli::X | Pauli::Y) {
            flip_mask |= 1 << q;
        }
    }

    let amps = state.amps();
    let mut acc = Complex::new(T::zero(), T::zero());
    for (idx, &amp) in amps.iter().enumerate() {
        let mut phase = Complex::new(T::one(), T::zero());
        for (q, letter) in term.letters().iter().enumerate() {
            let bit = (idx >> q) & 1;
            match letter {
                Pauli::I | Pauli::X => {}
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
                Pauli::Y => {
                    // Y|0> = i|1>, Y|1> = -i|0>
                    phase = if bit == 0 {
                        phase * Complex::new(T::zero(), T::one())
                    } else {
                        phase * Complex::new(T::zero(), -T::one())
                    };
                }
            }
        }
        acc = acc + amps[idx ^ flip_mask].conj() * phase * amp;
    }
    acc.scale(term.coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{zero_state, Gate};

    #[test]
    fn z_on_zero_is_plus_one() {
        let s = zero_state::<f64>(1).unwrap();
        let e = expectation(&s, &Observable::single(1.0, "Z")).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_on_plus_is_zero() {
        let s = zero_state::<f64>(1).unwrap().apply_gate(&Gate::h(0)).unwrap();
        let e = expectation(&s, &Observable::single(1.0, "Z")).unwrap();
        assert!(e.abs() < 1e-12);
    }

    #[test]
    fn zz_on_bell_is_plus_one() {
        let s = zero_state::<f64>(2)
            .unwrap()
            .apply_gate(&Gate::h(0))
            .unwrap()
            .apply_gate(&Gate::cx(0, 1))
            .unwrap();
        let e = expectation(&s, &Observable::zz_parity(2)).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_on_plus_is_plus_one() {
        let s = zero_state::<f64>(1).unwrap().apply_gate(&Gate::h(0)).unwrap();
        let e = expectation(&s, &Observable::single(1.0, "X")).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn y_expectation_on_rx_rotated_state() {
        // RX(t)|0> has <Y> = -sin(t)
        let t = 0.7;
        let s = zero_state::<f64>(1).unwrap().apply_gate(&Gate::rx(0, t)).unwrap();
        let e = expectation(&s, &Observable::single(1.0, "Y")).unwrap();
        assert!((e + t.sin()).abs() < 1e-12);
    }

    #[test]
    fn qubit_count_mismatch_is_an_error() {
        let s = zero_state::<f64>(2).unwrap();
        assert!(matches!(
            expectation(&s, &Observable::single(1.0, "Z")),
            Err(QsimError::QubitCountMismatch { .. })
        ));
    }

    #[test]
    fn multi_term_sum() {
        // <0|(0.5 Z + 2 X)|0> = 0.5
        let s = zero_state::<f64>(1).unwrap();
        let obs = Observable::new(vec![
            PauliString::parse(0.5, "Z"),
            PauliString::parse(2.0, "X"),
        ]);
        let e = expectation(&s, &obs).unwrap();
        assert!((e - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_string_expectation_stays_within_coeff_bound() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let coeff: f64 = rng.gen_range(-3.0..3.0);
            let mut s = zero_state::<f64>(2).unwrap();
            for q in 0..2 {
                s = s.apply_gate(&Gate::ry(q, rng.gen_range(-3.0..3.0))).unwrap();
                s = s.apply_gate(&Gate::rz(q, rng.gen_range(-3.0..3.0))).unwrap();
            }
            s = s.apply_gate(&Gate::cx(0, 1)).unwrap();
            let letters = ["ZZ", "XY", "YI", "XX"][rng.gen_range(0..4)];
            let e = expectation(&s, &Observable::single(coeff, letters)).unwrap();
            assert!(
                e.abs() <= coeff.abs() + 1e-10,
                "expectation {e} outside [-|c|, |c|] for c={coeff}"
            );
        }
    }
}
