//! Brute-force dense unitary of a whole circuit, built from Kronecker
//! products and plain matrix multiplication. Deliberately shares nothing with
//! the bit-twiddling kernels in `state.rs`: this is the oracle the fast path
//! is tested against, so the two routes must stay independent.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::float::Scalar;
use crate::qsim::{Circuit, Gate, GateKind, QsimError, Result};

/// Upper qubit bound for the oracle (8x8 matrices at most).
pub const DENSE_QUBIT_CAP: usize = 3;

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            entries: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    fn from_rows(rows: &[&[Complex<T>]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            m.entries[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn matmul(&self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                for j in 0..self.dim {
                    out.entries[i * self.dim + j] =
                        out.entries[i * self.dim + j] + a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (o, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = *o + *r;
        }
        out
    }

    /// Kronecker product with `rhs` indexing the low bits: row index of the
    /// result is `i_self * rhs.dim + i_rhs`.
    pub fn kron(&self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        let dim = self.dim * rhs.dim;
        let mut out = Self::zeros(dim);
        for ia in 0..self.dim {
            for ja in 0..self.dim {
                let a = self.get(ia, ja);
                for ib in 0..rhs.dim {
                    for jb in 0..rhs.dim {
                        out.entries[(ia * rhs.dim + ib) * dim + (ja * rhs.dim + jb)] =
                            a * rhs.get(ib, jb);
                    }
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> DenseMatrix<T> {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[j * self.dim + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// max_ij |(U†U - I)_ij|, a unitarity defect measure.
    pub fn unitarity_defect(&self) -> T {
        let product = self.conj_transpose().matmul(self);
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = if i == j { T::one() } else { T::zero() };
                let d = (product.get(i, j) - Complex::new(expected, T::zero())).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn apply_to(&self, vector: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(vector.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                    acc + self.get(i, j) * vector[j]
                })
            })
            .collect()
    }
}

fn single_qubit_matrix<T: Scalar>(gate: &Gate<T>) -> DenseMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    match gate.kind() {
        GateKind::H => {
            let f = Complex::new(T::from_f64(std::f64::consts::FRAC_1_SQRT_2), T::zero());
            DenseMatrix::from_rows(&[&[f, f], &[f, -f]])
        }
        GateKind::X => DenseMatrix::from_rows(&[&[zero, one], &[one, zero]]),
        GateKind::Y => DenseMatrix::from_rows(&[&[zero, -i], &[i, zero]]),
        GateKind::Z => DenseMatrix::from_rows(&[&[one, zero], &[zero, -one]]),
        GateKind::Rx => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            let c = Complex::new(half.cos(), T::zero());
            let ms = Complex::new(T::zero(), -half.sin());
            DenseMatrix::from_rows(&[&[c, ms], &[ms, c]])
        }
        GateKind::Ry => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            let c = Complex::new(half.cos(), T::zero());
            let s = Complex::new(half.sin(), T::zero());
            DenseMatrix::from_rows(&[&[c, -s], &[s, c]])
        }
        GateKind::Rz => {
            let half = gate.angle().unwrap() / T::from_f64(2.0);
            DenseMatrix::from_rows(&[
                &[Complex::from_polar(T::one(), -half), zero],
                &[zero, Complex::from_polar(T::one(), half)],
            ])
        }
        GateKind::Cx => unreachable!("CX handled separately"),
    }
}

/// Embeds a 2x2 matrix on qubit `q` of an `n`-qubit register
/// (`I (x) ... (x) M (x) ... (x) I`, low bits rightmost).
fn embed_single<T: Scalar>(m: &DenseMatrix<T>, q: usize, n_qubits: usize) -> DenseMatrix<T> {
    let mut full = DenseMatrix::identity(1);
    for k in 0..n_qubits {
        full = if k == q {
            m.kron(&full)
        } else {
            DenseMatrix::identity(2).kron(&full)
        };
    }
    full
}

fn gate_unitary<T: Scalar>(gate: &Gate<T>, n_qubits: usize) -> DenseMatrix<T> {
    if gate.kind() == GateKind::Cx {
        // CX = P0(control) + P1(control) * X(target)
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let p0 = DenseMatrix::from_rows(&[&[one, zero], &[zero, zero]]);
        let p1 = DenseMatrix::from_rows(&[&[zero, zero], &[zero, one]]);
        let x = DenseMatrix::from_rows(&[&[zero, one], &[one, zero]]);
        let control = gate.control().unwrap();
        embed_single(&p0, control, n_qubits).add(
            &embed_single(&p1, control, n_qubits)
                .matmul(&embed_single(&x, gate.target(), n_qubits)),
        )
    } else {
        embed_single(&single_qubit_matrix(gate), gate.target(), n_qubits)
    }
}

/// Full circuit unitary with bound angles resolved. Capped at
/// [`DENSE_QUBIT_CAP`] qubits.
pub fn dense_unitary<T: Scalar>(
    circuit: &Circuit<T>,
    bindings: &BTreeMap<String, T>,
) -> Result<DenseMatrix<T>> {
    if circuit.n_qubits() > DENSE_QUBIT_CAP {
        return Err(QsimError::QubitCapExceeded {
            requested: circuit.n_qubits(),
            cap: DENSE_QUBIT_CAP,
        });
    }
    let resolved = circuit.resolved_gates(bindings)?;
    let mut unitary = DenseMatrix::identity(1 << circuit.n_qubits());
    for gate in &resolved {
        unitary = gate_unitary(gate, circuit.n_qubits()).matmul(&unitary);
    }
    Ok(unitary)
}
