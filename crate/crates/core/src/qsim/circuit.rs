use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::float::Scalar;
use crate::qsim::{zero_state, Gate, QsimError, Result, StateVector};

/// A named parameter driving one gate angle: `angle = value * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBinding<T> {
    pub gate_index: usize,
    pub scale: T,
}

/// Ordered gate list plus a symbol table. One symbol may drive several gate
/// angles, each with its own scale factor.
#[derive(Debug, Clone)]
pub struct Circuit<T: Scalar> {
    n_qubits: usize,
    gates: Vec<Gate<T>>,
    params: BTreeMap<String, Vec<ParamBinding<T>>>,
}

impl<T: Scalar> Circuit<T> {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.params.keys().map(String::as_str)
    }

    pub fn bindings_of(&self, symbol: &str) -> Option<&[ParamBinding<T>]> {
        self.params.get(symbol).map(Vec::as_slice)
    }

    /// Appends a gate and returns its index.
    pub fn push(&mut self, gate: Gate<T>) -> Result<usize> {
        gate.validate_for(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self.gates.len() - 1)
    }

    /// Registers `symbol` as driving the angle of `gates[gate_index]` with the
    /// given scale factor. Whether the gate can actually accept an angle is
    /// checked when the circuit is run or differentiated.
    pub fn bind(&mut self, symbol: &str, gate_index: usize, scale: T) -> Result<()> {
        if gate_index >= self.gates.len() {
            return Err(QsimError::GateOutOfRange {
                index: gate_index,
                len: self.gates.len(),
            });
        }
        self.params
            .entry(symbol.to_string())
            .or_default()
            .push(ParamBinding { gate_index, scale });
        Ok(())
    }

    /// Applies all gates in order to |0...0>, resolving bound angles from
    /// `bindings` (`angle = value * scale`).
    pub fn run(&self, bindings: &BTreeMap<String, T>) -> Result<StateVector<T>> {
        let resolved = self.resolved_gates(bindings)?;
        let mut state = zero_state(self.n_qubits)?;
        for gate in &resolved {
            state.apply_gate_in_place(gate)?;
        }
        Ok(state)
    }

    /// Like [`run`](Self::run) but with an extra angle offset on one gate;
    /// this is the evaluation primitive behind the parameter-shift rule.
    pub(crate) fn run_with_gate_shift(
        &self,
        bindings: &BTreeMap<String, T>,
        gate_index: usize,
        delta: T,
    ) -> Result<StateVector<T>> {
        let mut resolved = self.resolved_gates(bindings)?;
        let gate = &resolved[gate_index];
        resolved[gate_index] = gate.with_angle(gate.angle().unwrap() + delta);
        let mut state = zero_state(self.n_qubits)?;
        for gate in &resolved {
            state.apply_gate_in_place(gate)?;
        }
        Ok(state)
    }

    /// Gate list with every bound angle substituted.
    pub(crate) fn resolved_gates(&self, bindings: &BTreeMap<String, T>) -> Result<Vec<Gate<T>>> {
        let mut gates = self.gates.clone();
        for (symbol, binds) in &self.params {
            let value = *bindings
                .get(symbol)
                .ok_or_else(|| QsimError::UnboundParameter(symbol.clone()))?;
            for b in binds {
                let gate = &gates[b.gate_index];
                if !gate.kind().is_rotation() {
                    return Err(QsimError::NonRotationBinding {
                        symbol: symbol.clone(),
                        gate_index: b.gate_index,
                    });
                }
                gates[b.gate_index] = gate.with_angle(value * b.scale);
            }
        }
        Ok(gates)
    }

    /// One-gate-per-line text diagram with resolved angles.
    pub fn render(&self, bindings: &BTreeMap<String, T>) -> Result<String> {
        let resolved = self.resolved_gates(bindings)?;
        let mut out = String::new();
        for gate in &resolved {
            writeln!(out, "{gate}").expect("string write");
        }
        Ok(out)
    }
}
