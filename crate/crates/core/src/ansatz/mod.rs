//! The 2-qubit QAOA-style quantum output layer.
//!
//! The circuit alternates a cost block and a mixer block on top of a uniform
//! superposition. The cost block accumulates theta-dependent phase with
//! exactly RZ and CX gates (`RZ(2*gamma*theta)` on each qubit, then a
//! CX-conjugated `RZ(2*gamma*theta)` realizing the ZZ coupling); the mixer
//! block is `RX(2*beta)` on every qubit, the exponential of the sum-of-X
//! mixer Hamiltonian. The observable is the all-Z parity word, and the layer
//! output maps its expectation `e` to a class-1 probability `(1 - e) / 2`.
//!
//! `gamma`/`beta` are frozen hyperparameters fixed by a grid calibration
//! against a reference expectation (see [`calibrate_gamma_beta`]); only
//! `theta`, supplied by the classical trunk, is differentiated.

mod calibration;

pub use calibration::{read_calibration_file, write_calibration_file, Calibration};

use std::collections::BTreeMap;

use crate::float::Scalar;
use crate::qsim::{
    expectation, parameter_shift_grad, Circuit, Gate, Observable, Result,
};

/// Symbol under which theta is registered in the built circuit.
pub const THETA: &str = "theta";

/// Calibrated hyperparameters of the default 2-qubit, depth-1 ansatz:
/// the 256-step grid point whose expectation at theta_ref = pi/4 is closest
/// to the -0.124 reference value (achieved -0.1239967). These are grid nodes
/// `i * pi / 255`, reproducible with `calibrate_gamma_beta(-0.124, pi/4, 256)`.
pub const CALIBRATED_GAMMA: f64 = std::f64::consts::PI * 103.0 / 255.0;
pub const CALIBRATED_BETA: f64 = std::f64::consts::PI * 137.0 / 255.0;

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzConfig<T> {
    pub n_qubits: usize,
    /// Number of cost+mixer layers (the QAOA depth p).
    pub depth: usize,
    /// One gamma per layer.
    pub gammas: Vec<T>,
    /// One beta per layer.
    pub betas: Vec<T>,
}

impl<T: Scalar> AnsatzConfig<T> {
    pub fn new(n_qubits: usize, gammas: Vec<T>, betas: Vec<T>) -> Self {
        let depth = gammas.len();
        AnsatzConfig {
            n_qubits,
            depth,
            gammas,
            betas,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.n_qubits == 0 {
            return Err("ansatz needs at least one qubit".into());
        }
        if self.depth == 0 {
            return Err("ansatz depth must be at least 1".into());
        }
        if self.gammas.len() != self.depth || self.betas.len() != self.depth {
            return Err(format!(
                "depth {} needs exactly that many gammas ({}) and betas ({})",
                self.depth,
                self.gammas.len(),
                self.betas.len()
            ));
        }
        if !self
            .gammas
            .iter()
            .chain(self.betas.iter())
            .all(|v| v.is_finite())
        {
            return Err("gamma/beta values must be finite".into());
        }
        Ok(())
    }
}

impl<T: Scalar> Default for AnsatzConfig<T> {
    fn default() -> Self {
        AnsatzConfig::new(
            2,
            vec![T::from_f64(CALIBRATED_GAMMA)],
            vec![T::from_f64(CALIBRATED_BETA)],
        )
    }
}

/// The measured cost observable; defaults to the all-Z parity word.
#[derive(Debug, Clone, PartialEq)]
pub struct CostHamiltonian<T> {
    pub observable: Observable<T>,
}

impl<T: Scalar> CostHamiltonian<T> {
    pub fn zz(n_qubits: usize) -> Self {
        CostHamiltonian {
            observable: Observable::zz_parity(n_qubits),
        }
    }
}

/// One evaluation of the quantum layer at a given theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumLayerOutput<T> {
    /// `<H_C>` in [-1, 1] for the default parity observable.
    pub expectation: T,
    /// Class-1 probability `(1 - expectation) / 2`.
    pub probability: T,
    /// `d expectation / d theta` by the parameter-shift rule.
    pub grad_theta: T,
}

/// Builds the parameterized circuit: H on every qubit, then per layer the
/// cost block `RZ(2 g theta) each qubit; CX(0,1); RZ(2 g theta) q1; CX(0,1)`
/// and the mixer block `RX(2 b) each qubit`. Theta is registered as a named
/// parameter driving every cost-block RZ with scale `2 g`.
pub fn build_ansatz<T: Scalar>(theta: T, config: &AnsatzConfig<T>) -> Circuit<T> {
    debug_assert!(config.validate().is_ok());
    let two = T::from_f64(2.0);
    let n = config.n_qubits;
    let mut circuit = Circuit::new(n);
    let push = |c: &mut Circuit<T>, g: Gate<T>| c.push(g).expect("qubit indices are in range");

    for q in 0..n {
        push(&mut circuit, Gate::h(q));
    }
    for layer in 0..config.depth {
        let gamma = config.gammas[layer];
        let beta = config.betas[layer];
        let scale = two * gamma;
        let angle = scale * theta;

        let mut driven = Vec::new();
        for q in 0..n {
            driven.push(push(&mut circuit, Gate::rz(q, angle)));
        }
        if n >= 2 {
            push(&mut circuit, Gate::cx(0, 1));
            driven.push(push(&mut circuit, Gate::rz(1, angle)));
            push(&mut circuit, Gate::cx(0, 1));
        }
        for q in 0..n {
            push(&mut circuit, Gate::rx(q, two * beta));
        }

        for idx in driven {
            circuit.bind(THETA, idx, scale).expect("index just pushed");
        }
    }
    circuit
}

fn theta_bindings<T: Scalar>(theta: T) -> BTreeMap<String, T> {
    let mut bindings = BTreeMap::new();
    bindings.insert(THETA.to_string(), theta);
    bindings
}

/// Maps a cost expectation to a class-1 probability. Affine, orientation
/// such that lower cost means higher probability.
pub fn probability_from_expectation<T: Scalar>(e: T) -> T {
    (T::one() - e) / T::from_f64(2.0)
}

/// Exact statevector forward pass of the quantum layer.
pub fn quantum_forward<T: Scalar>(
    theta: T,
    config: &AnsatzConfig<T>,
    hc: &CostHamiltonian<T>,
) -> Result<QuantumLayerOutput<T>> {
    let circuit = build_ansatz(theta, config);
    let bindings = theta_bindings(theta);
    let state = circuit.run(&bindings)?;
    let e = expectation(&state, &hc.observable)?;
    let grad = parameter_shift_grad(&circuit, &bindings, &hc.observable, THETA)?;
    Ok(QuantumLayerOutput {
        expectation: e,
        probability: probability_from_expectation(e),
        grad_theta: grad,
    })
}

/// `d <H_C> / d theta`, summed over every theta-driven rotation.
pub fn quantum_backward<T: Scalar>(
    theta: T,
    config: &AnsatzConfig<T>,
    hc: &CostHamiltonian<T>,
) -> Result<T> {
    let circuit = build_ansatz(theta, config);
    parameter_shift_grad(&circuit, &theta_bindings(theta), &hc.observable, THETA)
}

/// Grid-searches `(gamma, beta)` over `[0, pi]^2` at depth 1 for the pair
/// whose expectation at `theta` lands closest to `target`.
///
/// The grid has `grid_steps` nodes per axis including both endpoints, scanned
/// row-major (gamma outer, beta inner); ties keep the first point found.
pub fn calibrate_gamma_beta<T: Scalar>(
    target: T,
    theta: T,
    grid_steps: usize,
) -> Result<Calibration<T>> {
    assert!(grid_steps >= 8, "grid_steps must be at least 8");
    let hc = CostHamiltonian::zz(2);
    let denom = T::from_f64((grid_steps - 1) as f64);

    let mut best: Option<Calibration<T>> = None;
    let mut best_residual = T::infinity();
    for i in 0..grid_steps {
        let gamma = T::PI() * T::from_f64(i as f64) / denom;
        for j in 0..grid_steps {
            let beta = T::PI() * T::from_f64(j as f64) / denom;
            let config = AnsatzConfig::new(2, vec![gamma], vec![beta]);
            let out = quantum_forward(theta, &config, &hc)?;
            let residual = (out.expectation - target).abs();
            if residual < best_residual {
                best_residual = residual;
                best = Some(Calibration {
                    gamma,
                    beta,
                    achieved_expectation: out.expectation,
                    theta_ref: theta,
                });
            }
        }
    }
    Ok(best.expect("grid has at least one point"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn zz() -> CostHamiltonian<f64> {
        CostHamiltonian::zz(2)
    }

    /// Closed form of the depth-1 expectation, derived independently by
    /// Heisenberg-evolving the parity observable through the mixer:
    /// `f = sin(4 b) sin(4 g t) / 2 + sin^2(2 b) sin^2(2 g t)`.
    fn closed_form(theta: f64, gamma: f64, beta: f64) -> f64 {
        0.5 * (4.0 * beta).sin() * (4.0 * gamma * theta).sin()
            + (2.0 * beta).sin().powi(2) * (2.0 * gamma * theta).sin().powi(2)
    }

    #[test]
    fn default_depth_one_circuit_has_nine_gates() {
        let config = AnsatzConfig::<f64>::default();
        let circuit = build_ansatz(0.3, &config);
        assert_eq!(circuit.gates().len(), 9);
        // theta drives the three RZ gates
        assert_eq!(circuit.bindings_of(THETA).unwrap().len(), 3);
    }

    #[test]
    fn theta_zero_gives_zero_parity() {
        let config = AnsatzConfig::new(2, vec![0.9], vec![0.4]);
        let out = quantum_forward(0.0, &config, &zz()).unwrap();
        assert!(out.expectation.abs() < 1e-12);
    }

    #[test]
    fn zero_gamma_zero_beta_is_bare_plus_state() {
        let config = AnsatzConfig::new(2, vec![0.0], vec![0.0]);
        let out = quantum_forward(1.7, &config, &zz()).unwrap();
        assert!(out.expectation.abs() < 1e-12);
    }

    #[test]
    fn zero_gamma_is_null_for_any_theta_beta_and_depth() {
        for (theta, beta) in [(0.3, 0.5), (-2.0, 2.9), (11.0, 0.01)] {
            let config = AnsatzConfig::new(2, vec![0.0], vec![beta]);
            let out = quantum_forward(theta, &config, &zz()).unwrap();
            assert!(out.expectation.abs() < 1e-12);
            assert!((out.probability - 0.5).abs() < 1e-12);
            assert!(out.grad_theta.abs() < 1e-12);
        }
        let config = AnsatzConfig::new(2, vec![0.0, 0.0], vec![0.3, 0.8]);
        let out = quantum_forward(0.9, &config, &zz()).unwrap();
        assert!(out.expectation.abs() < 1e-12);
    }

    #[test]
    fn forward_matches_independent_closed_form() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let theta = rng.gen_range(-3.0..3.0);
            let gamma = rng.gen_range(0.0..PI);
            let beta = rng.gen_range(0.0..PI);
            let config = AnsatzConfig::new(2, vec![gamma], vec![beta]);
            let out = quantum_forward(theta, &config, &zz()).unwrap();
            let reference = closed_form(theta, gamma, beta);
            assert!(
                (out.expectation - reference).abs() < 1e-12,
                "sim {} vs closed form {}",
                out.expectation,
                reference
            );
        }
    }

    #[test]
    fn expectation_stays_in_unit_interval() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let config = AnsatzConfig::new(
                2,
                vec![rng.gen_range(0.0..PI)],
                vec![rng.gen_range(0.0..PI)],
            );
            let out = quantum_forward(rng.gen_range(-6.0..6.0), &config, &zz()).unwrap();
            assert!(out.expectation >= -1.0 - 1e-12 && out.expectation <= 1.0 + 1e-12);
            assert!(out.probability >= -1e-12 && out.probability <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn period_is_pi_when_gamma_is_one() {
        let config = AnsatzConfig::new(2, vec![1.0], vec![0.4]);
        for k in 0..16 {
            let theta = -2.0 + 0.3 * k as f64;
            let a = quantum_forward(theta, &config, &zz()).unwrap().expectation;
            let b = quantum_forward(theta + PI, &config, &zz())
                .unwrap()
                .expectation;
            assert!((a - b).abs() < 1e-9, "f({theta}) != f(theta+pi)");
        }
    }

    #[test]
    fn probability_map_endpoints_and_symmetry() {
        assert_eq!(probability_from_expectation(-1.0), 1.0);
        assert_eq!(probability_from_expectation(1.0), 0.0);
        for k in 0..50 {
            let e = -1.0 + 2.0 * k as f64 / 49.0;
            let p = probability_from_expectation(e);
            let q = probability_from_expectation(-e);
            assert_eq!(p + q, 1.0);
        }
    }

    #[test]
    fn backward_matches_finite_difference() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let h = 1e-5;
        for _ in 0..25 {
            let config = AnsatzConfig::new(
                2,
                vec![rng.gen_range(0.0..PI)],
                vec![rng.gen_range(0.0..PI)],
            );
            let theta = rng.gen_range(-3.0..3.0);
            let analytic = quantum_backward(theta, &config, &zz()).unwrap();
            let fp = quantum_forward(theta + h, &config, &zz()).unwrap().expectation;
            let fm = quantum_forward(theta - h, &config, &zz()).unwrap().expectation;
            let numeric = (fp - fm) / (2.0 * h);
            assert!(
                (analytic - numeric).abs() < 1e-6,
                "shift {analytic} vs fd {numeric}"
            );
        }
        // and at theta = 0 specifically
        let config = AnsatzConfig::<f64>::default();
        let analytic = quantum_backward(0.0, &config, &zz()).unwrap();
        let fp = quantum_forward(h, &config, &zz()).unwrap().expectation;
        let fm = quantum_forward(-h, &config, &zz()).unwrap().expectation;
        assert!((analytic - (fp - fm) / (2.0 * h)).abs() < 1e-6);
    }

    #[test]
    fn default_config_reproduces_reference_expectation() {
        let out = quantum_forward(FRAC_PI_4, &AnsatzConfig::default(), &zz()).unwrap();
        assert!(
            (out.expectation + 0.124).abs() < 0.005,
            "expectation {} not within 0.005 of -0.124",
            out.expectation
        );
    }

    #[test]
    fn calibration_with_zero_target_picks_gamma_zero() {
        let cal = calibrate_gamma_beta(0.0, 1.234, 8).unwrap();
        assert_eq!(cal.gamma, 0.0);
        assert_eq!(cal.achieved_expectation, 0.0);
    }

    #[test]
    fn coarse_grid_refines_into_the_target() {
        // The 8-step winner need not share a basin with the fine-scan winner,
        // but refining around it must still reach the target: the residual of
        // a 64-step scan restricted to the coarse cell stays within 5e-3.
        let target = -0.124;
        let theta = FRAC_PI_4;
        let coarse = calibrate_gamma_beta(target, theta, 8).unwrap();
        let cell = PI / 7.0;
        let hc = zz();
        let mut best = f64::INFINITY;
        for i in 0..64 {
            let g = (coarse.gamma - cell + 2.0 * cell * i as f64 / 63.0).clamp(0.0, PI);
            for j in 0..64 {
                let b = (coarse.beta - cell + 2.0 * cell * j as f64 / 63.0).clamp(0.0, PI);
                let out =
                    quantum_forward(theta, &AnsatzConfig::new(2, vec![g], vec![b]), &hc).unwrap();
                best = best.min((out.expectation - target).abs());
            }
        }
        assert!(best < 5e-3, "refined residual {best}");
    }
}
