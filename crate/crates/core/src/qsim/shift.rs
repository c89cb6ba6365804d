use std::collections::BTreeMap;

use crate::float::Scalar;
use crate::qsim::observable::expectation;
use crate::qsim::{Circuit, Observable, QsimError, Result};

/// Exact derivative of `<obs>` with respect to the named parameter, by the
/// parameter-shift rule.
///
/// Every gate driven by `symbol` must be an RX/RY/RZ rotation (generator
/// eigenvalues +-1/2). For each driven gate the rule evaluates the circuit
/// with that single gate's angle shifted by +-pi/2 and takes half the
/// difference; the chain rule through `angle = value * scale` contributes the
/// scale factor.
pub fn parameter_shift_grad<T: Scalar>(
    circuit: &Circuit<T>,
    bindings: &BTreeMap<String, T>,
    obs: &Observable<T>,
    symbol: &str,
) -> Result<T> {
    let binds = circuit
        .bindings_of(symbol)
        .ok_or_else(|| QsimError::UnboundParameter(symbol.to_string()))?;
    if !bindings.contains_key(symbol) {
        return Err(QsimError::UnboundParameter(symbol.to_string()));
    }
    for b in binds {
        if !circuit.gates()[b.gate_index].kind().is_rotation() {
            return Err(QsimError::UnsupportedGradient {
                symbol: symbol.to_string(),
                gate_index: b.gate_index,
            });
        }
    }

    let half_pi = T::FRAC_PI_2();
    let two = T::from_f64(2.0);
    let mut grad = T::zero();
    for b in binds {
        let plus = expectation(
            &circuit.run_with_gate_shift(bindings, b.gate_index, half_pi)?,
            obs,
        )?;
        let minus = expectation(
            &circuit.run_with_gate_shift(bindings, b.gate_index, -half_pi)?,
            obs,
        )?;
        grad = grad + b.scale * (plus - minus) / two;
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{Gate, Observable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn rx_circuit() -> Circuit<f64> {
        let mut c = Circuit::new(1);
        let idx = c.push(Gate::rx(0, 0.0)).unwrap();
        c.bind("theta", idx, 1.0).unwrap();
        c
    }

    fn bind(theta: f64) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        m.insert("theta".to_string(), theta);
        m
    }

    #[test]
    fn rx_gradient_at_zero_vanishes() {
        // <Z> = cos(theta); derivative at 0 is 0
        let c = rx_circuit();
        let g = parameter_shift_grad(&c, &bind(0.0), &Observable::single(1.0, "Z"), "theta")
            .unwrap();
        assert!(g.abs() < 1e-12);
    }

    #[test]
    fn rx_gradient_at_half_pi_is_minus_one() {
        let c = rx_circuit();
        let g = parameter_shift_grad(
            &c,
            &bind(FRAC_PI_2),
            &Observable::single(1.0, "Z"),
            "theta",
        )
        .unwrap();
        assert!((g + 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_rotation_binding_is_unsupported() {
        let mut c = Circuit::new(1);
        let idx = c.push(Gate::h(0)).unwrap();
        c.bind("theta", idx, 1.0).unwrap();
        assert!(matches!(
            parameter_shift_grad(&c, &bind(0.1), &Observable::single(1.0, "Z"), "theta"),
            Err(QsimError::UnsupportedGradient { gate_index: 0, .. })
        ));
    }

    #[test]
    fn unknown_symbol_is_unbound() {
        let c = rx_circuit();
        assert!(matches!(
            parameter_shift_grad(&c, &bind(0.1), &Observable::single(1.0, "Z"), "phi"),
            Err(QsimError::UnboundParameter(s)) if s == "phi"
        ));
    }

    #[test]
    fn random_two_qubit_circuits_match_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let obs_choices = ["ZZ", "ZI", "XY", "YZ"];
        for case in 0..25 {
            let mut c = Circuit::new(2);
            // fixed entangling scaffold with three driven rotations
            c.push(Gate::h(0)).unwrap();
            let i0 = c.push(Gate::rx(0, 0.0)).unwrap();
            c.push(Gate::cx(0, 1)).unwrap();
            let i1 = c.push(Gate::ry(1, 0.0)).unwrap();
            let i2 = c.push(Gate::rz(0, 0.0)).unwrap();
            c.push(Gate::cx(1, 0)).unwrap();
            for (idx, scale) in [(i0, 1.0), (i1, -0.5), (i2, 2.0)] {
                c.bind("theta", idx, scale).unwrap();
            }
            let obs = Observable::single(
                rng.gen_range(-2.0..2.0),
                obs_choices[case % obs_choices.len()],
            );
            let theta: f64 = rng.gen_range(-3.0..3.0);

            let analytic = parameter_shift_grad(&c, &bind(theta), &obs, "theta").unwrap();
            let h = 1e-5;
            let fp = expectation(&c.run(&bind(theta + h)).unwrap(), &obs).unwrap();
            let fm = expectation(&c.run(&bind(theta - h)).unwrap(), &obs).unwrap();
            let numeric = (fp - fm) / (2.0 * h);
            assert!(
                (analytic - numeric).abs() < 1e-6,
                "case {case}: shift {analytic} vs fd {numeric}"
            );
        }
    }
}
