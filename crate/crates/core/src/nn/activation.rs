use crate::float::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActivationKind {
    Relu,
    Tanh,
}

impl ActivationKind {
    pub fn apply<T: Scalar>(self, v: T) -> T {
        match self {
            ActivationKind::Relu => {
                if v > T::zero() {
                    v
                } else {
                    T::zero()
                }
            }
            ActivationKind::Tanh => v.tanh(),
        }
    }

    /// Derivative expressed through the pre-activation input.
    pub fn derivative<T: Scalar>(self, pre: T) -> T {
        match self {
            ActivationKind::Relu => {
                if pre > T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            ActivationKind::Tanh => {
                let t = pre.tanh();
                T::one() - t * t
            }
        }
    }

    pub fn forward_slice<T: Scalar>(self, values: &[T]) -> Vec<T> {
        values.iter().map(|&v| self.apply(v)).collect()
    }

    /// `upstream * derivative(pre)`, elementwise.
    pub fn backward_slice<T: Scalar>(self, pre: &[T], upstream: &[T]) -> Vec<T> {
        debug_assert_eq!(pre.len(), upstream.len());
        pre.iter()
            .zip(upstream)
            .map(|(&p, &g)| g * self.derivative(p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relu_zeroes_negative_inputs_and_their_gradients() {
        let pre = [-2.0, -0.5, 0.0, 0.5, 2.0];
        let out = ActivationKind::Relu.forward_slice(&pre);
        assert_eq!(out, vec![0.0, 0.0, 0.0, 0.5, 2.0]);
        let grad = ActivationKind::Relu.backward_slice(&pre, &[1.0; 5]);
        assert_eq!(grad, vec![0.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn tanh_derivative_matches_finite_difference() {
        let h = 1e-6;
        for &v in &[-1.3f64, -0.2, 0.0, 0.9, 2.4] {
            let analytic = ActivationKind::Tanh.derivative(v);
            let numeric = (ActivationKind::Tanh.apply(v + h) - ActivationKind::Tanh.apply(v - h))
                / (2.0 * h);
            assert!((analytic - numeric).abs() < 1e-8);
        }
    }
}
