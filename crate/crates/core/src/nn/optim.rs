use crate::float::Scalar;
use crate::nn::Tensor;

/// Momentum SGD: `v <- momentum * v + g`, `p <- p - lr * v`.
///
/// Velocities are keyed by parameter order, so the same parameter list must
/// be passed on every step.
#[derive(Debug, Clone)]
pub struct Sgd<T> {
    pub lr: T,
    pub momentum: T,
    velocities: Vec<Vec<T>>,
}

impl<T: Scalar> Sgd<T> {
    pub fn new(lr: T, momentum: T) -> Self {
        assert!(lr > T::zero(), "learning rate must be positive");
        Sgd {
            lr,
            momentum,
            velocities: Vec::new(),
        }
    }

    pub fn step(&mut self, params: &mut [&mut Tensor<T>]) {
        if self.velocities.is_empty() {
            self.velocities = params.iter().map(|p| vec![T::zero(); p.len()]).collect();
        }
        assert_eq!(self.velocities.len(), params.len(), "parameter list changed");
        for (param, velocity) in params.iter_mut().zip(&mut self.velocities) {
            let lr = self.lr;
            let momentum = self.momentum;
            let has_grad = param.grad().is_some();
            if !has_grad {
                continue;
            }
            let grad = param.grad().unwrap().to_vec();
            for ((p, v), g) in param
                .values_mut()
                .iter_mut()
                .zip(velocity.iter_mut())
                .zip(grad)
            {
                *v = momentum * *v + g;
                *p = *p - lr * *v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(v: f64) -> Tensor<f64> {
        Tensor::from_values(&[1], vec![v]).unwrap()
    }

    #[test]
    fn plain_step_without_momentum() {
        let mut p = single(1.0);
        p.accumulate_grad(&[1.0]);
        let mut sgd = Sgd::new(0.1, 0.0);
        sgd.step(&mut [&mut p]);
        assert!((p.values()[0] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn zero_grad_and_zero_velocity_leave_params_alone() {
        let mut p = single(2.5);
        p.grad_mut(); // allocated, all zero
        let mut sgd = Sgd::new(0.1, 0.9);
        sgd.step(&mut [&mut p]);
        assert_eq!(p.values()[0], 2.5);
    }

    #[test]
    fn momentum_sequence_matches_hand_computation() {
        // lr=0.1, momentum=0.9, g=1 each step starting from p=1:
        // v1=1, p1=0.9; v2=1.9, p2=0.71
        let mut p = single(1.0);
        let mut sgd = Sgd::new(0.1, 0.9);
        p.zero_grad();
        p.accumulate_grad(&[1.0]);
        sgd.step(&mut [&mut p]);
        assert!((p.values()[0] - 0.9).abs() < 1e-15);
        p.zero_grad();
        p.accumulate_grad(&[1.0]);
        sgd.step(&mut [&mut p]);
        assert!((p.values()[0] - 0.71).abs() < 1e-15);
    }
}
