use crate::float::Scalar;
use crate::nn::{NnError, Result, Tensor};

/// Fully connected layer `y = W x + b` with `W` of shape `[out, in]`.
#[derive(Debug, Clone)]
pub struct DenseLayer<T> {
    pub weights: Tensor<T>,
    pub bias: Tensor<T>,
}

impl<T: Scalar> DenseLayer<T> {
    pub fn new(weights: Tensor<T>, bias: Tensor<T>) -> Result<Self> {
        if weights.shape().len() != 2 {
            return Err(NnError::BadConfig(format!(
                "dense weights must be rank 2, got {:?}",
                weights.shape()
            )));
        }
        if bias.shape() != [weights.shape()[0]] {
            return Err(NnError::ShapeMismatch {
                expected: vec![weights.shape()[0]],
                got: bias.shape().to_vec(),
            });
        }
        Ok(DenseLayer { weights, bias })
    }

    pub fn out_features(&self) -> usize {
        self.weights.shape()[0]
    }

    pub fn in_features(&self) -> usize {
        self.weights.shape()[1]
    }

    pub fn forward(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.in_features() {
            return Err(NnError::ShapeMismatch {
                expected: vec![self.in_features()],
                got: vec![input.len()],
            });
        }
        let w = self.weights.values();
        let n_in = self.in_features();
        Ok((0..self.out_features())
            .map(|o| {
                let row = &w[o * n_in..(o + 1) * n_in];
                row.iter()
                    .zip(input)
                    .fold(self.bias.values()[o], |acc, (wv, xv)| acc + *wv * *xv)
            })
            .collect())
    }

    /// dL/dW = g x^T, dL/db = g; returns dL/dx = W^T g.
    pub fn backward(&mut self, input: &[T], upstream: &[T]) -> Result<Vec<T>> {
        if input.len() != self.in_features() || upstream.len() != self.out_features() {
            return Err(NnError::ShapeMismatch {
                expected: vec![self.out_features(), self.in_features()],
                got: vec![upstream.len(), input.len()],
            });
        }
        let n_in = self.in_features();
        let mut input_grad = vec![T::zero(); n_in];
        let (w, w_grad) = self.weights.values_and_grad_mut();
        for (o, &g) in upstream.iter().enumerate() {
            let row = o * n_in;
            for i in 0..n_in {
                w_grad[row + i] += g * input[i];
                input_grad[i] += g * w[row + i];
            }
        }
        let b_grad = self.bias.grad_mut();
        for (o, &g) in upstream.iter().enumerate() {
            b_grad[o] += g;
        }
        Ok(input_grad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(w: Vec<f64>, rows: usize, cols: usize) -> DenseLayer<f64> {
        DenseLayer::new(
            Tensor::from_values(&[rows, cols], w).unwrap(),
            Tensor::zeros(&[rows]),
        )
        .unwrap()
    }

    #[test]
    fn forward_is_matrix_vector_product() {
        let l = layer(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 2, 3);
        let y = l.forward(&[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(y, vec![1.0 - 3.0, 4.0 - 6.0]);
    }

    #[test]
    fn weight_grad_is_outer_product_of_upstream_and_input() {
        let mut l = layer(vec![0.0; 6], 2, 3);
        let x = [1.0, 2.0, 3.0];
        let g = [10.0, -1.0];
        l.backward(&x, &g).unwrap();
        let wg = l.weights.grad().unwrap();
        assert_eq!(wg, &[10.0, 20.0, 30.0, -1.0, -2.0, -3.0]);
        assert_eq!(l.bias.grad().unwrap(), &g);
    }

    #[test]
    fn input_grad_is_w_transpose_times_upstream() {
        let mut l = layer(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 2, 3);
        let dx = l.backward(&[0.0, 0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(dx, vec![5.0, 7.0, 9.0]);
    }

    #[test]
    fn doubling_weights_doubles_output_with_zero_bias() {
        let w: Vec<f64> = (0..6).map(|i| i as f64 * 0.3 - 0.7).collect();
        let x = [0.4, -1.2, 2.2];
        let y1 = layer(w.clone(), 2, 3).forward(&x).unwrap();
        let y2 = layer(w.iter().map(|v| 2.0 * v).collect(), 2, 3)
            .forward(&x)
            .unwrap();
        for (a, b) in y1.iter().zip(&y2) {
            assert!((2.0 * a - b).abs() < 1e-12);
        }
    }
}
