use crate::float::Scalar;
use crate::nn::{NnError, Result};

/// Dense row-major value container with an optional gradient slot of the
/// same shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    values: Vec<T>,
    grad: Option<Vec<T>>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            values: vec![T::zero(); len],
            grad: None,
        }
    }

    pub fn from_values(shape: &[usize], values: Vec<T>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if values.len() != expected {
            return Err(NnError::ShapeMismatch {
                expected: shape.to_vec(),
                got: vec![values.len()],
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(NnError::NonFinite("tensor construction"));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            values,
            grad: None,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    /// The single element of a rank-anything tensor with one entry.
    pub fn scalar(&self) -> T {
        debug_assert_eq!(self.len(), 1, "scalar() on tensor of shape {:?}", self.shape);
        self.values[0]
    }

    pub fn grad(&self) -> Option<&[T]> {
        self.grad.as_deref()
    }

    /// Gradient slot, allocated zeroed on first use.
    pub fn grad_mut(&mut self) -> &mut [T] {
        let len = self.values.len();
        self.grad.get_or_insert_with(|| vec![T::zero(); len])
    }

    /// Simultaneous read access to values and write access to the gradient.
    pub fn values_and_grad_mut(&mut self) -> (&[T], &mut [T]) {
        let len = self.values.len();
        let grad = self.grad.get_or_insert_with(|| vec![T::zero(); len]);
        (&self.values, grad)
    }

    pub fn zero_grad(&mut self) {
        if let Some(g) = self.grad.as_mut() {
            g.fill(T::zero());
        }
    }

    /// Adds `other`'s values into this tensor's gradient slot.
    pub fn accumulate_grad(&mut self, other: &[T]) {
        debug_assert_eq!(other.len(), self.values.len());
        for (g, o) in self.grad_mut().iter_mut().zip(other) {
            *g += *o;
        }
    }
}
