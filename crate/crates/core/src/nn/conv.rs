use crate::float::Scalar;
use crate::nn::{NnError, Result, Tensor};

/// 2D convolution (cross-correlation) with valid padding.
///
/// Kernels are `[out_ch, in_ch, kh, kw]`, inputs `[C, H, W]`, outputs
/// `[out_ch, (H-kh)/stride+1, (W-kw)/stride+1]`.
#[derive(Debug, Clone)]
pub struct ConvLayer<T> {
    pub kernels: Tensor<T>,
    pub bias: Tensor<T>,
    pub stride: usize,
}

impl<T: Scalar> ConvLayer<T> {
    pub fn new(kernels: Tensor<T>, bias: Tensor<T>, stride: usize) -> Result<Self> {
        if kernels.shape().len() != 4 {
            return Err(NnError::BadConfig(format!(
                "conv kernels must be rank 4, got {:?}",
                kernels.shape()
            )));
        }
        let (kh, kw) = (kernels.shape()[2], kernels.shape()[3]);
        if kh % 2 == 0 || kw % 2 == 0 {
            return Err(NnError::BadConfig(format!(
                "conv kernel sides must be odd, got {kh}x{kw}"
            )));
        }
        if bias.shape() != [kernels.shape()[0]] {
            return Err(NnError::ShapeMismatch {
                expected: vec![kernels.shape()[0]],
                got: bias.shape().to_vec(),
            });
        }
        if stride == 0 {
            return Err(NnError::BadConfig("conv stride must be positive".into()));
        }
        Ok(ConvLayer {
            kernels,
            bias,
            stride,
        })
    }

    pub fn out_channels(&self) -> usize {
        self.kernels.shape()[0]
    }

    pub fn in_channels(&self) -> usize {
        self.kernels.shape()[1]
    }

    pub fn kernel_size(&self) -> (usize, usize) {
        (self.kernels.shape()[2], self.kernels.shape()[3])
    }

    pub fn output_shape(&self, input_shape: &[usize]) -> Result<[usize; 3]> {
        let (kh, kw) = self.kernel_size();
        if input_shape.len() != 3 || input_shape[0] != self.in_channels() {
            return Err(NnError::ShapeMismatch {
                expected: vec![self.in_channels(), kh, kw],
                got: input_shape.to_vec(),
            });
        }
        let (h, w) = (input_shape[1], input_shape[2]);
        if h < kh || w < kw {
            return Err(NnError::ShapeMismatch {
                expected: vec![self.in_channels(), kh, kw],
                got: input_shape.to_vec(),
            });
        }
        Ok([
            self.out_channels(),
            (h - kh) / self.stride + 1,
            (w - kw) / self.stride + 1,
        ])
    }

    pub fn forward(&self, input: &Tensor<T>) -> Result<Tensor<T>> {
        let [oc, oh, ow] = self.output_shape(input.shape())?;
        let (ic, h, w) = (input.shape()[0], input.shape()[1], input.shape()[2]);
        let (kh, kw) = self.kernel_size();
        let x = input.values();
        let k = self.kernels.values();
        let b = self.bias.values();

        let mut out = Tensor::zeros(&[oc, oh, ow]);
        let o_values = out.values_mut();
        for o in 0..oc {
            for y in 0..oh {
                for xo in 0..ow {
                    let mut acc = b[o];
                    for c in 0..ic {
                        for i in 0..kh {
                            let row = (c * h + y * self.stride + i) * w + xo * self.stride;
                            let krow = ((o * ic + c) * kh + i) * kw;
                            for j in 0..kw {
                                acc += x[row + j] * k[krow + j];
                            }
                        }
                    }
                    o_values[(o * oh + y) * ow + xo] = acc;
                }
            }
        }
        Ok(out)
    }

    /// Accumulates kernel/bias gradients from `upstream` (same shape as the
    /// forward output) and returns the input gradient.
    pub fn backward(&mut self, input: &Tensor<T>, upstream: &Tensor<T>) -> Result<Tensor<T>> {
        let out_shape = self.output_shape(input.shape())?;
        if upstream.shape() != out_shape {
            return Err(NnError::ShapeMismatch {
                expected: out_shape.to_vec(),
                got: upstream.shape().to_vec(),
            });
        }
        let (ic, h, w) = (input.shape()[0], input.shape()[1], input.shape()[2]);
        let [oc, oh, ow] = out_shape;
        let (kh, kw) = self.kernel_size();
        let x = input.values();
        let g = upstream.values();

        let mut input_grad = vec![T::zero(); input.len()];
        let (k, kernel_grad) = self.kernels.values_and_grad_mut();
        for o in 0..oc {
            for y in 0..oh {
                for xo in 0..ow {
                    let gv = g[(o * oh + y) * ow + xo];
                    for c in 0..ic {
                        for i in 0..kh {
                            let row = (c * h + y * self.stride + i) * w + xo * self.stride;
                            let krow = ((o * ic + c) * kh + i) * kw;
                            for j in 0..kw {
                                kernel_grad[krow + j] += gv * x[row + j];
                                input_grad[row + j] += gv * k[krow + j];
                            }
                        }
                    }
                }
            }
        }
        let bias_grad = self.bias.grad_mut();
        for o in 0..oc {
            let mut acc = T::zero();
            for y in 0..oh {
                for xo in 0..ow {
                    acc += g[(o * oh + y) * ow + xo];
                }
            }
            bias_grad[o] += acc;
        }
        Tensor::from_values(input.shape(), input_grad)
    }
}
