use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::float::Scalar;
use crate::nn::pool::{pool_backward, pool_forward, PoolCache};
use crate::nn::{
    ActivationKind, ConvLayer, DenseLayer, NnError, PoolSpec, Result, Tensor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvSpec {
    pub out_channels: usize,
    pub kernel: usize,
    pub stride: usize,
}

/// Architecture of the classical trunk:
/// conv1 -> act -> pool -> conv2 -> act -> pool -> flatten -> dense stack.
/// The last dense width must be 1; that scalar is the theta fed to the
/// quantum layer, deliberately unbounded (the ansatz is periodic in theta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrunkConfig {
    /// Input as (channels, height, width).
    pub input: (usize, usize, usize),
    pub conv1: ConvSpec,
    pub conv2: ConvSpec,
    pub pool: PoolSpec,
    pub activation: ActivationKind,
    /// Hidden widths followed by the final 1.
    pub dense_widths: Vec<usize>,
}

/// Shape flow through the trunk, as computed by the stated formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrunkShapes {
    pub conv1_out: [usize; 3],
    pub pool1_out: [usize; 3],
    pub conv2_out: [usize; 3],
    pub pool2_out: [usize; 3],
    pub flat: usize,
}

impl TrunkConfig {
    /// The default trunk for 28x28 grayscale inputs:
    /// conv 1->8 (3x3) -> ReLU -> 2x2 max pool -> conv 8->16 (3x3) -> ReLU
    /// -> 2x2 max pool -> dense 32 -> dense 1.
    pub fn mnist_default() -> Self {
        Self::for_input(28, 28)
    }

    /// Same stack on an arbitrary square-ish grayscale input.
    pub fn for_input(height: usize, width: usize) -> Self {
        TrunkConfig {
            input: (1, height, width),
            conv1: ConvSpec {
                out_channels: 8,
                kernel: 3,
                stride: 1,
            },
            conv2: ConvSpec {
                out_channels: 16,
                kernel: 3,
                stride: 1,
            },
            pool: PoolSpec::max(2),
            activation: ActivationKind::Relu,
            dense_widths: vec![32, 1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dense_widths.last() != Some(&1) {
            return Err(NnError::BadConfig(format!(
                "final dense width must be 1 (the theta neuron), got {:?}",
                self.dense_widths
            )));
        }
        for conv in [&self.conv1, &self.conv2] {
            if conv.kernel % 2 == 0 {
                return Err(NnError::BadConfig("conv kernels must be odd".into()));
            }
            if conv.stride == 0 || conv.out_channels == 0 {
                return Err(NnError::BadConfig("conv stride/channels must be positive".into()));
            }
        }
        if self.pool.size == 0 {
            return Err(NnError::BadConfig("pool size must be positive".into()));
        }
        self.shapes().map(|_| ())
    }

    pub fn shapes(&self) -> Result<TrunkShapes> {
        let (c, h, w) = self.input;
        let conv_out = |spec: &ConvSpec, shape: [usize; 3]| -> Result<[usize; 3]> {
            let (_, h, w) = (shape[0], shape[1], shape[2]);
            if h < spec.kernel || w < spec.kernel {
                return Err(NnError::ShapeMismatch {
                    expected: vec![spec.kernel, spec.kernel],
                    got: shape.to_vec(),
                });
            }
            Ok([
                spec.out_channels,
                (h - spec.kernel) / spec.stride + 1,
                (w - spec.kernel) / spec.stride + 1,
            ])
        };
        let conv1_out = conv_out(&self.conv1, [c, h, w])?;
        let pool1_out = self.pool.output_shape(&conv1_out)?;
        let conv2_out = conv_out(&self.conv2, pool1_out)?;
        let pool2_out = self.pool.output_shape(&conv2_out)?;
        Ok(TrunkShapes {
            conv1_out,
            pool1_out,
            conv2_out,
            pool2_out,
            flat: pool2_out.iter().product(),
        })
    }
}

/// The classical trunk with its parameters.
#[derive(Debug, Clone)]
pub struct Trunk<T> {
    pub config: TrunkConfig,
    pub conv1: ConvLayer<T>,
    pub conv2: ConvLayer<T>,
    pub dense: Vec<DenseLayer<T>>,
}

/// Everything backward needs from one forward pass.
#[derive(Debug, Clone)]
pub struct TrunkCache<T> {
    input: Tensor<T>,
    conv1_pre: Tensor<T>,
    pool1_cache: PoolCache,
    pool1_out: Tensor<T>,
    conv2_pre: Tensor<T>,
    pool2_cache: PoolCache,
    /// Per dense layer: (input, pre-activation output). The first input is
    /// the flattened pool output.
    dense_io: Vec<(Vec<T>, Vec<T>)>,
}

impl<T: Scalar> TrunkCache<T> {
    pub fn theta_input_len(&self) -> usize {
        self.dense_io[0].0.len()
    }
}

impl<T: Scalar> Trunk<T> {
    /// Builds the trunk with weights drawn uniformly from
    /// `[-sqrt(1/fan_in), +sqrt(1/fan_in)]`, deterministically from `seed`.
    pub fn init(config: TrunkConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shapes = config.shapes()?;

        let mut conv = |in_ch: usize, spec: &ConvSpec| -> Result<ConvLayer<T>> {
            let k = spec.kernel;
            let fan_in = in_ch * k * k;
            let limit = (1.0 / fan_in as f64).sqrt();
            let kernels = draw(&mut rng, &[spec.out_channels, in_ch, k, k], limit)?;
            let bias = draw(&mut rng, &[spec.out_channels], limit)?;
            ConvLayer::new(kernels, bias, spec.stride)
        };
        let conv1 = conv(config.input.0, &config.conv1)?;
        let conv2 = conv(config.conv1.out_channels, &config.conv2)?;

        let mut dense = Vec::new();
        let mut in_features = shapes.flat;
        for &width in &config.dense_widths {
            let limit = (1.0 / in_features as f64).sqrt();
            let weights = draw(&mut rng, &[width, in_features], limit)?;
            let bias = draw(&mut rng, &[width], limit)?;
            dense.push(DenseLayer::new(weights, bias)?);
            in_features = width;
        }

        Ok(Trunk {
            config,
            conv1,
            conv2,
            dense,
        })
    }

    /// Scalar output theta for one image.
    pub fn forward(&self, image: &Tensor<T>) -> Result<T> {
        self.forward_cached(image).map(|(theta, _)| theta)
    }

    /// Forward pass that also returns the activations backward needs.
    pub fn forward_cached(&self, image: &Tensor<T>) -> Result<(T, TrunkCache<T>)> {
        let expected = [self.config.input.0, self.config.input.1, self.config.input.2];
        if image.shape() != expected {
            return Err(NnError::ShapeMismatch {
                expected: expected.to_vec(),
                got: image.shape().to_vec(),
            });
        }
        let act = self.config.activation;

        let conv1_pre = self.conv1.forward(image)?;
        let act1 = Tensor::from_values(conv1_pre.shape(), act.forward_slice(conv1_pre.values()))?;
        let (pool1_out, pool1_cache) = pool_forward(&self.config.pool, &act1)?;

        let conv2_pre = self.conv2.forward(&pool1_out)?;
        let act2 = Tensor::from_values(conv2_pre.shape(), act.forward_slice(conv2_pre.values()))?;
        let (pool2_out, pool2_cache) = pool_forward(&self.config.pool, &act2)?;

        let mut dense_io = Vec::with_capacity(self.dense.len());
        let mut current = pool2_out.values().to_vec();
        for (i, layer) in self.dense.iter().enumerate() {
            let pre = layer.forward(&current)?;
            let post = if i + 1 == self.dense.len() {
                pre.clone() // no activation after the theta neuron
            } else {
                act.forward_slice(&pre)
            };
            dense_io.push((current, pre));
            current = post;
        }
        let theta = current[0];

        Ok((
            theta,
            TrunkCache {
                input: image.clone(),
                conv1_pre,
                pool1_cache,
                pool1_out,
                conv2_pre,
                pool2_cache,
                dense_io,
            },
        ))
    }

    /// Backpropagates `d loss / d theta`, accumulating into every parameter's
    /// gradient slot; returns the input-image gradient.
    pub fn backward(&mut self, cache: &TrunkCache<T>, upstream_theta: T) -> Result<Tensor<T>> {
        let act = self.config.activation;

        let n_dense = self.dense.len();
        let mut grad = vec![upstream_theta];
        for (i, layer) in self.dense.iter_mut().enumerate().rev() {
            let (input, pre) = &cache.dense_io[i];
            // the theta neuron has no activation; hidden layers do
            if i + 1 != n_dense {
                grad = act.backward_slice(pre, &grad);
            }
            grad = layer.backward(input, &grad)?;
        }

        let pool2_shape = self.config.pool.output_shape(cache.conv2_pre.shape())?;
        let pool2_grad = Tensor::from_values(&pool2_shape, grad)?;
        let act2_grad = pool_backward(&self.config.pool, &cache.pool2_cache, &pool2_grad)?;
        let conv2_grad = Tensor::from_values(
            cache.conv2_pre.shape(),
            act.backward_slice(cache.conv2_pre.values(), act2_grad.values()),
        )?;
        let pool1_grad = self.conv2.backward(&cache.pool1_out, &conv2_grad)?;

        let act1_grad = pool_backward(&self.config.pool, &cache.pool1_cache, &pool1_grad)?;
        let conv1_grad = Tensor::from_values(
            cache.conv1_pre.shape(),
            act.backward_slice(cache.conv1_pre.values(), act1_grad.values()),
        )?;
        self.conv1.backward(&cache.input, &conv1_grad)
    }

    /// Stable parameter naming shared by the optimizer and the checkpoint
    /// format.
    pub fn named_parameters(&self) -> Vec<(String, &Tensor<T>)> {
        let mut params: Vec<(String, &Tensor<T>)> = vec![
            ("conv1.kernels".into(), &self.conv1.kernels),
            ("conv1.bias".into(), &self.conv1.bias),
            ("conv2.kernels".into(), &self.conv2.kernels),
            ("conv2.bias".into(), &self.conv2.bias),
        ];
        for (i, layer) in self.dense.iter().enumerate() {
            params.push((format!("dense{i}.weights"), &layer.weights));
            params.push((format!("dense{i}.bias"), &layer.bias));
        }
        params
    }

    pub fn parameters_mut(&mut self) -> Vec<&mut Tensor<T>> {
        let mut params: Vec<&mut Tensor<T>> = vec![
            &mut self.conv1.kernels,
            &mut self.conv1.bias,
            &mut self.conv2.kernels,
            &mut self.conv2.bias,
        ];
        for layer in &mut self.dense {
            params.push(&mut layer.weights);
            params.push(&mut layer.bias);
        }
        params
    }

    pub fn zero_grads(&mut self) {
        for p in self.parameters_mut() {
            p.zero_grad();
        }
    }
}

fn draw<T: Scalar>(rng: &mut ChaCha8Rng, shape: &[usize], limit: f64) -> Result<Tensor<T>> {
    let len = shape.iter().product();
    let values = (0..len)
        .map(|_| T::from_f64(rng.gen_range(-limit..limit)))
        .collect();
    Tensor::from_values(shape, values)
}
