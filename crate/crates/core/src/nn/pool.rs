use crate::float::Scalar;
use crate::nn::{NnError, Result, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolKind {
    Max,
    Avg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoolSpec {
    pub kind: PoolKind,
    /// Window side; the stride equals the window, so windows do not overlap.
    pub size: usize,
}

impl PoolSpec {
    pub fn max(size: usize) -> Self {
        PoolSpec {
            kind: PoolKind::Max,
            size,
        }
    }

    pub fn output_shape(&self, input_shape: &[usize]) -> Result<[usize; 3]> {
        if input_shape.len() != 3 {
            return Err(NnError::ShapeMismatch {
                expected: vec![0, self.size, self.size],
                got: input_shape.to_vec(),
            });
        }
        let (c, h, w) = (input_shape[0], input_shape[1], input_shape[2]);
        if h < self.size || w < self.size {
            return Err(NnError::ShapeMismatch {
                expected: vec![c, self.size, self.size],
                got: input_shape.to_vec(),
            });
        }
        Ok([c, (h - self.size) / self.size + 1, (w - self.size) / self.size + 1])
    }
}

/// What backward needs: for max pooling, the flat input index that won each
/// window (first hit wins ties, scanning row-major).
#[derive(Debug, Clone)]
pub struct PoolCache {
    input_shape: [usize; 3],
    argmax: Option<Vec<usize>>,
}

pub fn pool_forward<T: Scalar>(
    spec: &PoolSpec,
    input: &Tensor<T>,
) -> Result<(Tensor<T>, PoolCache)> {
    let [c, oh, ow] = spec.output_shape(input.shape())?;
    let (h, w) = (input.shape()[1], input.shape()[2]);
    let s = spec.size;
    let x = input.values();

    let mut out = Tensor::zeros(&[c, oh, ow]);
    let mut argmax = if spec.kind == PoolKind::Max {
        Some(vec![0usize; c * oh * ow])
    } else {
        None
    };
    for ch in 0..c {
        for y in 0..oh {
            for xo in 0..ow {
                let out_idx = (ch * oh + y) * ow + xo;
                match spec.kind {
                    PoolKind::Max => {
                        let mut best = T::neg_infinity();
                        let mut best_idx = 0;
                        for i in 0..s {
                            for j in 0..s {
                                let idx = (ch * h + y * s + i) * w + xo * s + j;
                                if x[idx] > best {
                                    best = x[idx];
                                    best_idx = idx;
                                }
                            }
                        }
                        out.values_mut()[out_idx] = best;
                        argmax.as_mut().unwrap()[out_idx] = best_idx;
                    }
                    PoolKind::Avg => {
                        let mut acc = T::zero();
                        for i in 0..s {
                            for j in 0..s {
                                acc += x[(ch * h + y * s + i) * w + xo * s + j];
                            }
                        }
                        out.values_mut()[out_idx] = acc / T::from_f64((s * s) as f64);
                    }
                }
            }
        }
    }
    Ok((
        out,
        PoolCache {
            input_shape: [c, h, w],
            argmax,
        },
    ))
}

pub fn pool_backward<T: Scalar>(
    spec: &PoolSpec,
    cache: &PoolCache,
    upstream: &Tensor<T>,
) -> Result<Tensor<T>> {
    let [c, h, w] = cache.input_shape;
    let [oc, oh, ow] = spec.output_shape(&[c, h, w])?;
    if upstream.shape() != [oc, oh, ow] {
        return Err(NnError::ShapeMismatch {
            expected: vec![oc, oh, ow],
            got: upstream.shape().to_vec(),
        });
    }
    let mut grad = vec![T::zero(); c * h * w];
    let g = upstream.values();
    match spec.kind {
        PoolKind::Max => {
            let argmax = cache.argmax.as_ref().expect("max pool cache");
            for (out_idx, &src) in argmax.iter().enumerate() {
                grad[src] += g[out_idx];
            }
        }
        PoolKind::Avg => {
            let s = spec.size;
            let share = T::one() / T::from_f64((s * s) as f64);
            for ch in 0..oc {
                for y in 0..oh {
                    for xo in 0..ow {
                        let gv = g[(ch * oh + y) * ow + xo] * share;
                        for i in 0..s {
                            for j in 0..s {
                                grad[(ch * h + y * s + i) * w + xo * s + j] += gv;
                            }
                        }
                    }
                }
            }
        }
    }
    Tensor::from_values(&[c, h, w], grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_pool_picks_window_maxima() {
        let input = Tensor::from_values(
            &[1, 4, 4],
            vec![
                1.0, 2.0, 5.0, 0.0, //
                3.0, 4.0, 1.0, 1.0, //
                0.0, 0.0, 9.0, 8.0, //
                0.0, 7.0, 8.0, 9.5,
            ],
        )
        .unwrap();
        let (out, _) = pool_forward(&PoolSpec::max(2), &input).unwrap();
        assert_eq!(out.shape(), &[1, 2, 2]);
        assert_eq!(out.values(), &[4.0, 5.0, 7.0, 9.5]);
    }

    #[test]
    fn max_pool_backward_routes_to_argmax() {
        let input = Tensor::from_values(&[1, 2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let (_, cache) = pool_forward(&PoolSpec::max(2), &input).unwrap();
        let upstream = Tensor::from_values(&[1, 1, 1], vec![10.0]).unwrap();
        let grad = pool_backward(&PoolSpec::max(2), &cache, &upstream).unwrap();
        assert_eq!(grad.values(), &[0.0, 0.0, 0.0, 10.0]);
    }

    #[test]
    fn avg_pool_distributes_evenly() {
        let input = Tensor::from_values(&[1, 2, 2], vec![1.0, 2.0, 3.0, 6.0]).unwrap();
        let spec = PoolSpec {
            kind: PoolKind::Avg,
            size: 2,
        };
        let (out, cache) = pool_forward(&spec, &input).unwrap();
        assert_eq!(out.values(), &[3.0]);
        let upstream = Tensor::from_values(&[1, 1, 1], vec![4.0]).unwrap();
        let grad = pool_backward(&spec, &cache, &upstream).unwrap();
        assert_eq!(grad.values(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn odd_sizes_truncate() {
        let input = Tensor::<f64>::zeros(&[2, 5, 5]);
        let (out, _) = pool_forward(&PoolSpec::max(2), &input).unwrap();
        assert_eq!(out.shape(), &[2, 2, 2]);
    }
}
