//! Dense row-major tensors and reverse-mode differentiation.
//!
//! Values are plain [`Tensor`]s (shape + flat `f64` buffer). Differentiation
//! is recorded on an explicit per-forward-pass [`Tape`]: leaves are bound with
//! [`Tape::leaf`], ops are tape methods, and [`Tape::backward`] fills
//! gradients for every reachable leaf that asked for them. There is no global
//! state; dropping the tape drops the graph.
//!
//! Storage is always `f64`. A tensor built with [`Precision::F32`] has every
//! op result rounded through `f32`, so training can run at single precision
//! while the gradient-check oracles keep full `f64` headroom. Gradients are
//! accumulated in `f64` regardless.

mod fd;
mod tape;

pub use fd::{finite_diff_grad, max_rel_err, rel_err};
pub use tape::{Tape, Var};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Scalar precision; a tensor-wide construction parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F32,
    F64,
}

impl Precision {
    #[inline]
    pub(crate) fn quantize(self, v: f64) -> f64 {
        match self {
            Precision::F64 => v,
            Precision::F32 => v as f32 as f64,
        }
    }

    pub(crate) fn quantize_slice(self, data: &mut [f64]) {
        if self == Precision::F32 {
            for v in data.iter_mut() {
                *v = *v as f32 as f64;
            }
        }
    }
}

/// Dense N-dimensional array, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
    precision: Precision,
}

impl Tensor {
    /// Checked constructor: the element count must match the shape and every
    /// scalar must be finite.
    pub fn from_vec(data: Vec<f64>, shape: &[usize]) -> Result<Self> {
        Self::from_vec_with(data, shape, Precision::F64)
    }

    pub fn from_vec_with(mut data: Vec<f64>, shape: &[usize], precision: Precision) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::Dimension {
                op: "from_vec",
                msg: format!("shape wants {numel} elements, data has {}", data.len()),
                shape: shape.to_vec(),
            });
        }
        if let Some((i, &v)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index: i, value: v });
        }
        precision.quantize_slice(&mut data);
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
            precision,
        })
    }

    /// Internal constructor for op outputs; skips the finite scan.
    pub(crate) fn from_raw(mut data: Vec<f64>, shape: Vec<usize>, precision: Precision) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        precision.quantize_slice(&mut data);
        Tensor {
            shape,
            data,
            precision,
        }
    }

    pub fn zeros(shape: &[usize], precision: Precision) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; numel],
            precision,
        }
    }

    pub fn full(shape: &[usize], value: f64, precision: Precision) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![precision.quantize(value); numel],
            precision,
        }
    }

    pub fn scalar(value: f64) -> Self {
        Tensor {
            shape: vec![1],
            data: vec![value],
            precision: Precision::F64,
        }
    }

    /// Identity matrix, useful for wiring tests.
    pub fn eye(n: usize, precision: Precision) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Tensor {
            shape: vec![n, n],
            data,
            precision,
        }
    }

    #[inline]
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn precision(&self) -> Precision {
        self.precision
    }

    #[inline]
    pub fn numel(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    /// Value at a multi-index (row-major).
    pub fn at(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut flat = 0;
        for (d, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[d]);
            flat = flat * self.shape[d] + i;
        }
        self.data[flat]
    }

    /// Same data reinterpreted under a new shape.
    pub fn reshaped(mut self, shape: &[usize]) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != self.data.len() {
            return Err(Error::Dimension {
                op: "reshape",
                msg: format!("element count {} cannot fill shape {:?}", self.data.len(), shape),
                shape: self.shape,
            });
        }
        self.shape = shape.to_vec();
        Ok(self)
    }

    /// Re-quantize to a different precision (used when loading checkpoints).
    pub fn to_precision(mut self, precision: Precision) -> Self {
        precision.quantize_slice(&mut self.data);
        self.precision = precision;
        self
    }
}

/// Row-major strides for a shape.
pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; shape.len()];
    for d in (0..shape.len().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * shape[d + 1];
    }
    strides
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_element_count() {
        let err = Tensor::from_vec(vec![1.0, 2.0, 3.0], &[2, 2]).unwrap_err();
        assert!(matches!(err, Error::Dimension { op: "from_vec", .. }));
    }

    #[test]
    fn from_vec_rejects_non_finite() {
        let err = Tensor::from_vec(vec![1.0, f64::NAN], &[2]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 1, .. }));
        let err = Tensor::from_vec(vec![f64::INFINITY], &[1]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }));
    }

    #[test]
    fn f32_precision_rounds_on_construction() {
        let v = 0.1f64 + 1e-12;
        let t = Tensor::from_vec_with(vec![v], &[1], Precision::F32).unwrap();
        assert_eq!(t.data()[0], v as f32 as f64);
        assert_ne!(t.data()[0], v);
    }

    #[test]
    fn at_indexes_row_major() {
        let t = Tensor::from_vec(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[2, 3]).unwrap();
        assert_eq!(t.at(&[0, 2]), 3.0);
        assert_eq!(t.at(&[1, 0]), 4.0);
    }
}
