// Copyright 2026 The yosr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Averaged stochastic subgradient descent on the L2-regularized hinge loss
//!
//!   J(w, b) = (λ/2)‖w‖² + (1/N) Σᵢ max(0, 1 − yᵢ (w·xᵢ + b))
//!
//! for one binary task. The bias is not regularized.
//!
//! Weights are stored as `w = scale · v` so the per-step shrink `(1 − ηλ)` is
//! O(1). The running sum of iterates is kept lazily as `Σ wₜ = S·v − c`, where
//! `S` is the running sum of scales and `c` accumulates `S_{k−1}·δₖ` for every
//! sparse change `δₖ` of `v`.

use alloc::vec;
use alloc::vec::Vec;

use super::TrainConfig;
use crate::features::FeatureVector;

/// Rescale `v` once the scale drops below this.
const MIN_SCALE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryWeights {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl BinaryWeights {
    pub fn zeros(dim: usize) -> Self {
        Self {
            weights: vec![0.0; dim],
            bias: 0.0,
        }
    }

    pub fn score(&self, x: &FeatureVector) -> f64 {
        x.dot(&self.weights) + self.bias
    }
}

/// Examples of one binary task, already in visiting order.
#[derive(Debug, Clone, Copy)]
pub struct BinaryTask<'a> {
    pub features: &'a [&'a FeatureVector],
    /// `+1.0` or `-1.0`, aligned with `features`.
    pub targets: &'a [f64],
    pub dim: usize,
}

impl BinaryTask<'_> {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// J(w, b) for explicit weights.
    pub fn objective(&self, w: &BinaryWeights, lambda: f64) -> f64 {
        let norm: f64 = w.weights.iter().map(|x| x * x).sum();
        self.objective_scaled(&w.weights, 1.0, w.bias, lambda, norm)
    }

    fn objective_scaled(
        &self,
        v: &[f64],
        scale: f64,
        bias: f64,
        lambda: f64,
        v_norm_sq: f64,
    ) -> f64 {
        let n = self.len().max(1) as f64;
        let hinge: f64 = self
            .features
            .iter()
            .zip(self.targets)
            .map(|(x, y)| {
                let m = y * (scale * x.dot(v) + bias);
                if m < 1.0 {
                    1.0 - m
                } else {
                    0.0
                }
            })
            .sum();
        0.5 * lambda * scale * scale * v_norm_sq + hinge / n
    }
}

/// Trained weights plus, when requested, J at the end of every epoch
/// (evaluated at the current, non-averaged iterate).
#[derive(Debug, Clone, PartialEq)]
pub struct SgdOutcome {
    pub weights: BinaryWeights,
    pub epoch_objectives: Vec<f64>,
}

pub fn train_binary(task: &BinaryTask<'_>, cfg: &TrainConfig) -> BinaryWeights {
    run(task, cfg, false).weights
}

pub fn train_binary_traced(task: &BinaryTask<'_>, cfg: &TrainConfig) -> SgdOutcome {
    run(task, cfg, true)
}

fn run(task: &BinaryTask<'_>, cfg: &TrainConfig, trace: bool) -> SgdOutcome {
    let dim = task.dim;
    let mut v = vec![0.0f64; dim];
    let mut scale = 1.0f64;
    let mut bias = 0.0f64;

    let mut correction = if cfg.averaging {
        vec![0.0f64; dim]
    } else {
        Vec::new()
    };
    let mut scale_sum = 0.0f64;
    let mut bias_sum = 0.0f64;
    let mut steps = 0u64;

    let mut epoch_objectives = Vec::new();

    for epoch in 0..cfg.epochs {
        let eta = cfg.eta0 / (1.0 + epoch as f64);
        let shrink = 1.0 - eta * cfg.lambda;
        for (x, &y) in task.features.iter().zip(task.targets) {
            let margin = y * (scale * x.dot(&v) + bias);
            scale *= shrink;
            if margin < 1.0 {
                let delta = eta * y / scale;
                for &j in x.indices() {
                    v[j as usize] += delta;
                }
                if cfg.averaging {
                    let weighted = scale_sum * delta;
                    for &j in x.indices() {
                        correction[j as usize] += weighted;
                    }
                }
                bias += eta * y;
            }
            if cfg.averaging {
                scale_sum += scale;
                bias_sum += bias;
                steps += 1;
            }
            if scale < MIN_SCALE {
                for vj in v.iter_mut() {
                    *vj *= scale;
                }
                scale_sum /= scale;
                scale = 1.0;
            }
        }
        if trace {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            epoch_objectives.push(task.objective_scaled(&v, scale, bias, cfg.lambda, norm));
        }
    }

    let weights = if cfg.averaging && steps > 0 {
        let t = steps as f64;
        BinaryWeights {
            weights: v
                .iter()
                .zip(&correction)
                .map(|(vj, cj)| (scale_sum * vj - cj) / t)
                .collect(),
            bias: bias_sum / t,
        }
    } else {
        BinaryWeights {
            weights: v.into_iter().map(|vj| vj * scale).collect(),
            bias,
        }
    };
    SgdOutcome {
        weights,
        epoch_objectives,
    }
}
