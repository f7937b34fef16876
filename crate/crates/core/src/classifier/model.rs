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

use alloc::vec;
use alloc::vec::Vec;

use super::{BinaryWeights, ClassifierError, Strategy, TrainConfig};
use crate::features::{
    BioTag, FeatureDictionary, FeatureTemplateConfig, FeatureVector, FrequencyPosTagger,
};

/// Version written into, and required from, serialized models.
pub const FORMAT_VERSION: u32 = 1;

/// Per-label (OVA) or per-pair (pairwise) linear scorers over a frozen
/// feature dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    labels: Vec<BioTag>,
    dict: FeatureDictionary,
    config: TrainConfig,
    features: FeatureTemplateConfig,
    pos_tagger: FrequencyPosTagger,
    /// OVA: one per label. Pairwise: one per `(i, j)`, `i < j`, row-major.
    vectors: Vec<BinaryWeights>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TokenPrediction {
    pub tag: BioTag,
    /// OVA: the label scores. Pairwise: summed signed duel margins.
    pub scores: Vec<f64>,
    /// Pairwise only: duels won per label.
    pub votes: Option<Vec<u32>>,
}

impl LinearModel {
    pub fn new(
        labels: Vec<BioTag>,
        dict: FeatureDictionary,
        config: TrainConfig,
        features: FeatureTemplateConfig,
        pos_tagger: FrequencyPosTagger,
        vectors: Vec<BinaryWeights>,
    ) -> Result<Self, ClassifierError> {
        if labels.is_empty() {
            return Err(ClassifierError::MalformedModel("no labels"));
        }
        if !labels.windows(2).all(|w| w[0] < w[1]) {
            return Err(ClassifierError::MalformedModel(
                "labels must be unique and in canonical order",
            ));
        }
        if !dict.is_frozen() {
            return Err(ClassifierError::DictionaryNotFrozen);
        }
        let n = labels.len();
        let expected = match config.strategy {
            Strategy::Ova => n,
            Strategy::Pairwise => n * (n - 1) / 2,
        };
        if vectors.len() != expected {
            return Err(ClassifierError::MalformedModel(
                "weight vector count does not match the strategy",
            ));
        }
        for v in &vectors {
            if v.weights.len() != dict.len() {
                return Err(ClassifierError::MalformedModel(
                    "weight vector length differs from dictionary size",
                ));
            }
            if !v.bias.is_finite() || v.weights.iter().any(|w| !w.is_finite()) {
                return Err(ClassifierError::MalformedModel("non-finite weight"));
            }
        }
        Ok(Self {
            labels,
            dict,
            config,
            features,
            pos_tagger,
            vectors,
        })
    }

    pub fn labels(&self) -> &[BioTag] {
        &self.labels
    }

    pub fn dict(&self) -> &FeatureDictionary {
        &self.dict
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn strategy(&self) -> Strategy {
        self.config.strategy
    }

    pub fn feature_config(&self) -> &FeatureTemplateConfig {
        &self.features
    }

    pub fn pos_tagger(&self) -> &FrequencyPosTagger {
        &self.pos_tagger
    }

    pub fn vectors(&self) -> &[BinaryWeights] {
        &self.vectors
    }

    pub fn predict_token(&self, fv: &FeatureVector) -> TokenPrediction {
        match self.config.strategy {
            Strategy::Ova => self.predict_ova(fv),
            Strategy::Pairwise => self.predict_pairwise(fv),
        }
    }

    fn predict_ova(&self, fv: &FeatureVector) -> TokenPrediction {
        let scores: Vec<f64> = self.vectors.iter().map(|v| v.score(fv)).collect();
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = i;
            }
        }
        TokenPrediction {
            tag: self.labels[best],
            scores,
            votes: None,
        }
    }

    fn predict_pairwise(&self, fv: &FeatureVector) -> TokenPrediction {
        let n = self.labels.len();
        let mut votes = vec![0u32; n];
        let mut margins = vec![0.0f64; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let s = self.vectors[k].score(fv);
                k += 1;
                if s >= 0.0 {
                    votes[i] += 1;
                } else {
                    votes[j] += 1;
                }
                margins[i] += s;
                margins[j] -= s;
            }
        }
        let mut best = 0;
        for i in 1..n {
            if votes[i] > votes[best] || (votes[i] == votes[best] && margins[i] > margins[best]) {
                best = i;
            }
        }
        TokenPrediction {
            tag: self.labels[best],
            scores: margins,
            votes: Some(votes),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ActLabel::*;
    use alloc::format;

    fn dict(n: usize) -> FeatureDictionary {
        FeatureDictionary::from_names((0..n).map(|i| format!("f{i}")).collect()).unwrap()
    }

    fn model(labels: Vec<BioTag>, strategy: Strategy, vectors: Vec<BinaryWeights>) -> LinearModel {
        LinearModel::new(
            labels,
            dict(vectors[0].weights.len()),
            TrainConfig {
                strategy,
                ..Default::default()
            },
            FeatureTemplateConfig::default(),
            FrequencyPosTagger::default(),
            vectors,
        )
        .unwrap()
    }

    fn bw(weights: &[f64], bias: f64) -> BinaryWeights {
        BinaryWeights {
            weights: weights.to_vec(),
            bias,
        }
    }

    #[test]
    fn zero_weights_pick_first_label() {
        let labels = vec![
            BioTag::B(ServiceQuestion),
            BioTag::B(Agree),
            BioTag::I(Agree),
        ];
        let m = model(
            labels.clone(),
            Strategy::Ova,
            vec![BinaryWeights::zeros(2); 3],
        );
        assert_eq!(
            m.predict_token(&FeatureVector::new(vec![0, 1])).tag,
            BioTag::B(ServiceQuestion)
        );
        let p = model(labels, Strategy::Pairwise, vec![BinaryWeights::zeros(2); 3]);
        assert_eq!(
            p.predict_token(&FeatureVector::new(vec![1])).tag,
            BioTag::B(ServiceQuestion)
        );
    }

    #[test]
    fn ova_argmax() {
        let m = model(
            vec![BioTag::B(Agree), BioTag::B(Greeting)],
            Strategy::Ova,
            vec![bw(&[2.0, 0.0], 0.0), bw(&[1.0, 0.0], 0.0)],
        );
        let p = m.predict_token(&FeatureVector::new(vec![0]));
        assert_eq!(p.tag, BioTag::B(Agree));
        assert_eq!(p.scores, [2.0, 1.0]);
    }

    #[test]
    fn cyclic_duels_use_margins() {
        // A beats B by 1, B beats C by 3, C beats A by 0.5: all have one win.
        let labels = vec![BioTag::B(Agree), BioTag::B(Greeting), BioTag::B(Closing)];
        let m = model(
            labels,
            Strategy::Pairwise,
            vec![bw(&[1.0], 0.0), bw(&[-0.5], 0.0), bw(&[3.0], 0.0)],
        );
        let p = m.predict_token(&FeatureVector::new(vec![0]));
        assert_eq!(p.votes.as_deref(), Some(&[1, 1, 1][..]));
        // margins: A = 1 - 0.5 = 0.5, B = -1 + 3 = 2, C = 0.5 - 3 = -2.5
        assert_eq!(p.scores, [0.5, 2.0, -2.5]);
        assert_eq!(p.tag, BioTag::B(Greeting));
    }

    #[test]
    fn rejects_malformed() {
        let labels = vec![BioTag::B(Agree), BioTag::B(Greeting)];
        let mk = |labels: Vec<BioTag>, vectors, d: FeatureDictionary| {
            LinearModel::new(
                labels,
                d,
                TrainConfig::default(),
                FeatureTemplateConfig::default(),
                FrequencyPosTagger::default(),
                vectors,
            )
        };
        assert!(mk(labels.clone(), vec![bw(&[1.0], 0.0)], dict(1)).is_err());
        assert!(mk(
            labels.clone(),
            vec![bw(&[1.0], 0.0), bw(&[1.0, 2.0], 0.0)],
            dict(1)
        )
        .is_err());
        assert!(mk(
            labels.clone(),
            vec![bw(&[f64::NAN], 0.0), bw(&[1.0], 0.0)],
            dict(1)
        )
        .is_err());
        let reversed = vec![BioTag::B(Greeting), BioTag::B(Agree)];
        assert!(mk(reversed, vec![bw(&[1.0], 0.0), bw(&[1.0], 0.0)], dict(1)).is_err());
        assert!(mk(
            labels,
            vec![bw(&[1.0], 0.0), bw(&[1.0], 0.0)],
            FeatureDictionary::new()
        )
        .is_err());
    }
}
