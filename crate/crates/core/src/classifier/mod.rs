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

//! Multiclass linear max-margin token classifier.
//!
//! Training turns the gold BIO tags into binary tasks (one-vs-all or
//! pairwise), each solved by averaged SGD on the hinge loss. Training uses
//! gold previous-act and previous-tag context; prediction uses the model's
//! own greedy output.

mod decode;
mod model;
mod sgd;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use decode::{
    predict_dialogue, predict_dialogue_with, predict_utterance, PredictOptions, UtterancePrediction,
};
pub use model::{LinearModel, TokenPrediction, FORMAT_VERSION};
pub use sgd::{train_binary, train_binary_traced, BinaryTask, BinaryWeights, SgdOutcome};

use crate::corpus::Dialogue;
use crate::features::{
    encode_bio, extract_features, resolve_pos, BioTag, ExtractionContext, FeatureDictionary,
    FeatureError, FeatureTemplateConfig, FeatureVector, FrequencyPosTagger,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("no training examples")]
    EmptyTrainingData,
    #[error("label {0} has no training examples")]
    EmptyLabel(BioTag),
    #[error("invalid training configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("model is malformed: {0}")]
    MalformedModel(&'static str),
    #[error("model dictionary must be frozen before prediction")]
    DictionaryNotFrozen,
    #[error("in dialogue {dialogue}: {source}")]
    Feature {
        dialogue: alloc::string::String,
        #[source]
        source: FeatureError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// One binary task per label against all others.
    #[default]
    Ova,
    /// One binary task per unordered label pair.
    Pairwise,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Ova => "ova",
            Strategy::Pairwise => "pairwise",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ova" | "one-vs-all" => Ok(Strategy::Ova),
            "pairwise" | "one-vs-one" => Ok(Strategy::Pairwise),
            _ => Err(ClassifierError::InvalidConfig(
                "strategy must be ova or pairwise",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub strategy: Strategy,
    pub epochs: usize,
    /// L2 regularization weight.
    pub lambda: f64,
    /// Initial step; epoch `e` uses `eta0 / (1 + e)`.
    pub eta0: f64,
    pub seed: u64,
    pub averaging: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Ova,
            epochs: 10,
            lambda: 1e-4,
            eta0: 0.1,
            seed: 0,
            averaging: true,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        if self.epochs < 1 {
            return Err(ClassifierError::InvalidConfig("epochs must be at least 1"));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(ClassifierError::InvalidConfig(
                "lambda must be finite and non-negative",
            ));
        }
        if !(self.eta0 > 0.0 && self.eta0.is_finite()) {
            return Err(ClassifierError::InvalidConfig("eta0 must be positive"));
        }
        if self.eta0 * self.lambda >= 1.0 {
            return Err(ClassifierError::InvalidConfig(
                "eta0 * lambda must be below 1",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenExample {
    pub features: FeatureVector,
    pub tag: BioTag,
}

/// Featurized tokens with gold tags and the dictionary that indexes them.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    pub dict: FeatureDictionary,
    pub examples: Vec<TokenExample>,
    pub features: FeatureTemplateConfig,
    pub pos_tagger: FrequencyPosTagger,
}

impl TrainingSet {
    /// Gold tags in first-seen order, deduplicated and sorted canonically.
    pub fn labels(&self) -> Vec<BioTag> {
        let mut labels: Vec<BioTag> = self.examples.iter().map(|e| e.tag).collect();
        labels.sort();
        labels.dedup();
        labels
    }
}

/// Featurizes every labelled utterance with gold context.
///
/// The POS lexicon is learned from utterances that carry their own tags; the
/// rest are tagged with it.
pub fn build_training_set(
    dialogues: &[Dialogue],
    features: &FeatureTemplateConfig,
) -> Result<TrainingSet, ClassifierError> {
    let wrap = |d: &Dialogue| {
        let id = d.id.clone();
        move |source| ClassifierError::Feature {
            dialogue: id.clone(),
            source,
        }
    };
    features
        .validate()
        .map_err(|source| ClassifierError::Feature {
            dialogue: "<config>".into(),
            source,
        })?;
    let pos_tagger = FrequencyPosTagger::from_utterances(
        dialogues
            .iter()
            .flat_map(|d| d.utterances().map(|(_, u)| u)),
    );
    let mut dict = FeatureDictionary::new();
    let mut examples = Vec::new();
    for d in dialogues {
        let err = wrap(d);
        let mut prev_act = None;
        for (speaker, utt) in d.utterances() {
            if utt.tokens.is_empty() {
                prev_act = utt.act.or(prev_act);
                continue;
            }
            let tags = encode_bio(utt).map_err(&err)?;
            let pos = resolve_pos(utt, &pos_tagger).map_err(&err)?;
            for position in 0..utt.tokens.len() {
                let ctx = ExtractionContext {
                    tokens: &utt.tokens,
                    pos: &pos,
                    speaker,
                    prev_act,
                    prev_tags: &tags[..position],
                };
                let fv = extract_features(&ctx, position, features, &mut dict).map_err(&err)?;
                examples.push(TokenExample {
                    features: fv,
                    tag: tags[position],
                });
            }
            prev_act = utt.act;
        }
    }
    dict.freeze();
    Ok(TrainingSet {
        dict,
        examples,
        features: *features,
        pos_tagger,
    })
}

/// The binary tasks of one training run, ready to be solved in any order.
///
/// Solving every task with [`TrainingPlan::solve`] and handing the results to
/// [`TrainingPlan::finish`] in task order gives the same model no matter how
/// the solves were scheduled.
#[derive(Debug)]
pub struct TrainingPlan<'a> {
    set: &'a TrainingSet,
    labels: Vec<BioTag>,
    config: TrainConfig,
    /// Example indices in the once-shuffled visiting order.
    order: Vec<usize>,
    /// `(positive label, negative label or None for the rest)`
    tasks: Vec<(usize, Option<usize>)>,
}

impl<'a> TrainingPlan<'a> {
    pub fn new(
        set: &'a TrainingSet,
        labels: Vec<BioTag>,
        config: TrainConfig,
    ) -> Result<Self, ClassifierError> {
        config.validate()?;
        if set.examples.is_empty() {
            return Err(ClassifierError::EmptyTrainingData);
        }
        if labels.is_empty() {
            return Err(ClassifierError::InvalidConfig("label set is empty"));
        }
        let mut labels = labels;
        labels.sort();
        labels.dedup();
        if config.strategy == Strategy::Pairwise {
            for &label in &labels {
                if !set.examples.iter().any(|e| e.tag == label) {
                    return Err(ClassifierError::EmptyLabel(label));
                }
            }
        }
        let mut order: Vec<usize> = (0..set.examples.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(config.seed));
        let n = labels.len();
        let tasks = match config.strategy {
            Strategy::Ova => (0..n).map(|i| (i, None)).collect(),
            Strategy::Pairwise => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, Some(j))))
                .collect(),
        };
        Ok(Self {
            set,
            labels,
            config,
            order,
            tasks,
        })
    }

    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    pub fn labels(&self) -> &[BioTag] {
        &self.labels
    }

    /// Features and ±1 targets of task `k`, in visiting order.
    pub fn task_data(&self, k: usize) -> (Vec<&'a FeatureVector>, Vec<f64>) {
        let (pos, neg) = self.tasks[k];
        let positive = self.labels[pos];
        let negative = neg.map(|j| self.labels[j]);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let set: &'a TrainingSet = self.set;
        for &i in &self.order {
            let ex = &set.examples[i];
            let y = if ex.tag == positive {
                1.0
            } else if negative.is_none() || negative == Some(ex.tag) {
                -1.0
            } else {
                continue;
            };
            xs.push(&ex.features);
            ys.push(y);
        }
        (xs, ys)
    }

    pub fn solve(&self, k: usize) -> BinaryWeights {
        let (xs, ys) = self.task_data(k);
        train_binary(
            &BinaryTask {
                features: &xs,
                targets: &ys,
                dim: self.set.dict.len(),
            },
            &self.config,
        )
    }

    pub fn solve_traced(&self, k: usize) -> SgdOutcome {
        let (xs, ys) = self.task_data(k);
        train_binary_traced(
            &BinaryTask {
                features: &xs,
                targets: &ys,
                dim: self.set.dict.len(),
            },
            &self.config,
        )
    }

    pub fn finish(self, vectors: Vec<BinaryWeights>) -> Result<LinearModel, ClassifierError> {
        if vectors.len() != self.tasks.len() {
            return Err(ClassifierError::MalformedModel(
                "one weight vector per task expected",
            ));
        }
        LinearModel::new(
            self.labels,
            self.set.dict.clone(),
            self.config,
            self.set.features,
            self.set.pos_tagger.clone(),
            vectors,
        )
    }
}

/// Trains on the labels present in the data.
pub fn train(set: &TrainingSet, config: &TrainConfig) -> Result<LinearModel, ClassifierError> {
    train_with_labels(set, set.labels(), config)
}

pub fn train_with_labels(
    set: &TrainingSet,
    labels: Vec<BioTag>,
    config: &TrainConfig,
) -> Result<LinearModel, ClassifierError> {
    let plan = TrainingPlan::new(set, labels, *config)?;
    let vectors = (0..plan.task_count()).map(|k| plan.solve(k)).collect();
    plan.finish(vectors)
}
