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

//! Core of the yosr dialogue-act tagger for Egyptian Arabic dialogues.
//!
//! Utterance labelling is cast as text chunking: every token receives a
//! `B-<Act>` / `I-<Act>` tag, a multiclass linear max-margin classifier
//! predicts the tags from a sliding window of contextual features, and the
//! utterance act is recovered from the predicted tag sequence.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, configuration and
//! the command line live in the `yosr` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classifier;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod normalize;
pub mod translit;

mod float;

pub use classifier::{LinearModel, Strategy, TrainConfig};
pub use corpus::{ActLabel, Dialogue, Domain, Genre, SpeakerType, Turn, Utterance};
pub use eval::{EvalReport, Prf};
pub use features::{BioTag, FeatureDictionary, FeatureTemplateConfig, FeatureVector};
pub use normalize::{NormalizationConfig, Preprocessor};
pub use translit::TransliterationTable;
