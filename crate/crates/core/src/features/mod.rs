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

//! BIO codec and sparse per-token feature extraction.
//!
//! Three feature families describe a token position: the contextual window
//! (tokens and POS tags at relative offsets), utterance meta information
//! (speaker type, previous utterance act) and, optionally, the two previously
//! predicted token tags. Conjunctions of every pair can be added to stand in
//! for a polynomial kernel.

mod bio;
mod dictionary;
mod pos;
mod template;

use alloc::string::String;

use thiserror::Error;

pub use bio::{decode_utterance_act, encode_bio, is_valid_bio, repair_bio, BioTag, DecodedAct};
pub use dictionary::{FeatureDictionary, FeatureVector};
pub use pos::{pos_tag, resolve_pos, FrequencyPosTagger, PosProvider, UNKNOWN_POS};
pub use template::{
    extract_features, extract_features_frozen, feature_strings, ExtractionContext,
    FeatureTemplateConfig, NONE, PAD,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeatureError {
    #[error("utterance has no gold act")]
    MissingAct,
    #[error("utterance has no tokens")]
    EmptyUtterance,
    #[error("malformed BIO tag {0:?}")]
    BadTag(String),
    #[error("position {position} out of range for {len} tokens")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("window {left}/{right} outside -5..=0..=+5")]
    BadWindow { left: i32, right: i32 },
    #[error("{pos} POS tags for {tokens} tokens")]
    PosLengthMismatch { pos: usize, tokens: usize },
}
