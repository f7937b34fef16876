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

//! Pluggable part-of-speech tags.
//!
//! The original system took POS from a full morphological analyzer. Here a
//! corpus may carry its own tags (CoNLL column); otherwise a most-frequent-tag
//! lexicon learned from the training data fills them in.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::FeatureError;
use crate::corpus::Utterance;

pub const UNKNOWN_POS: &str = "NOUN";

pub trait PosProvider {
    fn tag(&self, tokens: &[String]) -> Vec<String>;
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyPosTagger {
    lexicon: BTreeMap<String, String>,
}

impl FrequencyPosTagger {
    /// Picks the most frequent tag per word; ties go to the smallest tag string.
    pub fn from_observations<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut counts: BTreeMap<&str, BTreeMap<&str, usize>> = BTreeMap::new();
        for (word, tag) in pairs {
            *counts.entry(word).or_default().entry(tag).or_default() += 1;
        }
        let lexicon = counts
            .into_iter()
            .filter_map(|(word, tags)| {
                let mut best: Option<(&str, usize)> = None;
                for (tag, n) in tags {
                    if best.is_none_or(|(_, m)| n > m) {
                        best = Some((tag, n));
                    }
                }
                best.map(|(tag, _)| (word.into(), tag.into()))
            })
            .collect();
        Self { lexicon }
    }

    /// Learns from every pre-tagged utterance.
    pub fn from_utterances<'a>(utterances: impl IntoIterator<Item = &'a Utterance>) -> Self {
        let mut pairs = Vec::new();
        for u in utterances {
            if let Some(pos) = &u.pos {
                pairs.extend(
                    u.tokens
                        .iter()
                        .map(String::as_str)
                        .zip(pos.iter().map(String::as_str)),
                );
            }
        }
        Self::from_observations(pairs)
    }

    pub fn from_lexicon(lexicon: BTreeMap<String, String>) -> Self {
        Self { lexicon }
    }

    pub fn lexicon(&self) -> &BTreeMap<String, String> {
        &self.lexicon
    }
}

impl PosProvider for FrequencyPosTagger {
    fn tag(&self, tokens: &[String]) -> Vec<String> {
        tokens
            .iter()
            .map(|t| {
                self.lexicon
                    .get(t)
                    .cloned()
                    .unwrap_or_else(|| UNKNOWN_POS.into())
            })
            .collect()
    }
}

pub fn pos_tag(tokens: &[String], provider: &dyn PosProvider) -> Vec<String> {
    provider.tag(tokens)
}

/// The utterance's own tags when present, otherwise the provider's.
pub fn resolve_pos(
    utterance: &Utterance,
    provider: &dyn PosProvider,
) -> Result<Vec<String>, FeatureError> {
    match &utterance.pos {
        Some(pos) if pos.len() == utterance.tokens.len() => Ok(pos.clone()),
        Some(pos) => Err(FeatureError::PosLengthMismatch {
            pos: pos.len(),
            tokens: utterance.tokens.len(),
        }),
        None => Ok(provider.tag(&utterance.tokens)),
    }
}
