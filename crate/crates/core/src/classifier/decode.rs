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

//! Greedy left-to-right decoding of utterances and dialogues.

use alloc::vec::Vec;

use super::{ClassifierError, LinearModel};
use crate::corpus::{ActLabel, Dialogue, SpeakerType, Utterance};
use crate::features::{
    decode_utterance_act, extract_features_frozen, repair_bio, resolve_pos, BioTag,
    ExtractionContext,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictOptions {
    /// Act reported when every predicted tag is `O`.
    pub fallback: ActLabel,
    /// Feed the gold act of the previous utterance instead of the prediction.
    pub teacher_forcing: bool,
}

impl Default for PredictOptions {
    fn default() -> Self {
        Self {
            fallback: ActLabel::Inform,
            teacher_forcing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtterancePrediction {
    /// Repaired tags, one per token.
    pub tags: Vec<BioTag>,
    pub act: ActLabel,
    /// No token received an act; `act` is the fallback.
    pub all_o: bool,
}

/// Tags one utterance token by token, feeding back its own previous tags.
pub fn predict_utterance(
    model: &LinearModel,
    utterance: &Utterance,
    speaker: SpeakerType,
    prev_act: Option<ActLabel>,
    fallback: ActLabel,
) -> Result<UtterancePrediction, ClassifierError> {
    let wrap = |source| ClassifierError::Feature {
        dialogue: utterance.raw_text.clone(),
        source,
    };
    let pos = resolve_pos(utterance, model.pos_tagger()).map_err(wrap)?;
    let mut raw: Vec<BioTag> = Vec::with_capacity(utterance.tokens.len());
    for position in 0..utterance.tokens.len() {
        let ctx = ExtractionContext {
            tokens: &utterance.tokens,
            pos: &pos,
            speaker,
            prev_act,
            prev_tags: &raw,
        };
        let fv = extract_features_frozen(&ctx, position, model.feature_config(), model.dict())
            .map_err(wrap)?;
        raw.push(model.predict_token(&fv).tag);
    }
    let tags = repair_bio(&raw);
    let decoded = decode_utterance_act(&tags, fallback);
    Ok(UtterancePrediction {
        tags,
        act: decoded.act,
        all_o: decoded.all_o,
    })
}

/// Predicts every utterance in order; each sees the previous prediction as its
/// previous act.
pub fn predict_dialogue(
    model: &LinearModel,
    dialogue: &Dialogue,
) -> Result<Vec<UtterancePrediction>, ClassifierError> {
    predict_dialogue_with(model, dialogue, &PredictOptions::default())
}

pub fn predict_dialogue_with(
    model: &LinearModel,
    dialogue: &Dialogue,
    options: &PredictOptions,
) -> Result<Vec<UtterancePrediction>, ClassifierError> {
    if !model.dict().is_frozen() {
        return Err(ClassifierError::DictionaryNotFrozen);
    }
    let mut out = Vec::with_capacity(dialogue.utterance_count());
    let mut prev_act = None;
    for (speaker, utt) in dialogue.utterances() {
        let p = predict_utterance(model, utt, speaker, prev_act, options.fallback).map_err(
            |e| match e {
                ClassifierError::Feature { source, .. } => ClassifierError::Feature {
                    dialogue: dialogue.id.clone(),
                    source,
                },
                other => other,
            },
        )?;
        prev_act = if options.teacher_forcing {
            utt.act
        } else {
            Some(p.act)
        };
        out.push(p);
    }
    Ok(out)
}
