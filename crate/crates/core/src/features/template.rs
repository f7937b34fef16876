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

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{BioTag, FeatureDictionary, FeatureError, FeatureVector};
use crate::corpus::{ActLabel, SpeakerType};

/// Filler for window offsets that fall outside the utterance.
pub const PAD: &str = "__PAD__";
/// Filler for an absent previous act or previous tag.
pub const NONE: &str = "__NONE__";

const CONJUNCTION: &str = " & ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureTemplateConfig {
    /// Leftmost window offset, in `-5..=0`.
    pub left: i32,
    /// Rightmost window offset, in `0..=5`.
    pub right: i32,
    pub use_tokens: bool,
    pub use_pos: bool,
    pub use_speaker: bool,
    pub use_prev_act: bool,
    /// The two previously predicted tags inside the utterance.
    pub use_prev_tags: bool,
    /// All pairwise conjunctions of the base features.
    pub quadratic: bool,
}

impl Default for FeatureTemplateConfig {
    fn default() -> Self {
        Self {
            left: -2,
            right: 2,
            use_tokens: true,
            use_pos: true,
            use_speaker: true,
            use_prev_act: true,
            use_prev_tags: true,
            quadratic: true,
        }
    }
}

impl FeatureTemplateConfig {
    pub fn with_window(self, left: i32, right: i32) -> Self {
        Self {
            left,
            right,
            ..self
        }
    }

    pub fn symmetric(size: i32) -> Self {
        Self::default().with_window(-size, size)
    }

    pub fn validate(&self) -> Result<(), FeatureError> {
        if (-5..=0).contains(&self.left) && (0..=5).contains(&self.right) {
            Ok(())
        } else {
            Err(FeatureError::BadWindow {
                left: self.left,
                right: self.right,
            })
        }
    }
}

/// Everything the templates can see when describing one token.
#[derive(Debug, Clone, Copy)]
pub struct ExtractionContext<'a> {
    pub tokens: &'a [String],
    /// One tag per token; may be empty when POS features are off.
    pub pos: &'a [String],
    pub speaker: SpeakerType,
    pub prev_act: Option<ActLabel>,
    /// Tags already assigned to the preceding tokens of this utterance.
    pub prev_tags: &'a [BioTag],
}

/// The feature strings for `position`, in template order.
///
/// Naming: `tok[-1]=w`, `pos[2]=NOUN`, `speaker=customer`, `prev_act=Agree`,
/// `prev_tag[-1]=B-Agree`; conjunctions join two names with `" & "`.
pub fn feature_strings(
    ctx: &ExtractionContext<'_>,
    position: usize,
    cfg: &FeatureTemplateConfig,
) -> Result<Vec<String>, FeatureError> {
    let len = ctx.tokens.len();
    if position >= len {
        return Err(FeatureError::PositionOutOfRange { position, len });
    }
    cfg.validate()?;
    if cfg.use_pos && ctx.pos.len() != len {
        return Err(FeatureError::PosLengthMismatch {
            pos: ctx.pos.len(),
            tokens: len,
        });
    }

    fn at(column: &[String], position: usize, offset: i32) -> &str {
        let j = position as i64 + offset as i64;
        if (0..column.len() as i64).contains(&j) {
            column[j as usize].as_str()
        } else {
            PAD
        }
    }

    let mut base = Vec::new();
    if cfg.use_tokens {
        for offset in cfg.left..=cfg.right {
            base.push(format!(
                "tok[{offset}]={}",
                at(ctx.tokens, position, offset)
            ));
        }
    }
    if cfg.use_pos {
        for offset in cfg.left..=cfg.right {
            base.push(format!("pos[{offset}]={}", at(ctx.pos, position, offset)));
        }
    }
    if cfg.use_speaker {
        base.push(format!("speaker={}", ctx.speaker.name()));
    }
    if cfg.use_prev_act {
        match ctx.prev_act {
            Some(act) => base.push(format!("prev_act={act}")),
            None => base.push(format!("prev_act={NONE}")),
        }
    }
    if cfg.use_prev_tags {
        for back in 1..=2usize {
            match ctx
                .prev_tags
                .len()
                .checked_sub(back)
                .map(|i| ctx.prev_tags[i])
            {
                Some(tag) => base.push(format!("prev_tag[-{back}]={tag}")),
                None => base.push(format!("prev_tag[-{back}]={NONE}")),
            }
        }
    }

    if cfg.quadratic {
        let n = base.len();
        let mut out = Vec::with_capacity(n + n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(format!("{}{CONJUNCTION}{}", base[i], base[j]));
            }
        }
        base.extend(out);
    }
    Ok(base)
}

/// Training-time extraction: unseen features grow the dictionary.
pub fn extract_features(
    ctx: &ExtractionContext<'_>,
    position: usize,
    cfg: &FeatureTemplateConfig,
    dict: &mut FeatureDictionary,
) -> Result<FeatureVector, FeatureError> {
    Ok(dict.encode(&feature_strings(ctx, position, cfg)?))
}

/// Test-time extraction against a frozen dictionary.
pub fn extract_features_frozen(
    ctx: &ExtractionContext<'_>,
    position: usize,
    cfg: &FeatureTemplateConfig,
    dict: &FeatureDictionary,
) -> Result<FeatureVector, FeatureError> {
    Ok(dict.encode_frozen(&feature_strings(ctx, position, cfg)?))
}
