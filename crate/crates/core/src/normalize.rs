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

//! Orthographic normalization, tokenization and conjunction splitting.
//!
//! The fixed order is `normalize_chars → tokenize → split_waw → to_buckwalter`;
//! [`Preprocessor`] bundles it.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::translit::{TranslitError, TransliterationTable};

const ALIF: char = '\u{0627}';
const ALIF_MADDA: char = '\u{0622}';
const ALIF_HAMZA_ABOVE: char = '\u{0623}';
const ALIF_HAMZA_BELOW: char = '\u{0625}';
const TEH_MARBUTA: char = '\u{0629}';
const HEH: char = '\u{0647}';
const ALIF_MAKSURA: char = '\u{0649}';
const YEH: char = '\u{064A}';
pub const WAW: char = '\u{0648}';

/// Characters detached from words as standalone tokens.
pub const PUNCTUATION: &[char] = &['.', ',', '!', '?', '\u{061F}', '\u{060C}'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationConfig {
    pub unify_alif: bool,
    pub teh_marbuta_to_heh: bool,
    pub alif_maksura_to_yeh: bool,
    pub split_waw: bool,
    /// Minimum number of letters left after removing the conjunction. At least 1.
    pub waw_min_remainder: usize,
    pub waw_lexicon: Option<BTreeSet<String>>,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        Self {
            unify_alif: true,
            teh_marbuta_to_heh: true,
            alif_maksura_to_yeh: true,
            split_waw: true,
            waw_min_remainder: 2,
            waw_lexicon: None,
        }
    }
}

impl NormalizationConfig {
    pub fn with_lexicon(mut self, words: impl IntoIterator<Item = String>) -> Self {
        self.waw_lexicon = Some(words.into_iter().collect());
        self
    }
}

/// Applies the enabled one-to-one character rules.
pub fn normalize_chars(text: &str, cfg: &NormalizationConfig) -> String {
    text.chars().map(|ch| normalize_char(ch, cfg)).collect()
}

fn normalize_char(ch: char, cfg: &NormalizationConfig) -> char {
    match ch {
        ALIF_MADDA | ALIF_HAMZA_ABOVE | ALIF_HAMZA_BELOW if cfg.unify_alif => ALIF,
        TEH_MARBUTA if cfg.teh_marbuta_to_heh => HEH,
        ALIF_MAKSURA if cfg.alif_maksura_to_yeh => YEH,
        other => other,
    }
}

/// Splits a leading conjunction و off a word when the rule allows it.
pub fn split_waw(token: &str, cfg: &NormalizationConfig) -> Vec<String> {
    let Some(remainder) = token.strip_prefix(WAW) else {
        return vec![token.to_string()];
    };
    let long_enough = remainder.chars().count() >= cfg.waw_min_remainder.max(1);
    let known = cfg
        .waw_lexicon
        .as_ref()
        .is_none_or(|lex| lex.contains(remainder));
    if cfg.split_waw && long_enough && known {
        vec![WAW.to_string(), remainder.to_string()]
    } else {
        vec![token.to_string()]
    }
}

/// Whitespace tokenization with punctuation detached into its own tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let mut current = String::new();
        for ch in word.chars() {
            if PUNCTUATION.contains(&ch) {
                if !current.is_empty() {
                    tokens.push(core::mem::take(&mut current));
                }
                tokens.push(ch.to_string());
            } else {
                current.push(ch);
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}

/// The full text-to-token pipeline.
#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    pub normalization: NormalizationConfig,
    pub table: TransliterationTable,
}

impl Preprocessor {
    pub fn new(normalization: NormalizationConfig, table: TransliterationTable) -> Self {
        Self {
            normalization,
            table,
        }
    }

    /// Normalized, tokenized and waw-split Arabic tokens.
    pub fn arabic_tokens(&self, text: &str) -> Vec<String> {
        let normalized = normalize_chars(text, &self.normalization);
        tokenize(&normalized)
            .iter()
            .flat_map(|tok| split_waw(tok, &self.normalization))
            .collect()
    }

    /// Buckwalter tokens, the representation features are built from.
    pub fn tokens(&self, text: &str) -> Result<Vec<String>, TranslitError> {
        self.arabic_tokens(text)
            .iter()
            .map(|tok| self.table.to_buckwalter(tok))
            .collect()
    }
}
