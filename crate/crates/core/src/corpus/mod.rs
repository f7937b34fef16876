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

//! Corpus data model: dialogues, turns and act-labelled utterances.

mod act;
mod split;
mod stats;
mod synth;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use act::{ActLabel, UnknownAct};
pub use split::{split_dataset, DatasetSplit, Ratios};
pub use stats::{stats, CorpusStats, Counts};
pub use synth::{default_keyword_map, synth_corpus, CuePlacement, SynthSpec};

use crate::normalize::Preprocessor;
use crate::translit::TranslitError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("need at least {needed} dialogues to split, got {got}")]
    TooFewDialogues { needed: usize, got: usize },
    #[error("split ratios must be non-negative and sum to 1, got {0:?}")]
    BadRatios([f64; 3]),
    #[error("synthetic corpus needs signature tokens for at least 5 acts, got {0}")]
    TooFewSignatureActs(usize),
    #[error("unknown {kind} {value:?}")]
    UnknownName { kind: &'static str, value: String },
    #[error(transparent)]
    Translit(#[from] TranslitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeakerType {
    Operator,
    Customer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Domain {
    Banks,
    Flights,
    MobileNetworkOperators,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Genre {
    Spoken,
    Im,
}

impl SpeakerType {
    pub fn name(self) -> &'static str {
        match self {
            SpeakerType::Operator => "operator",
            SpeakerType::Customer => "customer",
        }
    }
}

impl Domain {
    pub const ALL: [Domain; 4] = [
        Domain::Banks,
        Domain::Flights,
        Domain::MobileNetworkOperators,
        Domain::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Domain::Banks => "Banks",
            Domain::Flights => "Flights",
            Domain::MobileNetworkOperators => "MobileNetworkOperators",
            Domain::Other => "Other",
        }
    }
}

impl Genre {
    pub fn name(self) -> &'static str {
        match self {
            Genre::Spoken => "spoken",
            Genre::Im => "im",
        }
    }
}

macro_rules! named_enum {
    ($ty:ty, $kind:literal, [$($v:expr),+]) => {
        impl FromStr for $ty {
            type Err = CorpusError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                [$($v),+]
                    .into_iter()
                    .find(|v| v.name() == s)
                    .ok_or_else(|| CorpusError::UnknownName { kind: $kind, value: s.into() })
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_enum!(
    SpeakerType,
    "speaker",
    [SpeakerType::Operator, SpeakerType::Customer]
);
named_enum!(
    Domain,
    "domain",
    [
        Domain::Banks,
        Domain::Flights,
        Domain::MobileNetworkOperators,
        Domain::Other
    ]
);
named_enum!(Genre, "genre", [Genre::Spoken, Genre::Im]);

/// The smallest unit of speech carrying a single act.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    /// Buckwalter tokens after preprocessing.
    pub tokens: Vec<String>,
    pub raw_text: String,
    /// Optional POS tags, one per token.
    pub pos: Option<Vec<String>>,
    pub act: Option<ActLabel>,
}

impl Utterance {
    pub fn from_text(
        text: &str,
        act: Option<ActLabel>,
        pre: &Preprocessor,
    ) -> Result<Self, TranslitError> {
        Ok(Self {
            tokens: pre.tokens(text)?,
            raw_text: text.into(),
            pos: None,
            act,
        })
    }

    /// An utterance built from already-transliterated tokens.
    pub fn from_tokens(tokens: Vec<String>, act: Option<ActLabel>) -> Self {
        let raw_text = tokens.join(" ");
        Self {
            tokens,
            raw_text,
            pos: None,
            act,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Turn {
    pub speaker: SpeakerType,
    pub utterances: Vec<Utterance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dialogue {
    pub id: String,
    pub domain: Domain,
    pub genre: Genre,
    pub turns: Vec<Turn>,
}

impl Dialogue {
    /// Utterances in dialogue order, paired with their speaker.
    pub fn utterances(&self) -> impl Iterator<Item = (SpeakerType, &Utterance)> + '_ {
        self.turns
            .iter()
            .flat_map(|turn| turn.utterances.iter().map(move |u| (turn.speaker, u)))
    }

    pub fn utterance_count(&self) -> usize {
        self.turns.iter().map(|t| t.utterances.len()).sum()
    }

    /// Gold acts in dialogue order; `None` for unlabelled utterances.
    pub fn gold_acts(&self) -> Vec<Option<ActLabel>> {
        self.utterances().map(|(_, u)| u.act).collect()
    }
}
