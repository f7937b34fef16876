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

//! Seeded synthetic dialogues whose acts are recoverable from a signature
//! token. The JANA corpus is not distributed, so this is the test substrate.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ActLabel, CorpusError, Dialogue, Domain, Genre, SpeakerType, Turn, Utterance};
use crate::normalize::Preprocessor;

/// Act-neutral words, all stable under normalization and waw splitting.
const FILLER: &[&str] = &[
    "انا",
    "عندي",
    "حساب",
    "في",
    "البنك",
    "النهارده",
    "ممكن",
    "بس",
    "كده",
    "الخدمه",
    "رقم",
    "الكارت",
    "دلوقتي",
    "يعني",
    "من",
    "الرصيد",
    "الشهر",
    "هو",
    "ده",
    "اللي",
    "لسه",
    "برضه",
    "الرحله",
    "الباقه",
    "السيستم",
    "العرض",
];

/// Where the signature token sits inside an utterance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuePlacement {
    /// Uniformly among the first `max_offset + 1` tokens.
    Leading { max_offset: usize },
    /// Always exactly this many tokens after the utterance head.
    Offset(usize),
}

#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub n_dialogues: usize,
    pub seed: u64,
    /// Signature words (Arabic script) for each act.
    pub act_keyword_map: Vec<(ActLabel, Vec<String>)>,
    pub cue: CuePlacement,
    /// Inclusive ranges.
    pub turns_per_dialogue: (usize, usize),
    pub utterances_per_turn: (usize, usize),
    pub tokens_per_utterance: (usize, usize),
}

impl SynthSpec {
    pub fn new(n_dialogues: usize, seed: u64) -> Self {
        Self {
            n_dialogues,
            seed,
            act_keyword_map: default_keyword_map(),
            cue: CuePlacement::Leading { max_offset: 2 },
            turns_per_dialogue: (8, 14),
            utterances_per_turn: (1, 3),
            tokens_per_utterance: (2, 5),
        }
    }
}

/// Eight call-centre acts with one dialect signature word each.
pub fn default_keyword_map() -> Vec<(ActLabel, Vec<String>)> {
    [
        (ActLabel::Greeting, "السلام"),
        (ActLabel::ServiceQuestion, "عايز"),
        (ActLabel::ServiceAnswer, "متاح"),
        (ActLabel::ConfirmQuestion, "حضرتك"),
        (ActLabel::Agree, "تمام"),
        (ActLabel::Disagree, "لا"),
        (ActLabel::Thanking, "شكرا"),
        (ActLabel::Closing, "باي"),
    ]
    .into_iter()
    .map(|(act, word)| (act, alloc::vec![word.to_string()]))
    .collect()
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize)) -> usize {
    rng.gen_range(lo..=hi.max(lo))
}

pub fn synth_corpus(spec: &SynthSpec, pre: &Preprocessor) -> Result<Vec<Dialogue>, CorpusError> {
    let acts: Vec<&(ActLabel, Vec<String>)> = spec
        .act_keyword_map
        .iter()
        .filter(|(_, words)| !words.is_empty())
        .collect();
    if acts.len() < 5 {
        return Err(CorpusError::TooFewSignatureActs(acts.len()));
    }
    let filler: Vec<&str> = FILLER
        .iter()
        .copied()
        .filter(|w| !acts.iter().any(|(_, words)| words.iter().any(|k| k == w)))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let domains = [
        Domain::Banks,
        Domain::Flights,
        Domain::MobileNetworkOperators,
    ];
    let mut out = Vec::with_capacity(spec.n_dialogues);

    for i in 0..spec.n_dialogues {
        let domain = domains[i % domains.len()];
        let genre = if domain == Domain::MobileNetworkOperators {
            Genre::Im
        } else {
            Genre::Spoken
        };
        let n_turns = draw(&mut rng, spec.turns_per_dialogue).max(1);
        let mut turns = Vec::with_capacity(n_turns);
        for t in 0..n_turns {
            let speaker = if t % 2 == 0 {
                SpeakerType::Operator
            } else {
                SpeakerType::Customer
            };
            let n_utts = draw(&mut rng, spec.utterances_per_turn).max(1);
            let mut utterances = Vec::with_capacity(n_utts);
            for _ in 0..n_utts {
                let (act, words) = acts.choose(&mut rng).expect("non-empty");
                let cue = words.choose(&mut rng).expect("non-empty");
                let (len, at) = match spec.cue {
                    CuePlacement::Leading { max_offset } => {
                        let len = draw(&mut rng, spec.tokens_per_utterance).max(1);
                        (len, rng.gen_range(0..=max_offset.min(len - 1)))
                    }
                    CuePlacement::Offset(k) => {
                        let (lo, hi) = spec.tokens_per_utterance;
                        (draw(&mut rng, (lo.max(k + 1), hi.max(k + 1))), k)
                    }
                };
                let words: Vec<&str> = (0..len)
                    .map(|j| {
                        if j == at {
                            cue.as_str()
                        } else {
                            filler.choose(&mut rng).copied().unwrap_or("ده")
                        }
                    })
                    .collect();
                utterances.push(Utterance::from_text(&words.join(" "), Some(*act), pre)?);
            }
            turns.push(Turn {
                speaker,
                utterances,
            });
        }
        out.push(Dialogue {
            id: format!("synth-{i:04}"),
            domain,
            genre,
            turns,
        });
    }
    Ok(out)
}
