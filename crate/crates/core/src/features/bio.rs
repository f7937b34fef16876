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

//! BIO chunk tags over utterance tokens.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FeatureError;
use crate::corpus::{ActLabel, Utterance};

/// `B-<Act>`, `I-<Act>` or `O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BioTag {
    B(ActLabel),
    I(ActLabel),
    O,
}

impl BioTag {
    pub fn act(self) -> Option<ActLabel> {
        match self {
            BioTag::B(a) | BioTag::I(a) => Some(a),
            BioTag::O => None,
        }
    }

    /// Canonical position: acts in schema order with B before I, then O.
    pub fn rank(self) -> usize {
        match self {
            BioTag::B(a) => 2 * a.index(),
            BioTag::I(a) => 2 * a.index() + 1,
            BioTag::O => 2 * ActLabel::ALL.len(),
        }
    }
}

impl Ord for BioTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for BioTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BioTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BioTag::B(a) => write!(f, "B-{a}"),
            BioTag::I(a) => write!(f, "I-{a}"),
            BioTag::O => f.write_str("O"),
        }
    }
}

impl FromStr for BioTag {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FeatureError::BadTag(s.into());
        if s == "O" {
            return Ok(BioTag::O);
        }
        let (prefix, act) = s.split_once('-').ok_or_else(bad)?;
        let act: ActLabel = act.parse().map_err(|_| bad())?;
        match prefix {
            "B" => Ok(BioTag::B(act)),
            "I" => Ok(BioTag::I(act)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BioTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BioTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// First token `B-act`, every following token `I-act`.
pub fn encode_bio(utterance: &Utterance) -> Result<Vec<BioTag>, FeatureError> {
    let act = utterance.act.ok_or(FeatureError::MissingAct)?;
    if utterance.tokens.is_empty() {
        return Err(FeatureError::EmptyUtterance);
    }
    Ok((0..utterance.tokens.len())
        .map(|i| {
            if i == 0 {
                BioTag::B(act)
            } else {
                BioTag::I(act)
            }
        })
        .collect())
}

/// Rewrites every `I-X` not preceded by `B-X`/`I-X` into `B-X`.
pub fn repair_bio(tags: &[BioTag]) -> Vec<BioTag> {
    let mut out: Vec<BioTag> = Vec::with_capacity(tags.len());
    for &tag in tags {
        let fixed = match tag {
            BioTag::I(act) if out.last().and_then(|p| p.act()) != Some(act) => BioTag::B(act),
            other => other,
        };
        out.push(fixed);
    }
    out
}

/// True when no `I-X` follows anything but `B-X` or `I-X`.
pub fn is_valid_bio(tags: &[BioTag]) -> bool {
    let mut prev: Option<BioTag> = None;
    for &tag in tags {
        if let BioTag::I(act) = tag {
            if prev.and_then(BioTag::act) != Some(act) {
                return false;
            }
        }
        prev = Some(tag);
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodedAct {
    pub act: ActLabel,
    /// Every tag was `O`; `act` is the fallback.
    pub all_o: bool,
}

/// Majority act among non-`O` tags; ties go to the act seen first.
pub fn decode_utterance_act(tags: &[BioTag], fallback: ActLabel) -> DecodedAct {
    let mut votes = [0usize; ActLabel::COUNT];
    let mut first_seen = [usize::MAX; ActLabel::COUNT];
    for (i, act) in tags
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.act().map(|a| (i, a)))
    {
        votes[act.index()] += 1;
        first_seen[act.index()] = first_seen[act.index()].min(i);
    }
    let winner = ActLabel::ALL
        .iter()
        .copied()
        .filter(|a| votes[a.index()] > 0)
        .max_by(|a, b| {
            votes[a.index()]
                .cmp(&votes[b.index()])
                .then(first_seen[b.index()].cmp(&first_seen[a.index()]))
                .then(b.index().cmp(&a.index()))
        });
    match winner {
        Some(act) => DecodedAct { act, all_o: false },
        None => DecodedAct {
            act: fallback,
            all_o: true,
        },
    }
}
