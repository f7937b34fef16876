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

use alloc::collections::BTreeMap;
use core::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use super::{Dialogue, Domain};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub dialogues: usize,
    pub turns: usize,
    pub utterances: usize,
    /// Tokens after preprocessing.
    pub words: usize,
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, rhs: Counts) -> Counts {
        Counts {
            dialogues: self.dialogues + rhs.dialogues,
            turns: self.turns + rhs.turns,
            utterances: self.utterances + rhs.utterances,
            words: self.words + rhs.words,
        }
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, rhs: Counts) {
        *self = *self + rhs;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub by_domain: BTreeMap<Domain, Counts>,
    pub overall: Counts,
}

impl Add for CorpusStats {
    type Output = CorpusStats;

    fn add(mut self, rhs: CorpusStats) -> CorpusStats {
        for (domain, counts) in rhs.by_domain {
            *self.by_domain.entry(domain).or_default() += counts;
        }
        self.overall += rhs.overall;
        self
    }
}

fn count(d: &Dialogue) -> Counts {
    Counts {
        dialogues: 1,
        turns: d.turns.len(),
        utterances: d.utterance_count(),
        words: d.utterances().map(|(_, u)| u.tokens.len()).sum(),
    }
}

pub fn stats(dialogues: &[Dialogue]) -> CorpusStats {
    let mut out = CorpusStats::default();
    for d in dialogues {
        let c = count(d);
        *out.by_domain.entry(d.domain).or_default() += c;
        out.overall += c;
    }
    out
}
