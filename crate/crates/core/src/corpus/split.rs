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

//! Whole-dialogue train/dev/test splitting, balanced on turn counts.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CorpusError, Dialogue};

/// Train/dev/test proportions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratios(pub [f64; 3]);

impl Default for Ratios {
    fn default() -> Self {
        Ratios([0.7, 0.2, 0.1])
    }
}

impl Ratios {
    pub fn new(train: f64, dev: f64, test: f64) -> Result<Self, CorpusError> {
        let r = [train, dev, test];
        let sum: f64 = r.iter().sum();
        if r.iter().any(|x| !x.is_finite() || *x < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(CorpusError::BadRatios(r));
        }
        Ok(Ratios(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSplit {
    pub train: Vec<Dialogue>,
    pub dev: Vec<Dialogue>,
    pub test: Vec<Dialogue>,
    pub seed: u64,
}

impl DatasetSplit {
    pub fn parts(&self) -> [&[Dialogue]; 3] {
        [&self.train, &self.dev, &self.test]
    }
}

/// Shuffles by `seed`, then hands each dialogue to the part whose turn count
/// lags furthest behind its target. Ties go to the earlier part.
///
/// Every part ends within one maximal dialogue (in turns) of its target.
pub fn split_dataset(
    dialogues: &[Dialogue],
    ratios: Ratios,
    seed: u64,
) -> Result<DatasetSplit, CorpusError> {
    Ratios::new(ratios.0[0], ratios.0[1], ratios.0[2])?;
    if dialogues.len() < 3 {
        return Err(CorpusError::TooFewDialogues {
            needed: 3,
            got: dialogues.len(),
        });
    }
    let mut order: Vec<usize> = (0..dialogues.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let total: usize = dialogues.iter().map(|d| d.turns.len()).sum();
    let targets = ratios.0.map(|r| r * total as f64);
    let tie = 1e-9 * (total.max(1) as f64);
    let mut filled = [0usize; 3];
    let mut parts: [Vec<Dialogue>; 3] = Default::default();

    for idx in order {
        let mut best = 0;
        for k in 1..3 {
            let deficit = targets[k] - filled[k] as f64;
            let best_deficit = targets[best] - filled[best] as f64;
            if deficit > best_deficit + tie {
                best = k;
            }
        }
        filled[best] += dialogues[idx].turns.len();
        parts[best].push(dialogues[idx].clone());
    }

    let [train, dev, test] = parts;
    Ok(DatasetSplit {
        train,
        dev,
        test,
        seed,
    })
}
