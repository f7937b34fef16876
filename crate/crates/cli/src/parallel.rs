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

//! Multi-threaded training. Binary problems are independent, so workers pull
//! task indices from a shared counter and the results are reassembled in task
//! order; the model is identical for every thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use yosr_core::classifier::{BinaryWeights, ClassifierError, TrainingPlan, TrainingSet};
use yosr_core::{LinearModel, TrainConfig};

pub fn train_parallel(
    set: &TrainingSet,
    config: &TrainConfig,
    jobs: usize,
) -> Result<LinearModel, ClassifierError> {
    let plan = TrainingPlan::new(set, set.labels(), *config)?;
    let n = plan.task_count();
    let jobs = jobs.clamp(1, n.max(1));
    if jobs == 1 {
        let vectors = (0..n).map(|k| plan.solve(k)).collect();
        return plan.finish(vectors);
    }
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, BinaryWeights)> = thread::scope(|s| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        if k >= n {
                            break out;
                        }
                        out.push((k, plan.solve(k)));
                    }
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("training worker panicked"))
            .collect()
    });
    done.sort_by_key(|(k, _)| *k);
    plan.finish(done.into_iter().map(|(_, w)| w).collect())
}

/// Worker count when none is given.
pub fn default_jobs() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}
