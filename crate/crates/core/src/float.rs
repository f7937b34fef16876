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

//! The handful of float helpers `core` does not provide without `std`.

/// Rounds a non-negative value to `decimals` places, halves away from zero.
///
/// A relative nudge of 1e-9 absorbs representation error so that values like
/// 84.375 (stored as 84.37499999...) still round up.
pub(crate) fn round_half_up(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi_core(decimals);
    let scaled = value * scale;
    let nudged = scaled + 0.5 + scaled.abs() * 1e-12 + 1e-9;
    if !(0.0..9.0e15).contains(&nudged) {
        return value;
    }
    (nudged as u64) as f64 / scale
}

trait PowiCore {
    fn powi_core(self, n: u32) -> f64;
}

impl PowiCore for f64 {
    fn powi_core(self, n: u32) -> f64 {
        let mut out = 1.0;
        for _ in 0..n {
            out *= self;
        }
        out
    }
}
