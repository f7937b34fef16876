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
use alloc::string::String;
use alloc::vec::Vec;

/// Sorted, deduplicated indices of the binary features that fire.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FeatureVector(Vec<u32>);

impl FeatureVector {
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        FeatureVector(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dot product with a dense weight vector.
    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.0.iter().map(|&i| weights[i as usize]).sum()
    }
}

/// Feature string ↔ dense index. Grows until frozen.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureDictionary {
    index: BTreeMap<String, u32>,
    names: Vec<String>,
    frozen: bool,
}

impl FeatureDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds a frozen dictionary from names listed in index order.
    /// Returns `None` on duplicate names.
    pub fn from_names(names: Vec<String>) -> Option<Self> {
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i as u32).is_some() {
                return None;
            }
        }
        Some(Self {
            index,
            names,
            frozen: true,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Index for `name`, inserting it unless the dictionary is frozen.
    pub fn intern(&mut self, name: &str) -> Option<u32> {
        if let Some(&i) = self.index.get(name) {
            return Some(i);
        }
        if self.frozen {
            return None;
        }
        let i = self.names.len() as u32;
        self.names.push(name.into());
        self.index.insert(name.into(), i);
        Some(i)
    }

    pub fn encode<S: AsRef<str>>(&mut self, features: &[S]) -> FeatureVector {
        FeatureVector::new(
            features
                .iter()
                .filter_map(|f| self.intern(f.as_ref()))
                .collect(),
        )
    }

    /// Lookup-only encoding; unseen features are dropped.
    pub fn encode_frozen<S: AsRef<str>>(&self, features: &[S]) -> FeatureVector {
        FeatureVector::new(
            features
                .iter()
                .filter_map(|f| self.get(f.as_ref()))
                .collect(),
        )
    }
}
