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

//! File formats, configuration, parallel training and the command line for
//! the yosr dialogue-act tagger.
//!
//! The algorithms live in [`yosr_core`]; this crate reads and writes corpora
//! (JSONL and CoNLL), binary model files and `key = value` configuration, and
//! drives whole experiments.

pub mod cli;
pub mod config;
pub mod conll;
pub mod error;
pub mod jsonl;
pub mod model_file;
pub mod parallel;
pub mod pipeline;

pub use error::{Error, Result};
