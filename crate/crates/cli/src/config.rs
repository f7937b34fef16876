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

//! `key = value` configuration files.
//!
//! ```text
//! # training
//! strategy = pairwise
//! window = -3,+3
//! no-quadratic = true
//! ```
//!
//! Keys are long option names without the leading dashes. Boolean switches
//! take `true` or `false`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub fn parse_config(text: &str) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, found {line:?}"),
            });
        };
        let key = key.trim();
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("bad key {key:?}"),
            });
        }
        if let Some(prev) = out.iter().find(|e| e.key == key) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("{key} already set on line {}", prev.line),
            });
        }
        out.push(Entry {
            line: i + 1,
            key: key.into(),
            value: value.trim().into(),
        });
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<Vec<Entry>> {
    parse_config(&fs::read_to_string(path).map_err(Error::io(path))?)
}

pub fn parse_bool(entry: &Entry) -> Result<bool> {
    match entry.value.as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(Error::Parse {
            line: entry.line,
            message: format!("{}: expected true or false, found {other:?}", entry.key),
        }),
    }
}
