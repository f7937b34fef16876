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

//! Buckwalter transliteration between Arabic script and ASCII.
//!
//! Tokens are carried through the rest of the pipeline in their Buckwalter
//! form, so feature strings stay ASCII and diffable.

use alloc::collections::BTreeMap;
use alloc::string::String;

use thiserror::Error;

/// Standard Buckwalter letters, diacritics and the extended letters used in
/// Egyptian dialect text.
const BUCKWALTER: &[(char, char)] = &[
    ('\u{0621}', '\''), // hamza
    ('\u{0622}', '|'),  // alef with madda
    ('\u{0623}', '>'),  // alef with hamza above
    ('\u{0624}', '&'),  // waw with hamza
    ('\u{0625}', '<'),  // alef with hamza below
    ('\u{0626}', '}'),  // yeh with hamza
    ('\u{0627}', 'A'),
    ('\u{0628}', 'b'),
    ('\u{0629}', 'p'), // teh marbuta
    ('\u{062A}', 't'),
    ('\u{062B}', 'v'),
    ('\u{062C}', 'j'),
    ('\u{062D}', 'H'),
    ('\u{062E}', 'x'),
    ('\u{062F}', 'd'),
    ('\u{0630}', '*'),
    ('\u{0631}', 'r'),
    ('\u{0632}', 'z'),
    ('\u{0633}', 's'),
    ('\u{0634}', '$'),
    ('\u{0635}', 'S'),
    ('\u{0636}', 'D'),
    ('\u{0637}', 'T'),
    ('\u{0638}', 'Z'),
    ('\u{0639}', 'E'),
    ('\u{063A}', 'g'),
    ('\u{0640}', '_'), // tatweel
    ('\u{0641}', 'f'),
    ('\u{0642}', 'q'),
    ('\u{0643}', 'k'),
    ('\u{0644}', 'l'),
    ('\u{0645}', 'm'),
    ('\u{0646}', 'n'),
    ('\u{0647}', 'h'),
    ('\u{0648}', 'w'),
    ('\u{0649}', 'Y'), // alef maksura
    ('\u{064A}', 'y'),
    ('\u{064B}', 'F'), // fathatan
    ('\u{064C}', 'N'), // dammatan
    ('\u{064D}', 'K'), // kasratan
    ('\u{064E}', 'a'), // fatha
    ('\u{064F}', 'u'), // damma
    ('\u{0650}', 'i'), // kasra
    ('\u{0651}', '~'), // shadda
    ('\u{0652}', 'o'), // sukun
    ('\u{0670}', '`'), // dagger alef
    ('\u{0671}', '{'), // alef wasla
    ('\u{067E}', 'P'), // peh
    ('\u{0686}', 'J'), // tcheh
    ('\u{06A4}', 'V'), // veh
    ('\u{06A9}', 'c'), // keheh
    ('\u{06AF}', 'G'), // gaf
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslitError {
    #[error("unmapped Arabic codepoint {ch:?} (U+{code:04X}) at byte offset {offset}", code = *.ch as u32)]
    UnmappedCodepoint { ch: char, offset: usize },
}

/// Bidirectional Arabic ↔ ASCII map.
#[derive(Debug, Clone)]
pub struct TransliterationTable {
    to_ascii: BTreeMap<char, char>,
    to_arabic: BTreeMap<char, char>,
    /// Reject unmapped Arabic-block codepoints instead of passing them through.
    pub strict_mode: bool,
}

impl Default for TransliterationTable {
    fn default() -> Self {
        Self::buckwalter()
    }
}

impl TransliterationTable {
    /// The standard Buckwalter scheme, non-strict.
    pub fn buckwalter() -> Self {
        Self::from_pairs(BUCKWALTER.iter().copied()).expect("built-in table is a bijection")
    }

    /// Builds a table from `(arabic, ascii)` pairs. Returns `None` when the pairs
    /// do not form an injective map in both directions or an image is not ASCII.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (char, char)>) -> Option<Self> {
        let mut to_ascii = BTreeMap::new();
        let mut to_arabic = BTreeMap::new();
        for (arabic, ascii) in pairs {
            if !ascii.is_ascii() || arabic.is_ascii() {
                return None;
            }
            if to_ascii.insert(arabic, ascii).is_some() || to_arabic.insert(ascii, arabic).is_some()
            {
                return None;
            }
        }
        Some(Self {
            to_ascii,
            to_arabic,
            strict_mode: false,
        })
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict_mode = strict;
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (char, char)> + '_ {
        self.to_ascii.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.to_ascii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_ascii.is_empty()
    }

    pub fn ascii_for(&self, ch: char) -> Option<char> {
        self.to_ascii.get(&ch).copied()
    }

    pub fn arabic_for(&self, ch: char) -> Option<char> {
        self.to_arabic.get(&ch).copied()
    }

    pub fn to_buckwalter(&self, text: &str) -> Result<String, TranslitError> {
        let mut out = String::with_capacity(text.len());
        for (offset, ch) in text.char_indices() {
            match self.to_ascii.get(&ch) {
                Some(&ascii) => out.push(ascii),
                None if self.strict_mode && is_arabic_block(ch) => {
                    return Err(TranslitError::UnmappedCodepoint { ch, offset });
                }
                None => out.push(ch),
            }
        }
        Ok(out)
    }

    pub fn from_buckwalter(&self, text: &str) -> String {
        text.chars()
            .map(|ch| self.to_arabic.get(&ch).copied().unwrap_or(ch))
            .collect()
    }
}

/// Arabic, Arabic Supplement, Arabic Extended-A and the presentation forms.
pub fn is_arabic_block(ch: char) -> bool {
    matches!(ch as u32,
        0x0600..=0x06FF | 0x0750..=0x077F | 0x08A0..=0x08FF | 0xFB50..=0xFDFF | 0xFE70..=0xFEFF)
}

pub fn to_buckwalter(text: &str, table: &TransliterationTable) -> Result<String, TranslitError> {
    table.to_buckwalter(text)
}

pub fn from_buckwalter(text: &str, table: &TransliterationTable) -> String {
    table.from_buckwalter(text)
}
