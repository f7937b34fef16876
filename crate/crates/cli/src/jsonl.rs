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

//! JSONL corpus files: one dialogue per line.
//!
//! ```text
//! {"id":"d1","domain":"Banks","genre":"spoken","turns":[{"speaker":"operator","utterances":[{"text":"...","act":"Greeting"}]}]}
//! ```
//!
//! Utterances may also carry `"pos"` (one tag per preprocessed token) and
//! `"pred_act"` (a predicted act, written by `predict`).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use yosr_core::corpus::{ActLabel, Dialogue, Turn, Utterance};
use yosr_core::Preprocessor;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DialogueRecord {
    pub id: String,
    pub domain: String,
    pub genre: String,
    pub turns: Vec<TurnRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub speaker: String,
    pub utterances: Vec<UtteranceRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtteranceRecord {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pred_act: Option<String>,
}

fn parse_act(name: &str, line: usize) -> Result<ActLabel> {
    name.parse().map_err(|_| Error::UnknownAct {
        line,
        name: name.into(),
    })
}

fn parse_named<T: std::str::FromStr<Err = yosr_core::corpus::CorpusError>>(
    value: &str,
    line: usize,
) -> Result<T> {
    value
        .parse()
        .map_err(|e: yosr_core::corpus::CorpusError| Error::Parse {
            line,
            message: e.to_string(),
        })
}

impl DialogueRecord {
    pub fn from_dialogue(d: &Dialogue, predictions: Option<&[ActLabel]>) -> Self {
        let mut preds = predictions.map(|p| p.iter());
        DialogueRecord {
            id: d.id.clone(),
            domain: d.domain.name().into(),
            genre: d.genre.name().into(),
            turns: d
                .turns
                .iter()
                .map(|t| TurnRecord {
                    speaker: t.speaker.name().into(),
                    utterances: t
                        .utterances
                        .iter()
                        .map(|u| UtteranceRecord {
                            text: u.raw_text.clone(),
                            act: u.act.map(|a| a.name().into()),
                            pos: u.pos.clone(),
                            pred_act: preds
                                .as_mut()
                                .and_then(|p| p.next())
                                .map(|a| a.name().into()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn into_dialogue(self, line: usize, pre: &Preprocessor) -> Result<Dialogue> {
        let mut turns = Vec::with_capacity(self.turns.len());
        for t in self.turns {
            let mut utterances = Vec::with_capacity(t.utterances.len());
            for u in t.utterances {
                let act = u.act.as_deref().map(|a| parse_act(a, line)).transpose()?;
                let mut utt = Utterance::from_text(&u.text, act, pre)?;
                if let Some(pos) = u.pos {
                    if pos.len() != utt.tokens.len() {
                        return Err(Error::Parse {
                            line,
                            message: format!(
                                "{} POS tags for {} tokens in {:?}",
                                pos.len(),
                                utt.tokens.len(),
                                u.text
                            ),
                        });
                    }
                    utt.pos = Some(pos);
                }
                utterances.push(utt);
            }
            if utterances.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!("dialogue {}: turn without utterances", self.id),
                });
            }
            turns.push(Turn {
                speaker: parse_named(&t.speaker, line)?,
                utterances,
            });
        }
        Ok(Dialogue {
            id: self.id,
            domain: parse_named(&self.domain, line)?,
            genre: parse_named(&self.genre, line)?,
            turns,
        })
    }
}

/// Parses records line by line; blank lines are skipped. Line numbers are 1-based.
pub fn parse_records(text: &str) -> Result<Vec<(usize, DialogueRecord)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push((i + 1, record));
    }
    Ok(out)
}

pub fn read_jsonl(text: &str, pre: &Preprocessor) -> Result<Vec<Dialogue>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (line, record) in parse_records(text)? {
        let d = record.into_dialogue(line, pre)?;
        if !seen.insert(d.id.clone()) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate dialogue id {:?}", d.id),
            });
        }
        out.push(d);
    }
    Ok(out)
}

pub fn load_jsonl(path: &Path, pre: &Preprocessor) -> Result<Vec<Dialogue>> {
    read_jsonl(&fs::read_to_string(path).map_err(Error::io(path))?, pre)
}

/// Canonical serialization: one compact JSON object per line.
pub fn write_jsonl(dialogues: &[Dialogue]) -> String {
    let mut out = String::new();
    for d in dialogues {
        out.push_str(
            &serde_json::to_string(&DialogueRecord::from_dialogue(d, None))
                .expect("record serializes"),
        );
        out.push('\n');
    }
    out
}

/// Like [`write_jsonl`], adding `pred_act` to every utterance.
pub fn write_jsonl_with_predictions(
    dialogues: &[Dialogue],
    predictions: &[Vec<ActLabel>],
) -> String {
    let mut out = String::new();
    for (d, p) in dialogues.iter().zip(predictions) {
        out.push_str(
            &serde_json::to_string(&DialogueRecord::from_dialogue(d, Some(p)))
                .expect("record serializes"),
        );
        out.push('\n');
    }
    out
}

pub fn save_jsonl(path: &Path, dialogues: &[Dialogue]) -> Result<()> {
    fs::write(path, write_jsonl(dialogues)).map_err(Error::io(path))
}

/// One optional act per utterance.
pub type ActColumn = Vec<Option<ActLabel>>;

/// Gold (`act`) and predicted (`pred_act`) labels of every utterance in order.
pub fn act_columns(text: &str) -> Result<(ActColumn, ActColumn)> {
    let mut gold = Vec::new();
    let mut pred = Vec::new();
    for (line, record) in parse_records(text)? {
        for u in record.turns.iter().flat_map(|t| &t.utterances) {
            gold.push(u.act.as_deref().map(|a| parse_act(a, line)).transpose()?);
            pred.push(
                u.pred_act
                    .as_deref()
                    .map(|a| parse_act(a, line))
                    .transpose()?,
            );
        }
    }
    Ok((gold, pred))
}

#[cfg(test)]
mod tests {
    use super::*;
    use yosr_core::corpus::{Domain, SpeakerType};

    const ONE: &str = r#"{"id":"d1","domain":"Banks","genre":"spoken","turns":[{"speaker":"customer","utterances":[{"text":"عايز اعرف","act":"Service-Question"}]}]}"#;

    #[test]
    fn reads_one_dialogue() {
        let ds = read_jsonl(ONE, &Preprocessor::default()).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].domain, Domain::Banks);
        assert_eq!(ds[0].turns.len(), 1);
        assert_eq!(ds[0].turns[0].speaker, SpeakerType::Customer);
        let u = &ds[0].turns[0].utterances[0];
        assert_eq!(u.tokens, ["EAyz", "AErf"]);
        assert_eq!(u.act, Some(ActLabel::ServiceQuestion));
        assert_eq!(write_jsonl(&ds), format!("{ONE}\n"));
    }

    #[test]
    fn unknown_act_names_line() {
        let text = format!("\n{}", ONE.replace("Service-Question", "Foo"));
        match read_jsonl(&text, &Preprocessor::default()) {
            Err(Error::UnknownAct { line, name }) => {
                assert_eq!(line, 2);
                assert_eq!(name, "Foo");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_line_is_reported() {
        let text = format!("{ONE}\n{{\"id\": 3");
        assert!(matches!(
            read_jsonl(&text, &Preprocessor::default()),
            Err(Error::Parse { line: 2, .. })
        ));
        let dup = format!("{ONE}\n{ONE}\n");
        assert!(matches!(
            read_jsonl(&dup, &Preprocessor::default()),
            Err(Error::Parse { line: 2, .. })
        ));
        let bad_domain = ONE.replace("Banks", "Cars");
        assert!(matches!(
            read_jsonl(&bad_domain, &Preprocessor::default()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn predictions_column() {
        let ds = read_jsonl(ONE, &Preprocessor::default()).unwrap();
        let text = write_jsonl_with_predictions(&ds, &[vec![ActLabel::Agree]]);
        assert!(text.contains(r#""pred_act":"Agree""#));
        let (gold, pred) = act_columns(&text).unwrap();
        assert_eq!(gold, [Some(ActLabel::ServiceQuestion)]);
        assert_eq!(pred, [Some(ActLabel::Agree)]);
    }
}
