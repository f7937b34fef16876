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

//! Token files, one token per line with four tab-separated columns
//! `TOKEN POS SPEAKER BIOTAG`:
//!
//! ```text
//! # dialogue=d1 turn=0
//! EAyz VERB customer B-Service-Question
//! AErf VERB customer I-Service-Question
//!
//! ```
//!
//! (tabs shown as spaces). A blank line closes an utterance; a comment line
//! opens a turn.

use yosr_core::corpus::{Dialogue, Domain, Genre, Turn, Utterance};
use yosr_core::features::{decode_utterance_act, encode_bio, BioTag, UNKNOWN_POS};
use yosr_core::{ActLabel, TransliterationTable};

use crate::error::{Error, Result};

/// Writes gold tags, or the given per-utterance tags when `tags` is set.
/// Utterances without POS tags get [`UNKNOWN_POS`]; utterances without an act
/// are written as `O`.
pub fn write_conll(dialogues: &[Dialogue], tags: Option<&[Vec<Vec<BioTag>>]>) -> String {
    let mut out = String::new();
    for (di, d) in dialogues.iter().enumerate() {
        let mut ui = 0;
        for (ti, turn) in d.turns.iter().enumerate() {
            out.push_str(&format!("# dialogue={} turn={}\n", d.id, ti));
            for utt in &turn.utterances {
                let row = match tags {
                    Some(t) => t[di][ui].clone(),
                    None => encode_bio(utt).unwrap_or_else(|_| vec![BioTag::O; utt.tokens.len()]),
                };
                for (i, token) in utt.tokens.iter().enumerate() {
                    let pos = utt.pos.as_ref().map_or(UNKNOWN_POS, |p| p[i].as_str());
                    out.push_str(&format!("{token}\t{pos}\t{}\t{}\n", turn.speaker, row[i]));
                }
                out.push('\n');
                ui += 1;
            }
        }
    }
    out
}

fn parse_comment(line: usize, body: &str) -> Result<(String, usize)> {
    let mut id = None;
    let mut turn = None;
    for field in body.split_whitespace() {
        match field.split_once('=') {
            Some(("dialogue", v)) => id = Some(v.to_string()),
            Some(("turn", v)) => {
                turn = Some(v.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad turn number {v:?}"),
                })?)
            }
            _ => {}
        }
    }
    match (id, turn) {
        (Some(id), Some(turn)) => Ok((id, turn)),
        _ => Err(Error::Parse {
            line,
            message: "expected `# dialogue=ID turn=N`".into(),
        }),
    }
}

/// Reads dialogues back. The utterance act is the majority act of its tags;
/// all-`O` utterances have no act. Domain and genre are not stored in the
/// format and come back as `Other` and `spoken`.
pub fn read_conll(text: &str, table: &TransliterationTable) -> Result<Vec<Dialogue>> {
    let mut dialogues: Vec<Dialogue> = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut pos: Vec<String> = Vec::new();
    let mut tags: Vec<BioTag> = Vec::new();
    let mut speaker = None;
    let mut current_turn = None;

    let flush = |dialogues: &mut Vec<Dialogue>,
                 tokens: &mut Vec<String>,
                 pos: &mut Vec<String>,
                 tags: &mut Vec<BioTag>,
                 speaker: &mut Option<yosr_core::SpeakerType>,
                 line: usize|
     -> Result<()> {
        if tokens.is_empty() {
            return Ok(());
        }
        let d = dialogues.last_mut().ok_or(Error::Parse {
            line,
            message: "token before any `# dialogue=` line".into(),
        })?;
        let decoded = decode_utterance_act(tags, ActLabel::Inform);
        let act = (!decoded.all_o).then_some(decoded.act);
        let mut utt = Utterance::from_tokens(std::mem::take(tokens), act);
        utt.raw_text = table.from_buckwalter(&utt.tokens.join(" "));
        utt.pos = Some(std::mem::take(pos));
        tags.clear();
        let turn = d.turns.last_mut().expect("turn opened with its dialogue");
        let s = speaker.take().expect("speaker set with the first token");
        if turn.utterances.is_empty() {
            turn.speaker = s;
        } else if turn.speaker != s {
            return Err(Error::Parse {
                line,
                message: "speaker changes inside a turn".into(),
            });
        }
        turn.utterances.push(utt);
        Ok(())
    };

    let mut line_no = 0;
    for (i, line) in text.lines().enumerate() {
        line_no = i + 1;
        if let Some(body) = line.strip_prefix('#') {
            flush(
                &mut dialogues,
                &mut tokens,
                &mut pos,
                &mut tags,
                &mut speaker,
                line_no,
            )?;
            let (id, turn) = parse_comment(line_no, body)?;
            if dialogues.last().is_none_or(|d| d.id != id) {
                if dialogues.iter().any(|d| d.id == id) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("dialogue {id:?} is not contiguous"),
                    });
                }
                dialogues.push(Dialogue {
                    id,
                    domain: Domain::Other,
                    genre: Genre::Spoken,
                    turns: Vec::new(),
                });
                current_turn = None;
            }
            if current_turn.is_some_and(|t| turn <= t) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("turn {turn} out of order"),
                });
            }
            current_turn = Some(turn);
            let d = dialogues.last_mut().expect("just pushed");
            if d.turns.last().is_some_and(|t| t.utterances.is_empty()) {
                return Err(Error::Parse {
                    line: line_no - 1,
                    message: "turn without utterances".into(),
                });
            }
            d.turns.push(Turn {
                speaker: yosr_core::SpeakerType::Operator,
                utterances: Vec::new(),
            });
            continue;
        }
        if line.trim().is_empty() {
            flush(
                &mut dialogues,
                &mut tokens,
                &mut pos,
                &mut tags,
                &mut speaker,
                line_no,
            )?;
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [token, p, s, t] = cols[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 4 tab-separated columns, found {}", cols.len()),
            });
        };
        let parsed_speaker =
            s.parse()
                .map_err(|e: yosr_core::corpus::CorpusError| Error::Parse {
                    line: line_no,
                    message: e.to_string(),
                })?;
        match speaker {
            Some(prev) if prev != parsed_speaker => {
                return Err(Error::Parse {
                    line: line_no,
                    message: "speaker changes inside an utterance".into(),
                })
            }
            _ => speaker = Some(parsed_speaker),
        }
        let tag: BioTag =
            t.parse().map_err(
                |_| match t.strip_prefix("B-").or_else(|| t.strip_prefix("I-")) {
                    Some(name) => Error::UnknownAct {
                        line: line_no,
                        name: name.into(),
                    },
                    None => Error::Parse {
                        line: line_no,
                        message: format!("bad tag {t:?}"),
                    },
                },
            )?;
        tokens.push(token.into());
        pos.push(p.into());
        tags.push(tag);
    }
    flush(
        &mut dialogues,
        &mut tokens,
        &mut pos,
        &mut tags,
        &mut speaker,
        line_no,
    )?;
    if let Some(d) = dialogues
        .iter()
        .find(|d| d.turns.iter().any(|t| t.utterances.is_empty()))
    {
        return Err(Error::Parse {
            line: line_no,
            message: format!("dialogue {:?} has a turn without utterances", d.id),
        });
    }
    Ok(dialogues)
}
