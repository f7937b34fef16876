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

//! Per-act and overall precision, recall, F1 and accuracy.
//!
//! All values are percentages. Undefined ratios (0/0) are reported as 0 and
//! the affected acts are listed in the report.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ActLabel;
use crate::float::round_half_up;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{gold} gold labels but {predicted} predictions")]
    LengthMismatch { gold: usize, predicted: usize },
    #[error("nothing to evaluate")]
    Empty,
    #[error("act {0} is not in the evaluated label set")]
    UnknownLabel(ActLabel),
    #[error("json: {0}")]
    Json(String),
    #[error("unknown {kind} {value:?}")]
    UnknownName { kind: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

fn percent(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

impl Prf {
    pub fn from_pr(precision: f64, recall: f64) -> Self {
        Prf {
            precision,
            recall,
            f1: f1_score(precision, recall),
        }
    }
}

pub fn prf(tp: u64, fp: u64, fn_: u64) -> Prf {
    Prf::from_pr(percent(tp, tp + fp), percent(tp, tp + fn_))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ActScores {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub support: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Overall {
    pub micro: Prf,
    pub macro_avg: Prf,
    /// Support-weighted averages of per-act P and R.
    pub weighted: Prf,
    pub accuracy: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregate {
    Micro,
    Macro,
    #[default]
    Weighted,
}

impl Aggregate {
    pub fn name(self) -> &'static str {
        match self {
            Aggregate::Micro => "micro",
            Aggregate::Macro => "macro",
            Aggregate::Weighted => "weighted",
        }
    }
}

impl FromStr for Aggregate {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "micro" => Ok(Aggregate::Micro),
            "macro" => Ok(Aggregate::Macro),
            "weighted" => Ok(Aggregate::Weighted),
            _ => Err(EvalError::UnknownName {
                kind: "aggregate",
                value: s.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub labels: Vec<ActLabel>,
    pub per_act: BTreeMap<ActLabel, ActScores>,
    pub overall: Overall,
    /// `confusion[gold][predicted]`, indexed like `labels`.
    pub confusion: Vec<Vec<u64>>,
    /// Acts with gold support that were never predicted (precision is 0/0).
    pub undefined_precision: Vec<ActLabel>,
    pub total: u64,
}

impl Overall {
    pub fn get(&self, which: Aggregate) -> Prf {
        match which {
            Aggregate::Micro => self.micro,
            Aggregate::Macro => self.macro_avg,
            Aggregate::Weighted => self.weighted,
        }
    }
}

/// Builds the confusion matrix over `labels` and derives every score from it.
pub fn report(
    gold: &[ActLabel],
    predicted: &[ActLabel],
    labels: &[ActLabel],
) -> Result<EvalReport, EvalError> {
    if gold.len() != predicted.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            predicted: predicted.len(),
        });
    }
    if gold.is_empty() {
        return Err(EvalError::Empty);
    }
    let position = |a: ActLabel| {
        labels
            .iter()
            .position(|&l| l == a)
            .ok_or(EvalError::UnknownLabel(a))
    };
    let n = labels.len();
    let mut confusion = vec![vec![0u64; n]; n];
    for (&g, &p) in gold.iter().zip(predicted) {
        confusion[position(g)?][position(p)?] += 1;
    }

    let total = gold.len() as u64;
    let mut per_act = BTreeMap::new();
    let mut undefined_precision = Vec::new();
    let (mut tp_sum, mut fp_sum, mut fn_sum) = (0u64, 0u64, 0u64);
    let (mut macro_p, mut macro_r, mut macro_n) = (0.0, 0.0, 0usize);
    let (mut weighted_p, mut weighted_r) = (0.0, 0.0);

    for (i, &act) in labels.iter().enumerate() {
        let tp = confusion[i][i];
        let support: u64 = confusion[i].iter().sum();
        let predicted_count: u64 = confusion.iter().map(|row| row[i]).sum();
        let fp = predicted_count - tp;
        let fn_ = support - tp;
        let s = prf(tp, fp, fn_);
        if support > 0 && predicted_count == 0 {
            undefined_precision.push(act);
        }
        if support > 0 || predicted_count > 0 {
            macro_p += s.precision;
            macro_r += s.recall;
            macro_n += 1;
        }
        weighted_p += support as f64 * s.precision;
        weighted_r += support as f64 * s.recall;
        tp_sum += tp;
        fp_sum += fp;
        fn_sum += fn_;
        per_act.insert(
            act,
            ActScores {
                tp,
                fp,
                fn_,
                support,
                precision: s.precision,
                recall: s.recall,
                f1: s.f1,
            },
        );
    }

    let macro_n = macro_n.max(1) as f64;
    let overall = Overall {
        micro: prf(tp_sum, fp_sum, fn_sum),
        macro_avg: Prf::from_pr(macro_p / macro_n, macro_r / macro_n),
        weighted: Prf::from_pr(weighted_p / total as f64, weighted_r / total as f64),
        accuracy: percent(tp_sum, total),
    };
    Ok(EvalReport {
        labels: labels.to_vec(),
        per_act,
        overall,
        confusion,
        undefined_precision,
        total,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableStyle {
    /// Act rows plus an "Over All" row, trimmed 2-decimal values.
    #[default]
    Plain,
    Tsv,
    Json,
}

impl FromStr for TableStyle {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(TableStyle::Plain),
            "tsv" => Ok(TableStyle::Tsv),
            "json" => Ok(TableStyle::Json),
            _ => Err(EvalError::UnknownName {
                kind: "table style",
                value: s.into(),
            }),
        }
    }
}

/// Two decimals, half-up, trailing zeros dropped: 100, 96.3, 94.12.
pub fn format_percent(value: f64) -> String {
    let mut s = alloc::format!("{:.2}", round_half_up(value, 2));
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

fn fixed(value: f64) -> String {
    alloc::format!("{:.2}", round_half_up(value, 2))
}

pub fn render_table(report: &EvalReport, style: TableStyle, overall: Aggregate) -> String {
    let mut out = String::new();
    match style {
        TableStyle::Plain => {
            out.push_str("Act Precision Recall F1\n");
            for act in &report.labels {
                let s = &report.per_act[act];
                if s.support == 0 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "{} {} {} {}",
                    act,
                    format_percent(s.precision),
                    format_percent(s.recall),
                    format_percent(s.f1)
                );
            }
            let o = report.overall.get(overall);
            let _ = writeln!(
                out,
                "Over All {} {} {}",
                format_percent(o.precision),
                format_percent(o.recall),
                format_percent(o.f1)
            );
        }
        TableStyle::Tsv => {
            out.push_str("act\tsupport\ttp\tfp\tfn\tprecision\trecall\tf1\n");
            for act in &report.labels {
                let s = &report.per_act[act];
                let _ = writeln!(
                    out,
                    "{act}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    s.support,
                    s.tp,
                    s.fp,
                    s.fn_,
                    fixed(s.precision),
                    fixed(s.recall),
                    fixed(s.f1)
                );
            }
            for agg in [Aggregate::Micro, Aggregate::Macro, Aggregate::Weighted] {
                let o = report.overall.get(agg);
                let _ = writeln!(
                    out,
                    "overall-{}\t{}\t\t\t\t{}\t{}\t{}",
                    agg.name(),
                    report.total,
                    fixed(o.precision),
                    fixed(o.recall),
                    fixed(o.f1)
                );
            }
            let _ = writeln!(
                out,
                "accuracy\t{}\t\t\t\t\t\t{}",
                report.total,
                fixed(report.overall.accuracy)
            );
        }
        TableStyle::Json => {
            out = serde_json::to_string(report).expect("report serializes");
            out.push('\n');
        }
    }
    out
}

pub fn report_from_json(text: &str) -> Result<EvalReport, EvalError> {
    serde_json::from_str(text).map_err(|e| EvalError::Json(alloc::format!("{e}")))
}
