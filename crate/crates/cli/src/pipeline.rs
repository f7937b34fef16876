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

//! End-to-end experiments: split each domain, train, evaluate, and compare
//! window sizes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use yosr_core::classifier::{build_training_set, predict_dialogue};
use yosr_core::corpus::{split_dataset, stats, Counts, DatasetSplit, Ratios};
use yosr_core::eval::{format_percent, render_table, report, Aggregate, TableStyle};
use yosr_core::{
    ActLabel, Dialogue, Domain, EvalReport, FeatureTemplateConfig, LinearModel, TrainConfig,
};

use crate::error::{Error, Result};
use crate::model_file::save_model;
use crate::parallel::train_parallel;

/// Name of the experiment that pools every domain.
pub const COMBINED: &str = "Combined";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ratios: Ratios,
    pub features: FeatureTemplateConfig,
    /// Its seed also drives the splits.
    pub train: TrainConfig,
    pub aggregate: Aggregate,
    pub style: TableStyle,
    pub sweep_window: bool,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ratios: Ratios::default(),
            features: FeatureTemplateConfig::default(),
            train: TrainConfig::default(),
            aggregate: Aggregate::default(),
            style: TableStyle::default(),
            sweep_window: false,
            jobs: 1,
        }
    }
}

pub fn format_window(f: &FeatureTemplateConfig) -> String {
    format!("{},{:+}", f.left, f.right)
}

pub fn feature_names(f: &FeatureTemplateConfig) -> String {
    let all = [
        (f.use_tokens, "tokens"),
        (f.use_pos, "pos"),
        (f.use_speaker, "speaker"),
        (f.use_prev_act, "prev-act"),
        (f.use_prev_tags, "prev-tags"),
        (f.quadratic, "quadratic"),
    ];
    let on: Vec<&str> = all.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect();
    if on.is_empty() {
        "none".into()
    } else {
        on.join(",")
    }
}

impl RunConfig {
    /// Every setting that influences the output, as `# key = value` lines.
    pub fn header(&self) -> String {
        let t = &self.train;
        let [a, b, c] = self.ratios.0;
        let mut out = String::new();
        for (k, v) in [
            ("seed", t.seed.to_string()),
            ("ratios", format!("{a},{b},{c}")),
            ("strategy", t.strategy.to_string()),
            ("epochs", t.epochs.to_string()),
            ("lambda", t.lambda.to_string()),
            ("eta0", t.eta0.to_string()),
            ("averaging", t.averaging.to_string()),
            ("window", format_window(&self.features)),
            ("features", feature_names(&self.features)),
            ("overall", self.aggregate.name().to_string()),
        ] {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out
    }
}

/// Utterance-level predictions scored against the gold acts. Utterances
/// without a gold act are skipped; `None` when nothing is labelled.
pub fn evaluate(model: &LinearModel, dialogues: &[Dialogue]) -> Result<Option<EvalReport>> {
    let mut gold = Vec::new();
    let mut pred = Vec::new();
    for d in dialogues {
        for (p, g) in predict_dialogue(model, d)?.iter().zip(d.gold_acts()) {
            if let Some(g) = g {
                gold.push(g);
                pred.push(p.act);
            }
        }
    }
    if gold.is_empty() {
        return Ok(None);
    }
    Ok(Some(report(&gold, &pred, ActLabel::ALL)?))
}

pub fn train_model(
    dialogues: &[Dialogue],
    features: &FeatureTemplateConfig,
    train: &TrainConfig,
    jobs: usize,
) -> Result<LinearModel> {
    let set = build_training_set(dialogues, features)?;
    Ok(train_parallel(&set, train, jobs)?)
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub name: String,
    /// Train, dev, test.
    pub sizes: [Counts; 3],
    pub train: Option<EvalReport>,
    pub dev: Option<EvalReport>,
    pub test: Option<EvalReport>,
    pub model: LinearModel,
}

pub fn run_experiment(
    name: &str,
    split: &DatasetSplit,
    features: &FeatureTemplateConfig,
    cfg: &RunConfig,
) -> Result<Experiment> {
    let model = train_model(&split.train, features, &cfg.train, cfg.jobs)?;
    Ok(Experiment {
        name: name.into(),
        sizes: split.parts().map(|p| stats(p).overall),
        train: evaluate(&model, &split.train)?,
        dev: evaluate(&model, &split.dev)?,
        test: evaluate(&model, &split.test)?,
        model,
    })
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub size: i32,
    pub dev: Option<EvalReport>,
    pub test: Option<EvalReport>,
}

pub const SWEEP_SIZES: std::ops::RangeInclusive<i32> = 1..=5;

/// Trains one model per symmetric window `±1..=±5` on `split`; other
/// feature settings stay as configured.
pub fn sweep_windows(split: &DatasetSplit, cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    SWEEP_SIZES
        .map(|size| {
            let features = cfg.features.with_window(-size, size);
            let model = train_model(&split.train, &features, &cfg.train, cfg.jobs)?;
            Ok(SweepRow {
                size,
                dev: evaluate(&model, &split.dev)?,
                test: evaluate(&model, &split.test)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub config: RunConfig,
    pub experiments: Vec<Experiment>,
    /// Domains left out of the per-domain experiments, with the reason.
    pub skipped: Vec<(Domain, String)>,
    pub sweep: Option<Vec<SweepRow>>,
}

#[derive(Debug, Clone)]
pub struct DomainSplits {
    pub per_domain: Vec<(Domain, DatasetSplit)>,
    pub combined: DatasetSplit,
    pub skipped: Vec<(Domain, String)>,
}

/// Splits every domain separately and concatenates the parts for the
/// combined experiment, so no test dialogue of a domain is trained on.
/// Domains too small to split contribute their dialogues to the combined
/// training part only.
pub fn combined_split(corpus: &[Dialogue], cfg: &RunConfig) -> Result<DomainSplits> {
    let seed = cfg.train.seed;
    let mut per_domain = Vec::new();
    let mut skipped = Vec::new();
    let mut combined = DatasetSplit {
        train: Vec::new(),
        dev: Vec::new(),
        test: Vec::new(),
        seed,
    };
    for domain in Domain::ALL {
        let part: Vec<Dialogue> = corpus
            .iter()
            .filter(|d| d.domain == domain)
            .cloned()
            .collect();
        if part.is_empty() {
            continue;
        }
        match split_dataset(&part, cfg.ratios, seed) {
            Ok(split) => {
                combined.train.extend(split.train.iter().cloned());
                combined.dev.extend(split.dev.iter().cloned());
                combined.test.extend(split.test.iter().cloned());
                per_domain.push((domain, split));
            }
            Err(e) => {
                skipped.push((domain, e.to_string()));
                combined.train.extend(part);
            }
        }
    }
    if combined.train.is_empty() {
        return Err(Error::Data(
            "no dialogue ended up in a training part".into(),
        ));
    }
    Ok(DomainSplits {
        per_domain,
        combined,
        skipped,
    })
}

pub fn run_pipeline(corpus: &[Dialogue], cfg: &RunConfig) -> Result<PipelineReport> {
    if corpus.is_empty() {
        return Err(Error::Data("the corpus is empty".into()));
    }
    let DomainSplits {
        per_domain,
        combined,
        mut skipped,
    } = combined_split(corpus, cfg)?;
    let mut experiments = Vec::new();
    for (domain, split) in &per_domain {
        if split
            .train
            .iter()
            .all(|d| d.utterances().all(|(_, u)| u.act.is_none()))
        {
            skipped.push((*domain, "no labelled utterance in the training part".into()));
            continue;
        }
        experiments.push(run_experiment(domain.name(), split, &cfg.features, cfg)?);
    }
    experiments.push(run_experiment(COMBINED, &combined, &cfg.features, cfg)?);
    let sweep = if cfg.sweep_window {
        Some(sweep_windows(&combined, cfg)?)
    } else {
        None
    };
    Ok(PipelineReport {
        config: cfg.clone(),
        experiments,
        skipped,
        sweep,
    })
}

fn pct(r: Option<&EvalReport>) -> String {
    r.map_or("-".into(), |r| format_percent(r.overall.accuracy))
}

fn f1(r: Option<&EvalReport>, which: Aggregate) -> String {
    r.map_or("-".into(), |r| format_percent(r.overall.get(which).f1))
}

pub fn render_pipeline(report: &PipelineReport) -> String {
    let cfg = &report.config;
    let mut out = String::from("# yosr pipeline\n");
    out.push_str(&cfg.header());
    for (domain, why) in &report.skipped {
        let _ = writeln!(out, "# skipped {domain}: {why}");
    }
    for e in &report.experiments {
        let _ = writeln!(out, "\n## {}", e.name);
        out.push_str("part\tdialogues\tturns\tutterances\twords\n");
        for (part, c) in ["train", "dev", "test"].iter().zip(&e.sizes) {
            let _ = writeln!(
                out,
                "{part}\t{}\t{}\t{}\t{}",
                c.dialogues, c.turns, c.utterances, c.words
            );
        }
        let _ = writeln!(
            out,
            "accuracy\ttrain {}\tdev {}\ttest {}",
            pct(e.train.as_ref()),
            pct(e.dev.as_ref()),
            pct(e.test.as_ref())
        );
        match &e.test {
            Some(r) => out.push_str(&render_table(r, cfg.style, cfg.aggregate)),
            None => out.push_str("no labelled test utterances\n"),
        }
    }
    if let Some(rows) = &report.sweep {
        let _ = writeln!(out, "\n## Window sweep ({COMBINED})");
        out.push_str("window\tdev accuracy\tdev F1\ttest accuracy\ttest F1\n");
        for r in rows {
            let _ = writeln!(
                out,
                "-{0},+{0}\t{1}\t{2}\t{3}\t{4}",
                r.size,
                pct(r.dev.as_ref()),
                f1(r.dev.as_ref(), cfg.aggregate),
                pct(r.test.as_ref()),
                f1(r.test.as_ref(), cfg.aggregate)
            );
        }
    }
    out
}

/// Writes `<experiment>.model` for every experiment into `dir`.
pub fn save_models(report: &PipelineReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(Error::io(dir))?;
    for e in &report.experiments {
        save_model(&dir.join(format!("{}.model", e.name)), &e.model)?;
    }
    Ok(())
}
