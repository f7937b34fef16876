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

//! The `yosr` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, ArgGroup, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use yosr_core::classifier::{predict_dialogue_with, PredictOptions};
use yosr_core::corpus::{split_dataset, stats, synth_corpus, CuePlacement, Ratios, SynthSpec};
use yosr_core::eval::{render_table, report, Aggregate, TableStyle};
use yosr_core::normalize::{normalize_chars, split_waw, tokenize};
use yosr_core::{
    ActLabel, Dialogue, FeatureTemplateConfig, NormalizationConfig, Preprocessor, Strategy,
    TrainConfig, TransliterationTable,
};

use crate::config::{load_config, parse_bool};
use crate::conll::{read_conll, write_conll};
use crate::error::{Error, Result};
use crate::jsonl::{act_columns, read_jsonl, write_jsonl, write_jsonl_with_predictions};
use crate::model_file::{load_model, save_model};
use crate::parallel::default_jobs;
use crate::pipeline::{render_pipeline, run_pipeline, save_models, train_model, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "yosr",
    version,
    about = "Dialogue-act tagging for Egyptian Arabic call-centre dialogues"
)]
pub struct Cli {
    /// `key = value` file of option defaults; flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize and tokenize Arabic text, one line at a time.
    Normalize(NormalizeArgs),
    /// Convert between Arabic script and Buckwalter, one line at a time.
    Translit(TranslitArgs),
    /// Dialogue, turn, utterance and word counts per domain.
    Stats(StatsArgs),
    /// Generate a synthetic labelled corpus.
    Synth(SynthArgs),
    /// Split a corpus into train, dev and test files.
    Split(SplitArgs),
    /// Train a model.
    Train(TrainCmdArgs),
    /// Tag a corpus with a trained model.
    Predict(PredictArgs),
    /// Score predicted acts against gold acts.
    Eval(EvalArgs),
    /// Split, train and evaluate per domain and combined.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PreprocessArgs {
    /// Keep a leading conjunction و attached.
    #[arg(long)]
    pub no_waw_split: bool,
    /// Only split و off words listed in FILE (one per line).
    #[arg(long, value_name = "FILE")]
    pub waw_lexicon: Option<PathBuf>,
    /// Minimum letters left after splitting و off.
    #[arg(long, default_value_t = 2, value_name = "N")]
    pub waw_min_remainder: usize,
    #[arg(long)]
    pub no_unify_alif: bool,
    #[arg(long)]
    pub no_teh_marbuta: bool,
    #[arg(long)]
    pub no_alif_maksura: bool,
}

impl PreprocessArgs {
    pub fn preprocessor(&self) -> Result<Preprocessor> {
        let mut cfg = NormalizationConfig {
            unify_alif: !self.no_unify_alif,
            teh_marbuta_to_heh: !self.no_teh_marbuta,
            alif_maksura_to_yeh: !self.no_alif_maksura,
            split_waw: !self.no_waw_split,
            waw_min_remainder: self.waw_min_remainder,
            waw_lexicon: None,
        };
        if self.waw_min_remainder == 0 {
            return Err(Error::Usage(
                "--waw-min-remainder must be at least 1".into(),
            ));
        }
        if let Some(path) = &self.waw_lexicon {
            let text = fs::read_to_string(path).map_err(Error::io(path))?;
            cfg = cfg.with_lexicon(
                text.lines()
                    .map(str::trim)
                    .filter(|w| !w.is_empty())
                    .map(String::from),
            );
        }
        Ok(Preprocessor::new(cfg, TransliterationTable::default()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct NormalizeArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    /// Print Buckwalter tokens instead of Arabic.
    #[arg(long)]
    pub buckwalter: bool,
    #[arg(value_name = "INPUT")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("direction").required(true).args(["to_ascii", "to_arabic"])))]
pub struct TranslitArgs {
    #[arg(long)]
    pub to_ascii: bool,
    #[arg(long)]
    pub to_arabic: bool,
    /// Fail on Arabic-block characters without a mapping.
    #[arg(long)]
    pub strict: bool,
    #[arg(value_name = "INPUT")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    /// JSONL or CoNLL corpus; standard input when absent.
    #[arg(value_name = "CORPUS")]
    pub input: Option<PathBuf>,
    /// Same as CORPUS.
    #[arg(long = "corpus", value_name = "FILE", conflicts_with = "input")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Number of dialogues.
    #[arg(
        long = "n",
        visible_alias = "dialogues",
        default_value_t = 40,
        value_name = "N"
    )]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Put every signature word exactly K tokens after the utterance head.
    #[arg(long, value_name = "K")]
    pub cue_offset: Option<usize>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    #[arg(value_name = "CORPUS")]
    pub input: Option<PathBuf>,
    /// Same as CORPUS.
    #[arg(long = "corpus", value_name = "FILE", conflicts_with = "input")]
    pub corpus: Option<PathBuf>,
    /// Receives train.jsonl, dev.jsonl and test.jsonl.
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
    #[arg(long, default_value = "0.7,0.2,0.1", value_parser = parse_ratios)]
    pub ratios: Ratios,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[arg(long, default_value = "ova", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 10)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eta0: f64,
    /// Seeds the example order (and the split, where there is one).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep the last iterate instead of the running average.
    #[arg(long)]
    pub no_averaging: bool,
    /// Training threads; the model does not depend on it.
    #[arg(short, long, value_name = "N")]
    pub jobs: Option<usize>,
}

impl TrainArgs {
    pub fn config(&self) -> Result<TrainConfig> {
        let cfg = TrainConfig {
            strategy: self.strategy,
            epochs: self.epochs,
            lambda: self.lambda,
            eta0: self.eta0,
            seed: self.seed,
            averaging: !self.no_averaging,
        };
        cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
        Ok(cfg)
    }

    pub fn jobs(&self) -> Result<usize> {
        match self.jobs {
            Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
            Some(n) => Ok(n),
            None => Ok(default_jobs()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FeatureArgs {
    /// Token offsets around the current token, e.g. -3,+3.
    #[arg(long, default_value = "-2,+2", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (i32, i32),
    #[arg(long)]
    pub no_tokens: bool,
    #[arg(long)]
    pub no_pos: bool,
    #[arg(long)]
    pub no_speaker: bool,
    #[arg(long)]
    pub no_prev_act: bool,
    #[arg(long)]
    pub no_prev_tags: bool,
    /// Drop pairwise feature conjunctions.
    #[arg(long)]
    pub no_quadratic: bool,
}

impl FeatureArgs {
    pub fn config(&self) -> Result<FeatureTemplateConfig> {
        let cfg = FeatureTemplateConfig {
            left: self.window.0,
            right: self.window.1,
            use_tokens: !self.no_tokens,
            use_pos: !self.no_pos,
            use_speaker: !self.no_speaker,
            use_prev_act: !self.no_prev_act,
            use_prev_tags: !self.no_prev_tags,
            quadratic: !self.no_quadratic,
        };
        cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TrainCmdArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub features: FeatureArgs,
    /// JSONL or CoNLL training corpus.
    #[arg(value_name = "CORPUS")]
    pub input: Option<PathBuf>,
    /// Same as CORPUS.
    #[arg(long = "corpus", value_name = "FILE", conflicts_with = "input")]
    pub corpus: Option<PathBuf>,
    #[arg(short, long, value_name = "FILE")]
    pub model: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PredictFormat {
    Jsonl,
    Acts,
    Conll,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    #[arg(short, long, value_name = "FILE")]
    pub model: PathBuf,
    #[arg(value_name = "CORPUS")]
    pub input: Option<PathBuf>,
    /// Same as CORPUS.
    #[arg(long = "corpus", value_name = "FILE", conflicts_with = "input")]
    pub corpus: Option<PathBuf>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: PredictFormat,
    /// Act reported for utterances whose tokens are all tagged O.
    #[arg(long, default_value = "Inform", value_parser = parse_act)]
    pub fallback: ActLabel,
    /// Use the gold previous act instead of the predicted one.
    #[arg(long)]
    pub teacher_forcing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// JSONL with `act` (and `pred_act` when PRED is absent), or one act per line.
    #[arg(value_name = "GOLD")]
    pub gold: PathBuf,
    /// JSONL with `pred_act`, or one act per line.
    #[arg(value_name = "PRED")]
    pub pred: Option<PathBuf>,
    #[arg(long, default_value = "plain", value_parser = parse_style)]
    pub style: TableStyle,
    /// Aggregate shown in the Over All row.
    #[arg(long, default_value = "weighted", value_parser = parse_aggregate)]
    pub overall: Aggregate,
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub pre: PreprocessArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(value_name = "CORPUS")]
    pub input: Option<PathBuf>,
    /// Same as CORPUS.
    #[arg(long = "corpus", value_name = "FILE", conflicts_with = "input")]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value = "0.7,0.2,0.1", value_parser = parse_ratios)]
    pub ratios: Ratios,
    /// Also compare symmetric windows ±1 to ±5 on the combined split.
    #[arg(long)]
    pub sweep_window: bool,
    /// Write one model per experiment here.
    #[arg(long, value_name = "DIR")]
    pub model_dir: Option<PathBuf>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "plain", value_parser = parse_style)]
    pub style: TableStyle,
    #[arg(long, default_value = "weighted", value_parser = parse_aggregate)]
    pub overall: Aggregate,
}

pub fn parse_window(s: &str) -> std::result::Result<(i32, i32), String> {
    let num = |v: &str| {
        v.trim()
            .parse::<i32>()
            .map_err(|_| format!("bad window offset {v:?}"))
    };
    match s.split_once(',') {
        Some((l, r)) => Ok((num(l)?, num(r)?)),
        None => {
            let n = num(s)?.abs();
            Ok((-n, n))
        }
    }
}

pub fn parse_ratios(s: &str) -> std::result::Result<Ratios, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| format!("bad ratio {v:?}")))
        .collect::<std::result::Result<_, _>>()?;
    let [a, b, c] = parts[..] else {
        return Err("expected three comma-separated ratios".into());
    };
    Ratios::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse()
        .map_err(|e: yosr_core::classifier::ClassifierError| e.to_string())
}

fn parse_act(s: &str) -> std::result::Result<ActLabel, String> {
    s.parse().map_err(|_| format!("unknown dialogue act {s:?}"))
}

fn parse_style(s: &str) -> std::result::Result<TableStyle, String> {
    s.parse()
        .map_err(|e: yosr_core::eval::EvalError| e.to_string())
}

fn parse_aggregate(s: &str) -> std::result::Result<Aggregate, String> {
    s.parse()
        .map_err(|e: yosr_core::eval::EvalError| e.to_string())
}

/// Streams handed to a command.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn read_input(path: Option<&Path>, io: &mut Io<'_>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(Error::io(p)),
        _ => {
            let mut s = String::new();
            io.stdin
                .read_to_string(&mut s)
                .map_err(Error::io("<stdin>"))?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str, io: &mut Io<'_>) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(Error::io(p)),
        _ => io
            .stdout
            .write_all(text.as_bytes())
            .map_err(Error::io("<stdout>")),
    }
}

fn corpus_path<'a>(input: &'a Option<PathBuf>, corpus: &'a Option<PathBuf>) -> Option<&'a Path> {
    input.as_deref().or(corpus.as_deref())
}

fn is_conll(path: Option<&Path>) -> bool {
    path.and_then(Path::extension)
        .is_some_and(|e| e == "conll" || e == "tsv")
}

/// JSONL, or CoNLL for `.conll` / `.tsv` paths.
pub fn load_corpus(
    path: Option<&Path>,
    pre: &Preprocessor,
    io: &mut Io<'_>,
) -> Result<Vec<Dialogue>> {
    let text = read_input(path, io)?;
    if is_conll(path) {
        read_conll(&text, &pre.table)
    } else {
        read_jsonl(&text, pre)
    }
}

fn normalize(args: &NormalizeArgs, io: &mut Io<'_>) -> Result<()> {
    let pre = args.pre.preprocessor()?;
    let text = read_input(args.input.as_deref(), io)?;
    let mut out = String::new();
    for (i, line) in text.lines().enumerate() {
        let tokens = if args.buckwalter {
            pre.tokens(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?
        } else {
            let cfg = &pre.normalization;
            tokenize(&normalize_chars(line, cfg))
                .iter()
                .flat_map(|t| split_waw(t, cfg))
                .collect()
        };
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    write_output(None, &out, io)
}

fn translit(args: &TranslitArgs, io: &mut Io<'_>) -> Result<()> {
    let table = TransliterationTable::default().strict(args.strict);
    let text = read_input(args.input.as_deref(), io)?;
    let mut out = String::new();
    for (i, line) in text.lines().enumerate() {
        if args.to_ascii {
            let converted = table.to_buckwalter(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            out.push_str(&converted);
        } else {
            out.push_str(&table.from_buckwalter(line));
        }
        out.push('\n');
    }
    write_output(None, &out, io)
}

pub fn render_stats(dialogues: &[Dialogue]) -> String {
    let s = stats(dialogues);
    let mut out = String::from("domain\tdialogues\tturns\tutterances\twords\n");
    let rows = s
        .by_domain
        .iter()
        .map(|(d, c)| (d.name(), c))
        .chain([("Total", &s.overall)]);
    for (name, c) in rows {
        let _ = writeln!(
            out,
            "{name}\t{}\t{}\t{}\t{}",
            c.dialogues, c.turns, c.utterances, c.words
        );
    }
    out
}

fn synth(args: &SynthArgs, io: &mut Io<'_>) -> Result<()> {
    let mut spec = SynthSpec::new(args.n, args.seed);
    if let Some(k) = args.cue_offset {
        spec.cue = CuePlacement::Offset(k);
    }
    let corpus = synth_corpus(&spec, &Preprocessor::default())?;
    write_output(args.output.as_deref(), &write_jsonl(&corpus), io)
}

fn split(args: &SplitArgs, io: &mut Io<'_>) -> Result<()> {
    let pre = args.pre.preprocessor()?;
    let corpus = load_corpus(corpus_path(&args.input, &args.corpus), &pre, io)?;
    let split = split_dataset(&corpus, args.ratios, args.seed)?;
    fs::create_dir_all(&args.out_dir).map_err(Error::io(&args.out_dir))?;
    let mut summary = String::from("part\tdialogues\tturns\n");
    for (name, part) in ["train", "dev", "test"].iter().zip(split.parts()) {
        let path = args.out_dir.join(format!("{name}.jsonl"));
        fs::write(&path, write_jsonl(part)).map_err(Error::io(&path))?;
        let turns: usize = part.iter().map(|d| d.turns.len()).sum();
        let _ = writeln!(summary, "{name}\t{}\t{turns}", part.len());
    }
    write_output(None, &summary, io)
}

fn train(args: &TrainCmdArgs, io: &mut Io<'_>) -> Result<()> {
    let cfg = args.train.config()?;
    let features = args.features.config()?;
    let jobs = args.train.jobs()?;
    let pre = args.pre.preprocessor()?;
    let corpus = load_corpus(corpus_path(&args.input, &args.corpus), &pre, io)?;
    let model = train_model(&corpus, &features, &cfg, jobs)?;
    save_model(&args.model, &model)?;
    let msg = format!(
        "trained {} model, window {}: {} labels, {} features, {} weight vectors\n",
        model.strategy(),
        crate::pipeline::format_window(model.feature_config()),
        model.labels().len(),
        model.dict().len(),
        model.vectors().len()
    );
    io.stderr
        .write_all(msg.as_bytes())
        .map_err(Error::io("<stderr>"))
}

fn predict(args: &PredictArgs, io: &mut Io<'_>) -> Result<()> {
    let model = load_model(&args.model)?;
    let pre = args.pre.preprocessor()?;
    let corpus = load_corpus(corpus_path(&args.input, &args.corpus), &pre, io)?;
    let options = PredictOptions {
        fallback: args.fallback,
        teacher_forcing: args.teacher_forcing,
    };
    let predictions = corpus
        .iter()
        .map(|d| predict_dialogue_with(&model, d, &options))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let text = match args.format {
        PredictFormat::Jsonl => {
            let acts: Vec<Vec<ActLabel>> = predictions
                .iter()
                .map(|p| p.iter().map(|u| u.act).collect())
                .collect();
            write_jsonl_with_predictions(&corpus, &acts)
        }
        PredictFormat::Acts => predictions
            .iter()
            .flatten()
            .map(|u| format!("{}\n", u.act))
            .collect(),
        PredictFormat::Conll => {
            let tags: Vec<Vec<_>> = predictions
                .iter()
                .map(|p| p.iter().map(|u| u.tags.clone()).collect())
                .collect();
            write_conll(&corpus, Some(&tags))
        }
    };
    write_output(args.output.as_deref(), &text, io)
}

fn is_jsonl(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// One optional act per line; blank lines are unlabelled utterances.
fn act_lines(text: &str) -> Result<Vec<Option<ActLabel>>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let l = l.trim();
            if l.is_empty() {
                Ok(None)
            } else {
                l.parse().map(Some).map_err(|_| Error::UnknownAct {
                    line: i + 1,
                    name: l.into(),
                })
            }
        })
        .collect()
}

fn eval(args: &EvalArgs, io: &mut Io<'_>) -> Result<()> {
    let gold_text = read_input(Some(&args.gold), io)?;
    let (gold, pred) = match &args.pred {
        None => {
            if !is_jsonl(&gold_text) {
                return Err(Error::Usage(
                    "a single input must be JSONL with `act` and `pred_act`".into(),
                ));
            }
            act_columns(&gold_text)?
        }
        Some(p) => {
            let pred_text = read_input(Some(p), io)?;
            let gold = if is_jsonl(&gold_text) {
                act_columns(&gold_text)?.0
            } else {
                act_lines(&gold_text)?
            };
            let pred = if is_jsonl(&pred_text) {
                let (acts, preds) = act_columns(&pred_text)?;
                if preds.iter().any(Option::is_some) {
                    preds
                } else {
                    acts
                }
            } else {
                act_lines(&pred_text)?
            };
            (gold, pred)
        }
    };
    if gold.len() != pred.len() {
        return Err(Error::Data(format!(
            "{} gold utterances but {} predictions",
            gold.len(),
            pred.len()
        )));
    }
    let mut g = Vec::new();
    let mut p = Vec::new();
    for (i, (a, b)) in gold.iter().zip(&pred).enumerate() {
        if let Some(a) = a {
            let b = b.ok_or_else(|| {
                Error::Data(format!(
                    "utterance {} has a gold act but no prediction",
                    i + 1
                ))
            })?;
            g.push(*a);
            p.push(b);
        }
    }
    let r = report(&g, &p, ActLabel::ALL)?;
    write_output(None, &render_table(&r, args.style, args.overall), io)
}

fn pipeline(args: &PipelineArgs, io: &mut Io<'_>) -> Result<()> {
    let cfg = RunConfig {
        ratios: args.ratios,
        features: args.features.config()?,
        train: args.train.config()?,
        aggregate: args.overall,
        style: args.style,
        sweep_window: args.sweep_window,
        jobs: args.train.jobs()?,
    };
    let pre = args.pre.preprocessor()?;
    let corpus = load_corpus(corpus_path(&args.input, &args.corpus), &pre, io)?;
    let report = run_pipeline(&corpus, &cfg)?;
    if let Some(dir) = &args.model_dir {
        save_models(&report, dir)?;
    }
    write_output(args.output.as_deref(), &render_pipeline(&report), io)
}

pub fn execute(command: &Command, io: &mut Io<'_>) -> Result<()> {
    match command {
        Command::Normalize(a) => normalize(a, io),
        Command::Translit(a) => translit(a, io),
        Command::Stats(a) => {
            let corpus = load_corpus(corpus_path(&a.input, &a.corpus), &a.pre.preprocessor()?, io)?;
            write_output(None, &render_stats(&corpus), io)
        }
        Command::Synth(a) => synth(a, io),
        Command::Split(a) => split(a, io),
        Command::Train(a) => train(a, io),
        Command::Predict(a) => predict(a, io),
        Command::Eval(a) => eval(a, io),
        Command::Pipeline(a) => pipeline(a, io),
    }
}

fn command() -> clap::Command {
    Cli::command().mut_subcommands(|s| s.args_override_self(true))
}

/// Inserts the options of `--config FILE` right after the subcommand name,
/// so anything on the command line overrides them.
///
/// Keys that name an option of another subcommand are ignored, which lets one
/// file serve several commands; keys no subcommand knows are an error.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut config = None;
    let mut sub_at = None;
    let mut i = 1;
    while i < args.len() {
        let a = args[i].to_string_lossy();
        if a == "--" {
            break;
        }
        if a == "--config" {
            config = args.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(v) = a.strip_prefix("--config=") {
            config = Some(v.into());
        } else if sub_at.is_none() && !a.starts_with('-') {
            sub_at = Some(i);
        }
        i += 1;
    }
    let (Some(path), Some(sub_at)) = (config, sub_at) else {
        return Ok(args);
    };
    let path = PathBuf::from(path);
    let entries = load_config(&path).map_err(|e| match e {
        Error::Parse { line, message } => {
            Error::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => other,
    })?;
    let root = command();
    let name = args[sub_at].to_string_lossy().into_owned();
    let Some(sub) = root.find_subcommand(&name) else {
        return Ok(args);
    };
    let mut injected: Vec<OsString> = Vec::new();
    for e in &entries {
        let found = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(e.key.as_str()));
        match found {
            Some(arg) if e.key != "config" => {
                let flag = matches!(arg.get_action(), ArgAction::SetTrue);
                if flag {
                    let on = parse_bool(e)
                        .map_err(|err| Error::Usage(format!("{}: {err}", path.display())))?;
                    if on {
                        injected.push(format!("--{}", e.key).into());
                    }
                } else {
                    injected.push(format!("--{}={}", e.key, e.value).into());
                }
            }
            _ => {
                let known = root.get_subcommands().any(|s| {
                    s.get_arguments()
                        .any(|a| a.get_long() == Some(e.key.as_str()))
                });
                if !known || e.key == "config" {
                    return Err(Error::Usage(format!(
                        "{}:{}: unknown option {:?}",
                        path.display(),
                        e.line,
                        e.key
                    )));
                }
            }
        }
    }
    let mut out = args[..=sub_at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[sub_at + 1..]);
    Ok(out)
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 for usage errors, 2 for data errors.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let report = |io: &mut Io<'_>, e: &Error| {
        let _ = writeln!(io.stderr, "error: {e}");
        e.exit_code()
    };
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => return report(io, &e),
    };
    let matches = match command().try_get_matches_from(&args) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = io.stderr.write_all(text.as_bytes());
                1
            } else {
                let _ = io.stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = io.stderr.write_all(e.render().to_string().as_bytes());
            return 1;
        }
    };
    match execute(&cli.command, io) {
        Ok(()) => 0,
        Err(e) => report(io, &e),
    }
}

/// `run` on the process arguments and standard streams.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut io = Io {
        stdin: &mut stdin.lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
    };
    run(args, &mut io)
}
