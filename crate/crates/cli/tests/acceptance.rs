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

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yosr::pipeline::{run_pipeline, Experiment, RunConfig, COMBINED};
use yosr_core::classifier::{
    build_training_set, train_binary, BinaryTask, BinaryWeights, TrainingPlan,
};
use yosr_core::corpus::{split_dataset, synth_corpus, CuePlacement, Ratios, SynthSpec};
use yosr_core::eval::{f1_score, render_table, report, Aggregate, TableStyle};
use yosr_core::features::{decode_utterance_act, repair_bio};
use yosr_core::normalize::{normalize_chars, NormalizationConfig};
use yosr_core::{
    ActLabel, BioTag, Dialogue, FeatureTemplateConfig, FeatureVector, Preprocessor, Strategy,
    TrainConfig, TransliterationTable,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

const SCORE_ROWS: &str = include_str!("fixtures/score_rows.tsv");

fn metric_fixtures() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    let mut act_rows = 0;
    for line in SCORE_ROWS.lines().filter(|l| !l.starts_with('#')) {
        let cols: Vec<&str> = line.split('\t').collect();
        let [table, act, p, r, f] = cols[..] else {
            return Err(format!("malformed fixture line {line:?}"));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|_| format!("bad number {s:?}"));
        let got = f1_score(num(p)?, num(r)?);
        check((got - num(f)?).abs() <= 0.01 + 1e-9, || {
            format!("{table} {act}: F1({p}, {r}) = {got:.4}, table says {f}")
        })?;
        rows += 1;
        if act != "Over All" {
            act_rows += 1;
        }
    }
    check(rows == 60 && act_rows == 56, || {
        format!(
            "expected 56 act rows + 4 Over All rows, found {act_rows} + {}",
            rows - act_rows
        )
    })?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "{rows}/60 rows within 0.01 ({act_rows} act rows + 4 Over All) in {took:.2?}"
    ))
}

fn transliteration() -> Outcome {
    let start = Instant::now();
    let table = TransliterationTable::default().strict(true);
    for (arabic, ascii) in [
        ("شكرا", "$krA"),
        ("وقال", "wqAl"),
        ("عفوا", "EfwA"),
        ("لا", "lA"),
    ] {
        let fwd = table.to_buckwalter(arabic).map_err(|e| e.to_string())?;
        check(fwd == ascii, || {
            format!("{arabic} -> {fwd}, expected {ascii}")
        })?;
        let back = table.from_buckwalter(ascii);
        check(back == arabic, || {
            format!("{ascii} -> {back}, expected {arabic}")
        })?;
    }
    let alphabet: Vec<char> = table.entries().map(|(a, _)| a).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(0..24);
        let s: String = (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        let ok = table
            .to_buckwalter(&s)
            .map(|a| table.from_buckwalter(&a) == s)
            .unwrap_or(false);
        failures += usize::from(!ok);
    }
    check(failures == 0, || {
        format!("{failures} of 10000 random strings failed to round-trip")
    })?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "4 quoted pairs exact, 10000/10000 random round trips over {} entries in {took:.2?}",
        alphabet.len()
    ))
}

fn normalization() -> Outcome {
    let start = Instant::now();
    let cfg = NormalizationConfig::default();
    let rules = [('أ', 'ا'), ('إ', 'ا'), ('آ', 'ا'), ('ة', 'ه'), ('ى', 'ي')];
    for (from, to) in rules {
        let single = normalize_chars(&from.to_string(), &cfg);
        check(single == to.to_string(), || {
            format!("{from} -> {single}, expected {to}")
        })?;
        let embedded = normalize_chars(&format!("ك{from}ب {from}"), &cfg);
        check(embedded == format!("ك{to}ب {to}"), || {
            format!("embedded {from} -> {embedded}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(0..30);
        let s: String = (0..len)
            .map(|_| {
                if rng.gen_bool(0.15) {
                    ' '
                } else {
                    char::from_u32(rng.gen_range(0x0621..=0x0652)).unwrap()
                }
            })
            .collect();
        let once = normalize_chars(&s, &cfg);
        failures += usize::from(
            normalize_chars(&once, &cfg) != once || once.chars().count() != s.chars().count(),
        );
    }
    check(failures == 0, || {
        format!("{failures} of 10000 random strings not idempotent")
    })?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "5 rules hold alone and embedded, 10000/10000 idempotent in {took:.2?}"
    ))
}

/// Reference majority vote: distinct acts in order of appearance, first one
/// with the top count wins.
fn oracle_decode(tags: &[BioTag], fallback: ActLabel) -> (ActLabel, bool) {
    let acts: Vec<ActLabel> = tags.iter().filter_map(|t| t.act()).collect();
    let mut seen = Vec::new();
    for a in &acts {
        if !seen.contains(a) {
            seen.push(*a);
        }
    }
    let count = |a: &ActLabel| acts.iter().filter(|x| *x == a).count();
    match seen.iter().map(count).max() {
        None => (fallback, true),
        Some(top) => (*seen.iter().find(|a| count(a) == top).unwrap(), false),
    }
}

fn valid(tags: &[BioTag]) -> bool {
    (0..tags.len()).all(|i| match tags[i] {
        BioTag::I(a) => i > 0 && tags[i - 1].act() == Some(a),
        _ => true,
    })
}

/// Reference repair: the valid sequence reachable by turning the fewest
/// `I-X` into `B-X`, found by trying every subset.
fn oracle_repair(tags: &[BioTag]) -> Vec<BioTag> {
    let inside: Vec<usize> = (0..tags.len())
        .filter(|&i| matches!(tags[i], BioTag::I(_)))
        .collect();
    let mut best: Option<(u32, Vec<BioTag>)> = None;
    for mask in 0u32..(1 << inside.len()) {
        let mut cand = tags.to_vec();
        for (bit, &i) in inside.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                cand[i] = BioTag::B(tags[i].act().unwrap());
            }
        }
        if valid(&cand) && best.as_ref().is_none_or(|(n, _)| mask.count_ones() < *n) {
            best = Some((mask.count_ones(), cand));
        }
    }
    best.unwrap().1
}

fn bio_oracle() -> Outcome {
    let start = Instant::now();
    let acts = [ActLabel::Greeting, ActLabel::Agree, ActLabel::Closing];
    let alphabet: Vec<BioTag> = acts
        .iter()
        .flat_map(|&a| [BioTag::B(a), BioTag::I(a)])
        .chain([BioTag::O])
        .collect();
    let mut checked = 0usize;
    for len in 0..=6u32 {
        for code in 0..alphabet.len().pow(len) {
            let mut c = code;
            let tags: Vec<BioTag> = (0..len)
                .map(|_| {
                    let t = alphabet[c % alphabet.len()];
                    c /= alphabet.len();
                    t
                })
                .collect();
            let d = decode_utterance_act(&tags, ActLabel::Inform);
            let want = oracle_decode(&tags, ActLabel::Inform);
            check((d.act, d.all_o) == want, || {
                format!("decode {tags:?}: {d:?}, oracle {want:?}")
            })?;
            let fixed = repair_bio(&tags);
            let want = oracle_repair(&tags);
            check(fixed == want, || {
                format!("repair {tags:?}: {fixed:?}, oracle {want:?}")
            })?;
            checked += 1;
        }
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!(
        "{checked} sequences (length <= 6, 7 tags) match both oracles in {took:.2?}"
    ))
}

fn combined(experiments: &[Experiment]) -> &Experiment {
    experiments
        .iter()
        .find(|e| e.name == COMBINED)
        .expect("combined experiment")
}

fn accuracy(r: &Option<yosr_core::EvalReport>) -> f64 {
    r.as_ref().map_or(0.0, |r| r.overall.accuracy)
}

fn learning_corpus() -> Vec<Dialogue> {
    synth_corpus(&SynthSpec::new(40, 7), &Preprocessor::default()).unwrap()
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let corpus = learning_corpus();
    let utterances: usize = corpus.iter().map(Dialogue::utterance_count).sum();
    let acts: BTreeSet<ActLabel> = corpus
        .iter()
        .flat_map(|d| d.gold_acts())
        .flatten()
        .collect();
    check(
        corpus.len() >= 40 && utterances >= 800 && acts.len() == 8,
        || {
            format!(
                "corpus has {} dialogues, {utterances} utterances, {} acts",
                corpus.len(),
                acts.len()
            )
        },
    )?;
    let cfg = RunConfig {
        train: TrainConfig {
            seed: 7,
            ..TrainConfig::default()
        },
        ..RunConfig::default()
    };
    check(
        cfg.features.left == -2 && cfg.features.right == 2 && cfg.train.strategy == Strategy::Ova,
        || "defaults changed".into(),
    )?;
    let ova = run_pipeline(&corpus, &cfg).map_err(|e| e.to_string())?;
    let c = combined(&ova.experiments);
    let (train_acc, test_acc) = (accuracy(&c.train), accuracy(&c.test));
    check(train_acc >= 99.0 && test_acc >= 95.0, || {
        format!("OVA train {train_acc:.2}%, test {test_acc:.2}%")
    })?;
    let pw_cfg = RunConfig {
        train: TrainConfig {
            strategy: Strategy::Pairwise,
            ..cfg.train
        },
        ..cfg
    };
    let pw = run_pipeline(&corpus, &pw_cfg).map_err(|e| e.to_string())?;
    let pw_acc = accuracy(&combined(&pw.experiments).test);
    check(pw_acc >= 90.0, || format!("PAIRWISE test {pw_acc:.2}%"))?;
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!(
        "{} dialogues / {utterances} utterances / 8 acts: OVA train {train_acc:.2}% test {test_acc:.2}%, PAIRWISE test {pw_acc:.2}% in {took:.2?}",
        corpus.len()
    ))
}

fn optimization() -> Outcome {
    let corpus = learning_corpus();
    let split = split_dataset(&corpus, Ratios::default(), 7).map_err(|e| e.to_string())?;
    let set = build_training_set(&split.train, &FeatureTemplateConfig::default())
        .map_err(|e| e.to_string())?;
    let cfg = TrainConfig {
        averaging: false,
        ..TrainConfig::default()
    };
    let plan = TrainingPlan::new(&set, set.labels(), cfg).map_err(|e| e.to_string())?;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..plan.task_count() {
        let (xs, ys) = plan.task_data(k);
        let task = BinaryTask {
            features: &xs,
            targets: &ys,
            dim: set.dict.len(),
        };
        let j0 = task.objective(&BinaryWeights::zeros(set.dict.len()), cfg.lambda);
        let j = plan.solve_traced(k).epoch_objectives;
        for (e, w) in j.windows(2).enumerate() {
            worst = worst.max(w[1] - w[0]);
            check(w[1] <= w[0] + 1e-6 * j0, || {
                format!(
                    "task {k}: J rose from {} to {} after epoch {}",
                    w[0],
                    w[1],
                    e + 1
                )
            })?;
        }
    }
    let x = FeatureVector::new(vec![0]);
    let features = [&x];
    let one = TrainConfig {
        epochs: 1,
        lambda: 0.0,
        eta0: 0.1,
        averaging: false,
        ..TrainConfig::default()
    };
    let w = train_binary(
        &BinaryTask {
            features: &features,
            targets: &[1.0],
            dim: 1,
        },
        &one,
    );
    check(w.weights == [0.1] && w.bias == 0.1, || {
        format!("single step gave w = {:?}, b = {}", w.weights, w.bias)
    })?;
    Ok(format!(
        "{} tasks x {} epochs non-increasing (largest change {worst:.3e}); single step w = 0.1, b = 0.1",
        plan.task_count(),
        cfg.epochs
    ))
}

fn window_sweep() -> Outcome {
    let mut spec = SynthSpec::new(40, 3);
    spec.cue = CuePlacement::Offset(2);
    let corpus = synth_corpus(&spec, &Preprocessor::default()).map_err(|e| e.to_string())?;
    let cfg = RunConfig {
        sweep_window: true,
        train: TrainConfig {
            seed: 3,
            ..TrainConfig::default()
        },
        ..RunConfig::default()
    };
    let report = run_pipeline(&corpus, &cfg).map_err(|e| e.to_string())?;
    let rows = report.sweep.as_ref().ok_or("no sweep rows")?;
    let sizes: Vec<i32> = rows.iter().map(|r| r.size).collect();
    check(sizes == [1, 2, 3, 4, 5], || {
        format!("sweep sizes {sizes:?}")
    })?;
    let f1 = |i: usize| {
        rows[i]
            .test
            .as_ref()
            .map_or(0.0, |r| r.overall.get(Aggregate::Weighted).f1)
    };
    check(f1(1) > f1(0), || {
        format!("test F1 at -2/+2 is {:.2}, at -1/+1 {:.2}", f1(1), f1(0))
    })?;
    let text = yosr::pipeline::render_pipeline(&report);
    check(
        text.contains("## Window sweep") && text.contains("\n-5,+5\t"),
        || "comparison table missing".into(),
    )?;
    Ok(format!(
        "test F1 -1/+1 {:.2} < -2/+2 {:.2}; rows for -1/+1 .. -5/+5 emitted",
        f1(0),
        f1(1)
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let corpus = d.join("synth.jsonl");
    fs::write(&corpus, yosr::jsonl::write_jsonl(&learning_corpus())).map_err(|e| e.to_string())?;
    let run = |models: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_yosr"))
            .args(["pipeline", "--corpus"])
            .arg(&corpus)
            .args(["--seed", "1", "--sweep-window", "--model-dir"])
            .arg(d.join(models))
            .output()
            .map_err(|e| e.to_string())?;
        check(out.status.success(), || {
            String::from_utf8_lossy(&out.stderr).into_owned()
        })?;
        Ok(out.stdout)
    };
    let (a, b) = (run("first")?, run("second")?);
    check(a == b, || "reports differ".into())?;
    let names = |p: &Path| -> Vec<String> {
        let mut v: Vec<String> = fs::read_dir(p)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        v.sort();
        v
    };
    let models = names(&d.join("first"));
    check(
        models == names(&d.join("second")) && models.len() == 4,
        || format!("model files {models:?}"),
    )?;
    for m in &models {
        let same = fs::read(d.join("first").join(m)).unwrap()
            == fs::read(d.join("second").join(m)).unwrap();
        check(same, || format!("{m} differs"))?;
    }
    let dialogues = learning_corpus();
    let total: usize = dialogues.iter().map(|x| x.turns.len()).sum();
    for seed in 0..50 {
        let s = split_dataset(&dialogues, Ratios::default(), seed).map_err(|e| e.to_string())?;
        let sum: usize = s
            .parts()
            .iter()
            .flat_map(|p| p.iter())
            .map(|x| x.turns.len())
            .sum();
        check(sum == total, || {
            format!("seed {seed}: {sum} turns after split, {total} before")
        })?;
    }
    Ok(format!("2 runs: identical {}-byte report and {} identical models; 50 splits conserve {total} turns", a.len(), models.len()))
}

fn table_rendering() -> Outcome {
    let r = report(&[ActLabel::Closing], &[ActLabel::Closing], ActLabel::ALL)
        .map_err(|e| e.to_string())?;
    let text = render_table(&r, TableStyle::Plain, Aggregate::Weighted);
    let fixture = SCORE_ROWS
        .lines()
        .find(|l| l.starts_with("banks\tClosing\t"))
        .ok_or("fixture row missing")?;
    let want_row = fixture.split('\t').skip(1).collect::<Vec<_>>().join(" ");
    let row = text.lines().nth(1).unwrap_or_default();
    check(row == want_row, || {
        format!("rendered {row:?}, table row {want_row:?}")
    })?;
    check(
        text == "Act Precision Recall F1\nClosing 100 100 100\nOver All 100 100 100\n",
        || format!("rendered {text:?}"),
    )?;
    Ok(format!("{row:?}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("metric fixtures", metric_fixtures),
        ("transliteration", transliteration),
        ("normalization", normalization),
        ("BIO oracle equivalence", bio_oracle),
        ("end-to-end learning", end_to_end),
        ("optimization", optimization),
        ("window sweep", window_sweep),
        ("determinism", determinism),
        ("table rendering", table_rendering),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
