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

//! End-to-end learning on seeded synthetic dialogues.

use yosr_core::classifier::{
    build_training_set, predict_dialogue, train, Strategy, TrainConfig, TrainingPlan,
};
use yosr_core::corpus::{split_dataset, synth_corpus, CuePlacement, Dialogue, Ratios, SynthSpec};
use yosr_core::features::FeatureTemplateConfig;
use yosr_core::Preprocessor;

fn utterance_accuracy(model: &yosr_core::LinearModel, dialogues: &[Dialogue]) -> f64 {
    let (mut right, mut total) = (0usize, 0usize);
    for d in dialogues {
        let preds = predict_dialogue(model, d).unwrap();
        for (p, (_, u)) in preds.iter().zip(d.utterances()) {
            total += 1;
            right += usize::from(Some(p.act) == u.act);
        }
    }
    right as f64 / total as f64
}

#[test]
fn synthetic_acts_are_learned() {
    let corpus = synth_corpus(&SynthSpec::new(40, 7), &Preprocessor::default()).unwrap();
    let split = split_dataset(&corpus, Ratios::default(), 7).unwrap();
    let set = build_training_set(&split.train, &FeatureTemplateConfig::default()).unwrap();
    let model = train(&set, &TrainConfig::default()).unwrap();
    assert!(utterance_accuracy(&model, &split.train) >= 0.99);
    assert!(utterance_accuracy(&model, &split.test) >= 0.95);

    let pw = train(
        &set,
        &TrainConfig {
            strategy: Strategy::Pairwise,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(utterance_accuracy(&pw, &split.test) >= 0.90);
}

#[test]
fn objective_decreases() {
    let corpus = synth_corpus(&SynthSpec::new(40, 7), &Preprocessor::default()).unwrap();
    let split = split_dataset(&corpus, Ratios::default(), 7).unwrap();
    let set = build_training_set(&split.train, &FeatureTemplateConfig::default()).unwrap();
    let cfg = TrainConfig {
        averaging: false,
        ..Default::default()
    };
    let plan = TrainingPlan::new(&set, set.labels(), cfg).unwrap();
    for k in 0..plan.task_count() {
        let j = plan.solve_traced(k).epoch_objectives;
        for w in j.windows(2) {
            assert!(w[1] <= w[0] + 1e-6, "task {k}: {j:?}");
        }
    }
}

#[test]
fn wider_window_reaches_an_offset_cue() {
    let mut spec = SynthSpec::new(40, 3);
    spec.cue = CuePlacement::Offset(2);
    let corpus = synth_corpus(&spec, &Preprocessor::default()).unwrap();
    let split = split_dataset(&corpus, Ratios::default(), 3).unwrap();
    let acc = |size| {
        let set =
            build_training_set(&split.train, &FeatureTemplateConfig::symmetric(size)).unwrap();
        utterance_accuracy(&train(&set, &TrainConfig::default()).unwrap(), &split.test)
    };
    assert!(acc(2) > acc(1));
}

#[test]
fn two_label_strategies_agree_when_separable() {
    use yosr_core::corpus::{ActLabel, Domain, Genre, SpeakerType, Turn, Utterance};
    let words = [
        ("tmAm", ActLabel::Agree),
        ("lA", ActLabel::Disagree),
        ("Akyd", ActLabel::Agree),
        ("mA$y", ActLabel::Agree),
    ];
    let dialogues: Vec<Dialogue> = (0..30)
        .map(|i| Dialogue {
            id: format!("d{i}"),
            domain: Domain::Banks,
            genre: Genre::Spoken,
            turns: (0..4)
                .map(|t| {
                    let (w, a) = words[(i * 7 + t * 3) % words.len()];
                    Turn {
                        speaker: SpeakerType::Customer,
                        utterances: vec![Utterance::from_tokens(vec![w.into()], Some(a))],
                    }
                })
                .collect(),
        })
        .collect();
    let set = build_training_set(&dialogues, &FeatureTemplateConfig::default()).unwrap();
    assert_eq!(set.labels().len(), 2);
    let ova = train(&set, &TrainConfig::default()).unwrap();
    let pw = train(
        &set,
        &TrainConfig {
            strategy: Strategy::Pairwise,
            ..Default::default()
        },
    )
    .unwrap();
    let agree = set
        .examples
        .iter()
        .filter(|e| {
            let a = ova.predict_token(&e.features).tag;
            assert_eq!(a, e.tag);
            a == pw.predict_token(&e.features).tag
        })
        .count();
    assert!(agree as f64 >= 0.99 * set.examples.len() as f64);
}
