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

//! Round-trip properties of the file formats.

use std::collections::BTreeMap;

use proptest::prelude::*;
use yosr::config::parse_config;
use yosr::conll::{read_conll, write_conll};
use yosr::jsonl::{act_columns, read_jsonl, write_jsonl, write_jsonl_with_predictions};
use yosr::model_file::{decode_model, encode_model};
use yosr_core::classifier::BinaryWeights;
use yosr_core::corpus::{synth_corpus, SynthSpec};
use yosr_core::features::FrequencyPosTagger;
use yosr_core::{
    ActLabel, BioTag, FeatureDictionary, FeatureTemplateConfig, LinearModel, Preprocessor,
    Strategy as Scheme, TrainConfig, TransliterationTable,
};

fn weight() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(-0.0),
        Just(f64::MIN_POSITIVE / 8.0),
        Just(f64::MAX),
    ]
}

fn model() -> impl Strategy<Value = LinearModel> {
    let labels = prop::collection::btree_set(0usize..ActLabel::COUNT, 1..4);
    (
        labels,
        0usize..6,
        any::<bool>(),
        any::<u64>(),
        -5i32..=0,
        0i32..=5,
        any::<u8>(),
    )
        .prop_flat_map(|(acts, dim, pairwise, seed, left, right, bits)| {
            let mut tags: Vec<BioTag> = acts
                .iter()
                .flat_map(|&i| [BioTag::B(ActLabel::ALL[i]), BioTag::I(ActLabel::ALL[i])])
                .collect();
            tags.push(BioTag::O);
            tags.sort();
            let n = tags.len();
            let count = if pairwise { n * (n - 1) / 2 } else { n };
            let vectors =
                prop::collection::vec((prop::collection::vec(weight(), dim), weight()), count);
            let lexicon = prop::collection::btree_map("[a-zA-Z$<>|]{1,6}", "[A-Z]{1,5}", 0..4);
            (vectors, lexicon).prop_map(move |(vectors, lexicon)| {
                let bit = |i: u8| bits & (1 << i) != 0;
                let features = FeatureTemplateConfig {
                    left,
                    right,
                    use_tokens: bit(0),
                    use_pos: bit(1),
                    use_speaker: bit(2),
                    use_prev_act: bit(3),
                    use_prev_tags: bit(4),
                    quadratic: bit(5),
                };
                let strategy = if pairwise {
                    Scheme::Pairwise
                } else {
                    Scheme::Ova
                };
                LinearModel::new(
                    tags.clone(),
                    FeatureDictionary::from_names(
                        (0..dim).map(|i| format!("tok[0]=w{i} & ش")).collect(),
                    )
                    .unwrap(),
                    TrainConfig {
                        strategy,
                        seed,
                        epochs: 1 + (seed % 50) as usize,
                        ..TrainConfig::default()
                    },
                    features,
                    FrequencyPosTagger::from_lexicon(
                        lexicon.into_iter().collect::<BTreeMap<_, _>>(),
                    ),
                    vectors
                        .into_iter()
                        .map(|(weights, bias)| BinaryWeights { weights, bias })
                        .collect(),
                )
                .unwrap()
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_files_round_trip_bit_exactly(m in model()) {
        let bytes = encode_model(&m);
        let back = decode_model(&bytes).unwrap();
        prop_assert_eq!(encode_model(&back), bytes);
        for (a, b) in m.vectors().iter().zip(back.vectors()) {
            prop_assert_eq!(a.bias.to_bits(), b.bias.to_bits());
            for (x, y) in a.weights.iter().zip(&b.weights) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
        prop_assert_eq!(back, m);
    }

    #[test]
    fn corrupting_a_byte_never_panics(m in model(), at in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let mut bytes = encode_model(&m);
        let i = at.index(bytes.len());
        bytes[i] = byte;
        let _ = decode_model(&bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn jsonl_round_trips_byte_identically(n in 0usize..12, seed in any::<u64>()) {
        let pre = Preprocessor::default();
        let corpus = synth_corpus(&SynthSpec::new(n, seed), &pre).unwrap();
        let text = write_jsonl(&corpus);
        let back = read_jsonl(&text, &pre).unwrap();
        prop_assert_eq!(&back, &corpus);
        prop_assert_eq!(write_jsonl(&back), text);

        let preds: Vec<Vec<ActLabel>> = corpus
            .iter()
            .map(|d| d.utterances().map(|(_, u)| u.act.unwrap()).collect())
            .collect();
        let (gold, pred) = act_columns(&write_jsonl_with_predictions(&corpus, &preds)).unwrap();
        prop_assert_eq!(gold, pred);
    }

    #[test]
    fn conll_round_trips(n in 1usize..8, seed in any::<u64>()) {
        let pre = Preprocessor::default();
        let corpus = synth_corpus(&SynthSpec::new(n, seed), &pre).unwrap();
        let text = write_conll(&corpus, None);
        let back = read_conll(&text, &TransliterationTable::default()).unwrap();
        prop_assert_eq!(back.len(), corpus.len());
        for (a, b) in corpus.iter().zip(&back) {
            prop_assert_eq!(&a.id, &b.id);
            prop_assert_eq!(a.turns.len(), b.turns.len());
            let ua: Vec<_> = a.utterances().map(|(s, u)| (s, u.tokens.clone(), u.act)).collect();
            let ub: Vec<_> = b.utterances().map(|(s, u)| (s, u.tokens.clone(), u.act)).collect();
            prop_assert_eq!(ua, ub);
        }
        prop_assert_eq!(write_conll(&back, None), text);
    }

    #[test]
    fn config_entries_survive_formatting(
        entries in prop::collection::btree_map("[a-z][a-z-]{0,10}", "[^#\n\r]{0,12}", 0..8),
    ) {
        let text: String = entries.iter().map(|(k, v)| format!("  {k} =\t{v}  # note\n")).collect();
        let parsed = parse_config(&text).unwrap();
        prop_assert_eq!(parsed.len(), entries.len());
        for (e, (k, v)) in parsed.iter().zip(&entries) {
            prop_assert_eq!(&e.key, k);
            prop_assert_eq!(&e.value, v.trim());
        }
    }
}
