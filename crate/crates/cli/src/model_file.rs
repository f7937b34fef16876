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

//! Binary model files.
//!
//! All integers and floats are little-endian; strings are a `u32` byte
//! length followed by UTF-8.
//!
//! ```text
//! "YOSR"                      magic
//! u32                         format version
//! u8                          strategy (0 ova, 1 pairwise)
//! u64 f64 f64 u64 u8          epochs, lambda, eta0, seed, averaging
//! i32 i32 u8                  window left, right, feature flags
//! u32 + strings               labels, canonical order
//! u32 + strings               feature dictionary, by index
//! u32 + (string, string)*     POS lexicon
//! u32                         weight vector count
//!   f64 + f64 * features      bias, then one weight per feature
//! ```
//!
//! Feature flags, lowest bit first: tokens, pos, speaker, prev act, prev tags,
//! quadratic.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use yosr_core::classifier::{BinaryWeights, FORMAT_VERSION};
use yosr_core::features::FrequencyPosTagger;
use yosr_core::{
    BioTag, FeatureDictionary, FeatureTemplateConfig, LinearModel, Strategy, TrainConfig,
};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"YOSR";

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn i32(&mut self, v: i32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn len(&mut self, n: usize) {
        self.u32(u32::try_from(n).expect("count fits in u32"));
    }
    fn str(&mut self, s: &str) {
        self.len(s.len());
        self.0.extend_from_slice(s.as_bytes());
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptModel(msg.into())
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| {
                corrupt(format!(
                    "truncated at byte {} (wanted {n} more, {} left)",
                    self.at,
                    self.bytes.len() - self.at
                ))
            })?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }
    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("exact length"))
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32> {
        self.array().map(u32::from_le_bytes)
    }
    fn i32(&mut self) -> Result<i32> {
        self.array().map(i32::from_le_bytes)
    }
    fn u64(&mut self) -> Result<u64> {
        self.array().map(u64::from_le_bytes)
    }
    fn f64(&mut self) -> Result<f64> {
        self.array().map(f64::from_le_bytes)
    }
    /// A count, checked against the bytes left so garbage cannot trigger
    /// huge allocations.
    fn count(&mut self, min_item_size: usize) -> Result<usize> {
        let n = self.u32()? as usize;
        if n.saturating_mul(min_item_size) > self.bytes.len() - self.at {
            return Err(corrupt(format!(
                "count {n} at byte {} exceeds the file size",
                self.at - 4
            )));
        }
        Ok(n)
    }
    fn str(&mut self) -> Result<String> {
        let n = self.count(1)?;
        let at = self.at;
        String::from_utf8(self.take(n)?.to_vec())
            .map_err(|_| corrupt(format!("invalid UTF-8 at byte {at}")))
    }
    fn strings(&mut self) -> Result<Vec<String>> {
        let n = self.count(4)?;
        (0..n).map(|_| self.str()).collect()
    }
}

fn flags(f: &FeatureTemplateConfig) -> u8 {
    [
        f.use_tokens,
        f.use_pos,
        f.use_speaker,
        f.use_prev_act,
        f.use_prev_tags,
        f.quadratic,
    ]
    .iter()
    .enumerate()
    .fold(0, |acc, (i, &on)| acc | (u8::from(on) << i))
}

pub fn encode_model(model: &LinearModel) -> Vec<u8> {
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MAGIC);
    w.u32(FORMAT_VERSION);
    w.u8(match model.strategy() {
        Strategy::Ova => 0,
        Strategy::Pairwise => 1,
    });
    let c = model.config();
    w.u64(c.epochs as u64);
    w.f64(c.lambda);
    w.f64(c.eta0);
    w.u64(c.seed);
    w.u8(c.averaging.into());
    let f = model.feature_config();
    w.i32(f.left);
    w.i32(f.right);
    w.u8(flags(f));
    w.len(model.labels().len());
    for l in model.labels() {
        w.str(&l.to_string());
    }
    w.len(model.dict().len());
    for name in model.dict().names() {
        w.str(name);
    }
    let lex = model.pos_tagger().lexicon();
    w.len(lex.len());
    for (k, v) in lex {
        w.str(k);
        w.str(v);
    }
    w.len(model.vectors().len());
    for v in model.vectors() {
        w.f64(v.bias);
        for &x in &v.weights {
            w.f64(x);
        }
    }
    w.0
}

pub fn decode_model(bytes: &[u8]) -> Result<LinearModel> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(4).ok() != Some(MAGIC.as_slice()) {
        return Err(corrupt("missing YOSR header"));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::ModelVersion {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let strategy = match r.u8()? {
        0 => Strategy::Ova,
        1 => Strategy::Pairwise,
        other => return Err(corrupt(format!("unknown strategy code {other}"))),
    };
    let epochs = usize::try_from(r.u64()?).map_err(|_| corrupt("epoch count out of range"))?;
    let lambda = r.f64()?;
    let eta0 = r.f64()?;
    let seed = r.u64()?;
    let averaging = match r.u8()? {
        0 => false,
        1 => true,
        other => return Err(corrupt(format!("bad averaging flag {other}"))),
    };
    let config = TrainConfig {
        strategy,
        epochs,
        lambda,
        eta0,
        seed,
        averaging,
    };
    let left = r.i32()?;
    let right = r.i32()?;
    let bits = r.u8()?;
    if bits >> 6 != 0 {
        return Err(corrupt(format!("unknown feature flags {bits:#04x}")));
    }
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
    features.validate().map_err(|e| corrupt(e.to_string()))?;
    let labels = r
        .strings()?
        .iter()
        .map(|s| {
            s.parse::<BioTag>()
                .map_err(|_| corrupt(format!("bad label {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let dict = FeatureDictionary::from_names(r.strings()?)
        .ok_or_else(|| corrupt("duplicate feature names"))?;
    let n_lex = r.count(8)?;
    let mut lexicon = BTreeMap::new();
    for _ in 0..n_lex {
        let k = r.str()?;
        let v = r.str()?;
        lexicon.insert(k, v);
    }
    let n_vec = r.count(8)?;
    let dim = dict.len();
    let mut vectors = Vec::with_capacity(n_vec);
    for _ in 0..n_vec {
        let bias = r.f64()?;
        let raw = r.take(
            dim.checked_mul(8)
                .ok_or_else(|| corrupt("dictionary too large"))?,
        )?;
        let weights = raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        vectors.push(BinaryWeights { weights, bias });
    }
    if r.at != bytes.len() {
        return Err(corrupt(format!("{} trailing bytes", bytes.len() - r.at)));
    }
    LinearModel::new(
        labels,
        dict,
        config,
        features,
        FrequencyPosTagger::from_lexicon(lexicon),
        vectors,
    )
    .map_err(|e| corrupt(e.to_string()))
}

pub fn save_model(path: &Path, model: &LinearModel) -> Result<()> {
    fs::write(path, encode_model(model)).map_err(Error::io(path))
}

pub fn load_model(path: &Path) -> Result<LinearModel> {
    decode_model(&fs::read(path).map_err(Error::io(path))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use yosr_core::ActLabel;

    fn tiny(strategy: Strategy) -> LinearModel {
        let labels = vec![
            BioTag::B(ActLabel::Greeting),
            BioTag::I(ActLabel::Greeting),
            BioTag::O,
        ];
        let dict =
            FeatureDictionary::from_names(vec!["tok[0]=a".into(), "tok[0]=b".into()]).unwrap();
        let lexicon = BTreeMap::from([("a".to_string(), "NOUN".to_string())]);
        let vectors = (0..3)
            .map(|i| BinaryWeights {
                weights: vec![0.1 * i as f64, -1.0 / 3.0],
                bias: f64::MIN_POSITIVE * i as f64,
            })
            .collect();
        let config = TrainConfig {
            strategy,
            seed: u64::MAX,
            ..TrainConfig::default()
        };
        let features = FeatureTemplateConfig {
            use_pos: false,
            ..FeatureTemplateConfig::symmetric(3)
        };
        LinearModel::new(
            labels,
            dict,
            config,
            features,
            FrequencyPosTagger::from_lexicon(lexicon),
            vectors,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        for s in [Strategy::Ova, Strategy::Pairwise] {
            let m = tiny(s);
            let bytes = encode_model(&m);
            let back = decode_model(&bytes).unwrap();
            assert_eq!(back, m);
            assert_eq!(encode_model(&back), bytes);
        }
    }

    #[test]
    fn header_and_version_are_checked() {
        let bytes = encode_model(&tiny(Strategy::Ova));
        assert_eq!(&bytes[..4], b"YOSR");
        assert!(matches!(
            decode_model(b"NOPE\x01\0\0\0"),
            Err(Error::CorruptModel(_))
        ));
        let mut v2 = bytes.clone();
        v2[4] = 2;
        assert!(matches!(
            decode_model(&v2),
            Err(Error::ModelVersion {
                found: 2,
                expected: 1
            })
        ));
    }

    #[test]
    fn every_truncation_is_rejected() {
        let bytes = encode_model(&tiny(Strategy::Pairwise));
        for n in 0..bytes.len() {
            assert!(
                matches!(decode_model(&bytes[..n]), Err(Error::CorruptModel(_))),
                "prefix {n}"
            );
        }
        let mut long = bytes;
        long.push(0);
        assert!(matches!(decode_model(&long), Err(Error::CorruptModel(_))));
    }

    #[test]
    fn non_finite_weights_are_rejected() {
        let mut bytes = encode_model(&tiny(Strategy::Ova));
        let n = bytes.len();
        bytes[n - 8..].copy_from_slice(&f64::NAN.to_le_bytes());
        assert!(matches!(decode_model(&bytes), Err(Error::CorruptModel(_))));
    }
}
