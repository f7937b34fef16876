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

use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

macro_rules! acts {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Dialogue acts of the annotation schema, in canonical order.
        ///
        /// The declaration order is the canonical order used for every
        /// deterministic tie-break.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum ActLabel {
            $($variant),+
        }

        impl ActLabel {
            pub const ALL: &'static [ActLabel] = &[$(ActLabel::$variant),+];
            pub const COUNT: usize = Self::ALL.len();

            pub const fn name(self) -> &'static str {
                match self {
                    $(ActLabel::$variant => $name),+
                }
            }
        }
    };
}

acts! {
    TakingRequest => "Taking-Request",
    ServiceQuestion => "Service-Question",
    ConfirmQuestion => "Confirm-Question",
    YesNoQuestion => "YesNo-Question",
    ChoiceQuestion => "Choice-Question",
    OtherQuestion => "Other-Question",
    TurnAssign => "Turn-Assign",
    ServiceAnswer => "Service-Answer",
    OtherAnswer => "Other-Answer",
    Agree => "Agree",
    Disagree => "Disagree",
    Greeting => "Greeting",
    Inform => "Inform",
    Thanking => "Thanking",
    Apology => "Apology",
    MissUnderstandingSign => "MissUnderstandingSign",
    Correct => "Correct",
    Pausing => "Pausing",
    Suggest => "Suggest",
    Promise => "Promise",
    Warning => "Warning",
    Offer => "Offer",
    Opening => "Opening",
    Closing => "Closing",
    SelfIntroduce => "Self-Introduce",
}

impl ActLabel {
    /// Position in the canonical order.
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown dialogue act {0:?}")]
pub struct UnknownAct(pub alloc::string::String);

impl FromStr for ActLabel {
    type Err = UnknownAct;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActLabel::ALL
            .iter()
            .copied()
            .find(|act| act.name() == s)
            .ok_or_else(|| UnknownAct(s.into()))
    }
}

impl fmt::Display for ActLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ActLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ActLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = alloc::string::String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
