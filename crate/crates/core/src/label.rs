//! Side labels of the triangular tile.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the three side types of a tile. In the short text notation they
/// are written `a`, `b`, `c`; in JSON as `"alpha"`, `"beta"`, `"gamma"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Alpha,
    Beta,
    Gamma,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Alpha, Label::Beta, Label::Gamma];

    pub fn index(self) -> usize {
        match self {
            Label::Alpha => 0,
            Label::Beta => 1,
            Label::Gamma => 2,
        }
    }

    pub fn from_index(i: usize) -> Label {
        Label::ALL[i % 3]
    }

    /// Single-letter form used in walk notation.
    pub fn letter(self) -> char {
        match self {
            Label::Alpha => 'a',
            Label::Beta => 'b',
            Label::Gamma => 'c',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Alpha => "alpha",
            Label::Beta => "beta",
            Label::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown side label {0:?}")]
pub struct ParseLabelError(pub String);

impl FromStr for Label {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" | "alpha" | "α" => Ok(Label::Alpha),
            "b" | "beta" | "β" => Ok(Label::Beta),
            "c" | "gamma" | "γ" => Ok(Label::Gamma),
            _ => Err(ParseLabelError(s.to_string())),
        }
    }
}

/// A permutation of the three labels, stored as images of (alpha, beta, gamma).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelMap(pub [Label; 3]);

impl LabelMap {
    pub const IDENTITY: LabelMap = LabelMap([Label::Alpha, Label::Beta, Label::Gamma]);

    pub fn apply(&self, l: Label) -> Label {
        self.0[l.index()]
    }

    /// All six permutations of the label set, identity first.
    pub fn all() -> [LabelMap; 6] {
        use Label::*;
        [
            LabelMap([Alpha, Beta, Gamma]),
            LabelMap([Alpha, Gamma, Beta]),
            LabelMap([Beta, Alpha, Gamma]),
            LabelMap([Beta, Gamma, Alpha]),
            LabelMap([Gamma, Alpha, Beta]),
            LabelMap([Gamma, Beta, Alpha]),
        ]
    }

    pub fn swap(x: Label, y: Label) -> LabelMap {
        let mut m = LabelMap::IDENTITY;
        m.0[x.index()] = y;
        m.0[y.index()] = x;
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == LabelMap::IDENTITY
    }
}
