//! The five admissible cyclic edge length arrangements of a pentagon whose
//! vertices all have degree 3, and the local feasibility predicates used by
//! the search engine.
//!
//! Labels are abstract symbols; `a`, `b`, `c` never carry numeric lengths.
//! Distinctness of the lengths is modeled purely by symbol inequality.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the three abstract edge lengths. Ordered `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 3] = [EdgeLabel::A, EdgeLabel::B, EdgeLabel::C];

    pub fn as_char(self) -> char {
        match self {
            EdgeLabel::A => 'a',
            EdgeLabel::B => 'b',
            EdgeLabel::C => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<EdgeLabel> {
        match c {
            'a' => Some(EdgeLabel::A),
            'b' => Some(EdgeLabel::B),
            'c' => Some(EdgeLabel::C),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a word like `"aabab"` into labels.
pub fn parse_labels(s: &str) -> Option<Vec<EdgeLabel>> {
    s.chars().map(EdgeLabel::from_char).collect()
}

/// Formats a label slice as a word like `"aabab"`.
pub fn labels_to_string(labels: &[EdgeLabel]) -> String {
    labels.iter().map(|l| l.as_char()).collect()
}

/// The five admissible edge length combinations, up to rotation and
/// reflection of the pentagon boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgePattern {
    #[serde(rename = "a5")]
    A5,
    #[serde(rename = "a4b")]
    A4B,
    #[serde(rename = "a2b2c")]
    A2B2C,
    #[serde(rename = "a3bc")]
    A3BC,
    #[serde(rename = "a3b2")]
    A3B2,
}

use EdgeLabel::{A, B, C};

impl EdgePattern {
    pub const ALL: [EdgePattern; 5] = [
        EdgePattern::A5,
        EdgePattern::A4B,
        EdgePattern::A2B2C,
        EdgePattern::A3BC,
        EdgePattern::A3B2,
    ];

    /// The canonical cyclic sequence of the pattern.
    pub fn canonical(self) -> [EdgeLabel; 5] {
        match self {
            EdgePattern::A5 => [A, A, A, A, A],
            EdgePattern::A4B => [A, A, A, A, B],
            EdgePattern::A2B2C => [A, A, B, B, C],
            EdgePattern::A3BC => [A, A, A, B, C],
            EdgePattern::A3B2 => [A, A, A, B, B],
        }
    }

    /// Labels actually used by the pattern.
    pub fn alphabet(self) -> &'static [EdgeLabel] {
        match self {
            EdgePattern::A5 => &[A],
            EdgePattern::A4B | EdgePattern::A3B2 => &[A, B],
            EdgePattern::A2B2C | EdgePattern::A3BC => &[A, B, C],
        }
    }

    /// CLI/JSON name: lowercase, exact.
    pub fn name(self) -> &'static str {
        match self {
            EdgePattern::A5 => "a5",
            EdgePattern::A4B => "a4b",
            EdgePattern::A2B2C => "a2b2c",
            EdgePattern::A3BC => "a3bc",
            EdgePattern::A3B2 => "a3b2",
        }
    }

    pub fn from_name(name: &str) -> Option<EdgePattern> {
        EdgePattern::ALL.iter().copied().find(|p| p.name() == name)
    }

    /// All distinct length sequences among the ten rotations and reflections
    /// of the canonical sequence. Order: canonical first, then rotations by
    /// increasing offset, then reflections by increasing offset; duplicates
    /// dropped on first occurrence.
    pub fn placements(self) -> &'static [Placement] {
        static TABLES: std::sync::OnceLock<[Vec<Placement>; 5]> = std::sync::OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            [
                compute_placements(EdgePattern::A5),
                compute_placements(EdgePattern::A4B),
                compute_placements(EdgePattern::A2B2C),
                compute_placements(EdgePattern::A3BC),
                compute_placements(EdgePattern::A3B2),
            ]
        });
        let idx = EdgePattern::ALL.iter().position(|p| *p == self).unwrap();
        &tables[idx]
    }
}

impl fmt::Display for EdgePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete alignment of a pattern to a face's cyclic edge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub offset: u8,
    pub reflected: bool,
    pub sequence: [EdgeLabel; 5],
}

fn compute_placements(pattern: EdgePattern) -> Vec<Placement> {
    let canon = pattern.canonical();
    let mut out: Vec<Placement> = Vec::new();
    for &reflected in &[false, true] {
        for offset in 0..5u8 {
            let mut seq = [A; 5];
            for (i, slot) in seq.iter_mut().enumerate() {
                let k = if reflected {
                    (offset as usize + 5 - i) % 5
                } else {
                    (offset as usize + i) % 5
                };
                *slot = canon[k];
            }
            if !out.iter().any(|p| p.sequence == seq) {
                out.push(Placement {
                    offset,
                    reflected,
                    sequence: seq,
                });
            }
        }
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("label {label} is not in the alphabet of pattern {pattern}")]
    LabelOutsideAlphabet { pattern: EdgePattern, label: EdgeLabel },
}

/// True iff `seq` equals some placement of `pattern`.
pub fn tile_matches(seq: &[EdgeLabel; 5], pattern: EdgePattern) -> bool {
    pattern.placements().iter().any(|p| p.sequence == *seq)
}

/// True iff at least one placement agrees with every assigned position.
/// A fully assigned sequence reduces to [`tile_matches`].
pub fn partial_feasible(seq: &[Option<EdgeLabel>; 5], pattern: EdgePattern) -> bool {
    pattern.placements().iter().any(|p| {
        seq.iter()
            .zip(p.sequence.iter())
            .all(|(slot, want)| slot.is_none_or(|l| l == *want))
    })
}

/// True iff the unordered pair `{l1, l2}` occurs as consecutive labels in the
/// canonical cyclic sequence of `pattern`.
///
/// This is the degree-3 closing test: a vertex of degree 3 whose two known
/// edges have labels `l1` and `l2` can only be closed by a tile in which the
/// two labels are adjacent.
pub fn adjacent_pair_feasible(
    pattern: EdgePattern,
    l1: EdgeLabel,
    l2: EdgeLabel,
) -> Result<bool, PatternError> {
    for &l in &[l1, l2] {
        if !pattern.alphabet().contains(&l) {
            return Err(PatternError::LabelOutsideAlphabet { pattern, label: l });
        }
    }
    let canon = pattern.canonical();
    Ok((0..5).any(|i| {
        let x = canon[i];
        let y = canon[(i + 1) % 5];
        (x, y) == (l1, l2) || (x, y) == (l2, l1)
    }))
}
