//! Shared domain types used across the pipeline.

use std::fmt;
use std::str::FromStr;

/// Binary segment class: peristalsis (`P`) or non-peristalsis (`NP`).
///
/// The same label set serves as ground truth for segments, as the CNN's
/// output classes, and as the hidden states of the semi-Markov refiner.
/// `NP` has index 0 and `P` index 1 everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    NonPeristalsis,
    Peristalsis,
}

impl ClassLabel {
    pub const COUNT: usize = 2;

    /// Both labels in index order (`NP`, `P`).
    pub const ALL: [ClassLabel; 2] = [ClassLabel::NonPeristalsis, ClassLabel::Peristalsis];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            ClassLabel::NonPeristalsis => 0,
            ClassLabel::Peristalsis => 1,
        }
    }

    #[inline]
    pub fn from_index(idx: usize) -> Option<Self> {
        match idx {
            0 => Some(ClassLabel::NonPeristalsis),
            1 => Some(ClassLabel::Peristalsis),
            _ => None,
        }
    }

    /// The opposite label.
    #[inline]
    pub fn other(self) -> Self {
        match self {
            ClassLabel::NonPeristalsis => ClassLabel::Peristalsis,
            ClassLabel::Peristalsis => ClassLabel::NonPeristalsis,
        }
    }

    /// Mean of the Laplace emission attached to this state when treated as
    /// a hidden state: 1 for `P`, 0 for `NP`.
    #[inline]
    pub fn emission_mean(self) -> f64 {
        match self {
            ClassLabel::NonPeristalsis => 0.0,
            ClassLabel::Peristalsis => 1.0,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::NonPeristalsis => write!(f, "NP"),
            ClassLabel::Peristalsis => write!(f, "P"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P" | "p" => Ok(ClassLabel::Peristalsis),
            "NP" | "np" => Ok(ClassLabel::NonPeristalsis),
            other => Err(format!("unknown class label {other:?} (expected P or NP)")),
        }
    }
}

/// One subject's classifier output in time order: for each segment start,
/// the predicted probability of class `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbSequence {
    pub subject_id: String,
    items: Vec<(f64, f64)>,
}

impl ProbSequence {
    /// Builds a sequence, checking that starts are strictly increasing and
    /// probabilities lie in `[0, 1]`.
    pub fn new(subject_id: impl Into<String>, items: Vec<(f64, f64)>) -> Result<Self, String> {
        for (i, &(start, p)) in items.iter().enumerate() {
            if !start.is_finite() {
                return Err(format!("non-finite start at position {i}"));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("probability {p} at position {i} outside [0, 1]"));
            }
            if i > 0 && start <= items[i - 1].0 {
                return Err(format!(
                    "starts not strictly increasing at position {i} ({} after {})",
                    start,
                    items[i - 1].0
                ));
            }
        }
        Ok(Self { subject_id: subject_id.into(), items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `(start, probability)` pairs in time order.
    pub fn items(&self) -> &[(f64, f64)] {
        &self.items
    }

    pub fn starts(&self) -> impl Iterator<Item = f64> + '_ {
        self.items.iter().map(|&(s, _)| s)
    }

    /// Probabilities of class `P` in time order.
    pub fn probs(&self) -> Vec<f64> {
        self.items.iter().map(|&(_, p)| p).collect()
    }
}

/// Deterministically derives an independent seed for a sub-stream
/// (fold, subject, epoch) from a base seed. SplitMix64 step.
#[inline]
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
