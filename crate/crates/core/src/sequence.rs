//! Crossing sequences and their textual form.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::DiagramOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSequenceError {
    #[error("invalid crossing value {token:?}")]
    BadToken { token: String },
    #[error("crossing value {value} is outside 1..=60")]
    OutOfRange { value: u64 },
}

/// Gap indices of successive crossings along the sweep.
///
/// Entry `i` swaps the curves at ranks `i` and `i + 1`, rank 1 being the
/// outermost curve on the sweep ray.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingSequence(Vec<u8>);

impl CrossingSequence {
    pub fn new(values: Vec<u8>) -> Self {
        CrossingSequence(values)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    /// Position of the first value outside `1..=n-1`.
    pub fn first_out_of_range(&self, order: DiagramOrder) -> Option<usize> {
        let top = order.get() as u8 - 1;
        self.0.iter().position(|&v| v == 0 || v > top)
    }

    /// The sequence repeated `times` times.
    pub fn repeat(&self, times: usize) -> CrossingSequence {
        CrossingSequence(self.0.repeat(times))
    }
}

impl Deref for CrossingSequence {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for CrossingSequence {
    fn from(values: Vec<u8>) -> Self {
        CrossingSequence(values)
    }
}

impl From<&[u8]> for CrossingSequence {
    fn from(values: &[u8]) -> Self {
        CrossingSequence(values.to_vec())
    }
}

impl FromIterator<u8> for CrossingSequence {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        CrossingSequence(iter.into_iter().collect())
    }
}

impl fmt::Display for CrossingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Comma- or whitespace-separated decimals. The empty string is the empty sequence.
impl FromStr for CrossingSequence {
    type Err = ParseSequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|token| {
                let value: u64 = token.parse().map_err(|_| ParseSequenceError::BadToken {
                    token: token.to_string(),
                })?;
                if value == 0 || value > 60 {
                    return Err(ParseSequenceError::OutOfRange { value });
                }
                Ok(value as u8)
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(CrossingSequence)
    }
}

/// Parses a file of sequences, one per line.
///
/// `#` starts a comment. Blank lines are skipped, except that when
/// `allow_empty` is set an uncommented blank line stands for the empty
/// sequence (the only sequence there is for orders 3 and 5).
pub fn parse_sequence_lines(
    text: &str,
    allow_empty: bool,
) -> Result<Vec<CrossingSequence>, (usize, ParseSequenceError)> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let (body, commented) = match raw.find('#') {
            Some(i) => (&raw[..i], true),
            None => (raw, false),
        };
        if body.trim().is_empty() {
            if allow_empty && !commented {
                out.push(CrossingSequence::default());
            }
            continue;
        }
        out.push(body.parse().map_err(|e| (lineno + 1, e))?);
    }
    Ok(out)
}
