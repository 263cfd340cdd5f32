//! Finite binary words and bit-level plumbing.
//!
//! `BitString` is the universal currency of the crate: generator inputs and
//! outputs, proof payloads, truth tables and witnesses are all finite bit
//! strings. Bit 0 is the first (leftmost, most significant for ordering)
//! bit; lexicographic comparison of equal-length words compares bit 0 first.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite sequence of bits. The empty string is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        BitString { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    /// All-zeros word of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    /// All-ones word of the given length.
    pub fn ones(len: usize) -> Self {
        BitString {
            bits: vec![true; len],
        }
    }

    /// The `width`-bit MSB-first binary expansion of `value`.
    ///
    /// Panics if `width < 64` and `value` does not fit.
    pub fn from_index(value: u64, width: usize) -> Self {
        if width < 64 {
            assert!(
                value < (1u64 << width),
                "value {value} does not fit in {width} bits"
            );
        }
        let bits = (0..width)
            .map(|i| (value >> (width - 1 - i)) & 1 == 1)
            .collect();
        BitString { bits }
    }

    /// Interpret the word as an MSB-first integer. `None` if longer than 63 bits.
    pub fn to_index(&self) -> Option<u64> {
        if self.len() > 63 {
            return None;
        }
        let mut v = 0u64;
        for &b in &self.bits {
            v = (v << 1) | (b as u64);
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at position `i` (0 = first bit), `None` when out of range.
    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Concatenation: the bits of `self` followed by the bits of `other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    /// True iff `self` is an initial subword of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len() <= other.len() && other.bits[..self.len()] == self.bits[..]
    }

    /// The subword starting at position `from` (empty when `from >= len`).
    pub fn suffix_from(&self, from: usize) -> BitString {
        BitString {
            bits: self.bits.get(from..).unwrap_or(&[]).to_vec(),
        }
    }

    /// The first `len` bits. Panics if the string is shorter.
    pub fn prefix(&self, len: usize) -> BitString {
        BitString {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// Length-then-lex order: shorter words first, equal lengths compared
    /// bitwise from bit 0. This is the "x > y" order of sentence thresholds
    /// and the candidate order of budgeted proof search.
    pub fn cmp_len_lex(&self, other: &BitString) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"{}\"", self)
    }
}

/// Parse error for bit strings; only '0' and '1' are accepted.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {found:?} at position {pos}")]
pub struct ParseBitsError {
    pub pos: usize,
    pub found: char,
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                found => return Err(ParseBitsError { pos, found }),
            }
        }
        Ok(BitString { bits })
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Convenience constructor used pervasively in tests: `bits("0101")`.
pub fn bits(s: &str) -> BitString {
    s.parse().expect("literal bit string")
}

/// All words of length `c` in ascending lexicographic order (all-zeros first).
///
/// The stream is lazy; callers bound `c` by their own resource rules.
pub fn lex_words(c: usize) -> LexWords {
    LexWords {
        next: Some(vec![false; c]),
    }
}

pub struct LexWords {
    next: Option<Vec<bool>>,
}

impl Iterator for LexWords {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let current = self.next.take()?;
        let out = BitString {
            bits: current.clone(),
        };
        // Binary increment from the last bit; all-ones wraps to exhaustion.
        let mut next = current;
        let mut i = next.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            if next[i] {
                next[i] = false;
            } else {
                next[i] = true;
                self.next = Some(next);
                break;
            }
        }
        Some(out)
    }
}
