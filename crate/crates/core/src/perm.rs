//! Permutations in one-line notation.
//!
//! Positions and values are 1-indexed at the API boundary: a permutation of
//! size `n` holds each of `1..=n` exactly once. The empty permutation is a
//! valid value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty token in permutation text {0:?}")]
    EmptyToken(String),
    #[error("invalid token {0:?}: not a positive integer")]
    BadToken(String),
    #[error("value {value} appears more than once")]
    Duplicate { value: usize },
    #[error("value {value} is outside 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("duplicate entries in word; reduction needs distinct values")]
    NotDistinct,
    #[error("unknown symmetry {0:?}; expected one of i, r, c")]
    UnknownSymmetry(char),
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that `entries` is a bijection on `1..=n`.
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, n });
            }
            if seen[v] {
                return Err(PermError::Duplicate { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    /// Trusted constructor for callers that maintain the bijection invariant.
    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.entries
    }

    /// The entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// The 1-based position holding value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.entries.iter().position(|&e| e == v).map(|p| p + 1).unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            entries: self.entries.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn apply(&self, s: Symmetry) -> Self {
        match s {
            Symmetry::Inverse => self.inverse(),
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
        }
    }

    /// Applies a word over `{i, r, c}` left to right, so `"rc"` is the
    /// complement of the reverse.
    pub fn apply_symmetry(&self, word: &str) -> Result<Self, PermError> {
        let word = parse_symmetry_word(word)?;
        Ok(word.iter().fold(self.clone(), |p, &s| p.apply(s)))
    }

    /// Inserts `n + 1` after the first `site` entries.
    pub fn insert_max(&self, site: usize) -> Self {
        let mut e = Vec::with_capacity(self.len() + 1);
        e.extend_from_slice(&self.entries[..site]);
        e.push(self.len() + 1);
        e.extend_from_slice(&self.entries[site..]);
        Permutation { entries: e }
    }

    /// The reduction of the entries that are at most `k`.
    pub fn restrict_to(&self, k: usize) -> Self {
        Permutation {
            entries: self.entries.iter().copied().filter(|&v| v <= k).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts a contiguous digit word (`"25143"`) or comma separated
    /// integers (`"10,2,1,..."`). The empty string is the empty permutation.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Permutation::empty());
        }
        let values = if text.contains(',') {
            text.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    if tok.is_empty() {
                        return Err(PermError::EmptyToken(text.to_string()));
                    }
                    tok.parse::<usize>()
                        .map_err(|_| PermError::BadToken(tok.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::BadToken(c.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order-isomorphic relabeling of a word of distinct values onto `1..=k`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation, PermError> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(PermError::NotDistinct);
    }
    let mut entries = vec![0; word.len()];
    for (rank, &pos) in order.iter().enumerate() {
        entries[pos] = rank + 1;
    }
    Ok(Permutation { entries })
}

/// One of the three generating symmetries of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Inverse,
    Reverse,
    Complement,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Inverse, Symmetry::Reverse, Symmetry::Complement];

    pub fn letter(self) -> char {
        match self {
            Symmetry::Inverse => 'i',
            Symmetry::Reverse => 'r',
            Symmetry::Complement => 'c',
        }
    }
}

impl TryFrom<char> for Symmetry {
    type Error = PermError;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            'i' => Ok(Symmetry::Inverse),
            'r' => Ok(Symmetry::Reverse),
            'c' => Ok(Symmetry::Complement),
            other => Err(PermError::UnknownSymmetry(other)),
        }
    }
}

pub fn parse_symmetry_word(word: &str) -> Result<Vec<Symmetry>, PermError> {
    word.chars().map(Symmetry::try_from).collect()
}

/// Rearranges `a` into the next permutation in lexicographic order.
/// Returns `false` (leaving `a` untouched) when `a` is the last one.
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Visits every permutation of size `n` whose first entry is `first`, in
/// lexicographic order, without allocating per permutation. `n = 0` with
/// `first = 0` visits the empty permutation once.
pub fn for_each_in_shard<F: FnMut(&[usize])>(n: usize, first: usize, mut visit: F) {
    if n == 0 {
        visit(&[]);
        return;
    }
    assert!((1..=n).contains(&first), "shard {first} out of range for n={n}");
    let mut buf: Vec<usize> = Vec::with_capacity(n);
    buf.push(first);
    buf.extend((1..=n).filter(|&v| v != first));
    loop {
        visit(&buf);
        if !next_permutation(&mut buf[1..]) {
            break;
        }
    }
}

/// Shard keys for `n`: the possible first entries, or a single empty shard
/// for `n = 0`.
pub fn shards(n: usize) -> Vec<usize> {
    if n == 0 {
        vec![0]
    } else {
        (1..=n).collect()
    }
}

/// All permutations of `1..=n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<usize>>,
    first_fixed: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: Some((1..=n).collect()),
            first_fixed: false,
        }
    }

    /// Only the permutations starting with `first`; the shards for
    /// `first = 1..=n` partition `Permutations::new(n)` in order.
    pub fn with_first(n: usize, first: usize) -> Self {
        assert!((1..=n).contains(&first), "shard {first} out of range for n={n}");
        let mut start = vec![first];
        start.extend((1..=n).filter(|&v| v != first));
        Permutations {
            current: Some(start),
            first_fixed: true,
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        let more = if self.first_fixed && !succ.is_empty() {
            next_permutation(&mut succ[1..])
        } else {
            next_permutation(&mut succ)
        };
        if more {
            self.current = Some(succ);
        }
        Some(Permutation { entries: cur })
    }
}

pub fn permutations_of(n: usize) -> Permutations {
    Permutations::new(n)
}
