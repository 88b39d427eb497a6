//! Bi-vincular patterns `(sigma, X, Y)` and their occurrences.
//!
//! `X` constrains positions and `Y` constrains values. With the boundary
//! convention `i_0 = j_0 = 0` and `i_{k+1} = j_{k+1} = n + 1`, an element
//! `x` of `X` forces `i_{x+1} = i_x + 1` and an element `y` of `Y` forces
//! `j_{y+1} = j_y + 1`, where `j_1 < ... < j_k` are the letters of the
//! occurrence in increasing order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::{parse_symmetry_word, PermError, Permutation, Symmetry};

/// Longest pattern the parser accepts; `sigma` is written as a digit word.
pub const MAX_PATTERN_LEN: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("malformed pattern {0:?}; expected <sigma>|X=<ints>|Y=<ints>")]
    Malformed(String),
    #[error("malformed sigma {text:?}: {source}")]
    BadSigma { text: String, source: PermError },
    #[error("pattern length must be in 1..={MAX_PATTERN_LEN}, got {0}")]
    BadLength(usize),
    #[error("set element {value} is outside 0..={k}")]
    OutOfRange { value: usize, k: usize },
    #[error("set element {0} listed twice")]
    Duplicate(usize),
    #[error("invalid set element {0:?}")]
    BadElement(String),
    #[error("patterns are only enumerated for lengths 1..=4, got {0}")]
    EnumerationGuard(usize),
    #[error(transparent)]
    Symmetry(#[from] PermError),
}

/// A subset of `{0, ..., k}` stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoundarySet(u16);

impl BoundarySet {
    pub const EMPTY: BoundarySet = BoundarySet(0);

    pub fn from_bits(bits: u16) -> Self {
        BoundarySet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 16 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&v| self.contains(v))
    }

    /// `k - S = { k - s : s in S }`.
    pub fn mirror(self, k: usize) -> Self {
        self.iter().map(|s| k - s).collect()
    }

    /// Every subset of `{0, ..., k}` in increasing bitmask order.
    pub fn all(k: usize) -> impl Iterator<Item = BoundarySet> {
        (0..(1u16 << (k + 1))).map(BoundarySet)
    }

    fn max(self) -> Option<usize> {
        (0..16).rev().find(|&v| self.contains(v))
    }
}

impl FromIterator<usize> for BoundarySet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BoundarySet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for BoundarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A bi-vincular pattern `(sigma, X, Y)` of length `k = |sigma| >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiVincularPattern {
    sigma: Permutation,
    x: BoundarySet,
    y: BoundarySet,
}

impl BiVincularPattern {
    pub fn new(sigma: Permutation, x: BoundarySet, y: BoundarySet) -> Result<Self, PatternError> {
        let k = sigma.len();
        if k == 0 || k > MAX_PATTERN_LEN {
            return Err(PatternError::BadLength(k));
        }
        for s in [x, y] {
            if let Some(m) = s.max() {
                if m > k {
                    return Err(PatternError::OutOfRange { value: m, k });
                }
            }
        }
        Ok(BiVincularPattern { sigma, x, y })
    }

    /// Convenience constructor from a digit word and element lists.
    pub fn from_parts(sigma: &str, x: &[usize], y: &[usize]) -> Result<Self, PatternError> {
        let sigma: Permutation = sigma.parse().map_err(|source| PatternError::BadSigma {
            text: sigma.to_string(),
            source,
        })?;
        Self::new(sigma, x.iter().copied().collect(), y.iter().copied().collect())
    }

    /// The classical pattern `(sigma, {}, {})`.
    pub fn classical(sigma: Permutation) -> Result<Self, PatternError> {
        Self::new(sigma, BoundarySet::EMPTY, BoundarySet::EMPTY)
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn x(&self) -> BoundarySet {
        self.x
    }

    pub fn y(&self) -> BoundarySet {
        self.y
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn apply(&self, s: Symmetry) -> Self {
        let k = self.len();
        let (sigma, x, y) = match s {
            Symmetry::Inverse => (self.sigma.inverse(), self.y, self.x),
            Symmetry::Reverse => (self.sigma.reverse(), self.x.mirror(k), self.y),
            Symmetry::Complement => (self.sigma.complement(), self.x, self.y.mirror(k)),
        };
        BiVincularPattern { sigma, x, y }
    }

    /// Applies a word over `{i, r, c}` left to right.
    pub fn apply_symmetry(&self, word: &str) -> Result<Self, PatternError> {
        let word = parse_symmetry_word(word)?;
        Ok(word.iter().fold(self.clone(), |p, &s| p.apply(s)))
    }

    /// The orbit of this pattern under the symmetry group of order 8.
    pub fn symmetry_class(&self) -> BTreeSet<BiVincularPattern> {
        let mut class = BTreeSet::new();
        let mut frontier = vec![self.clone()];
        class.insert(self.clone());
        while let Some(p) = frontier.pop() {
            for s in Symmetry::ALL {
                let q = p.apply(s);
                if class.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        class
    }

    pub fn canonical(&self) -> BiVincularPattern {
        canonical_representative(&self.symmetry_class()).expect("orbit is non-empty")
    }
}

impl fmt::Display for BiVincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|X={}|Y={}", self.sigma, self.x, self.y)
    }
}

fn parse_set(text: &str, k: usize) -> Result<BoundarySet, PatternError> {
    let mut set = BoundarySet::EMPTY;
    if text.trim().is_empty() {
        return Ok(set);
    }
    for tok in text.split(',') {
        let tok = tok.trim();
        let v: usize = tok
            .parse()
            .map_err(|_| PatternError::BadElement(tok.to_string()))?;
        if v > k {
            return Err(PatternError::OutOfRange { value: v, k });
        }
        if set.contains(v) {
            return Err(PatternError::Duplicate(v));
        }
        set.insert(v);
    }
    Ok(set)
}

impl FromStr for BiVincularPattern {
    type Err = PatternError;

    /// Parses `<sigma>|X=<ints>|Y=<ints>`, e.g. `132|X=0,1|Y=2` or `12|X=|Y=`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = || PatternError::Malformed(text.to_string());
        let mut parts = text.trim().split('|');
        let (Some(sigma), Some(x), Some(y), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(malformed());
        };
        let x = x.trim().strip_prefix("X=").ok_or_else(malformed)?;
        let y = y.trim().strip_prefix("Y=").ok_or_else(malformed)?;
        let sigma_text = sigma.trim();
        if sigma_text.is_empty() || !sigma_text.chars().all(|c| c.is_ascii_digit()) {
            return Err(PatternError::BadSigma {
                text: sigma_text.to_string(),
                source: PermError::BadToken(sigma_text.to_string()),
            });
        }
        let sigma: Permutation = sigma_text.parse().map_err(|source| PatternError::BadSigma {
            text: sigma_text.to_string(),
            source,
        })?;
        let k = sigma.len();
        let x = parse_set(x, k)?;
        let y = parse_set(y, k)?;
        BiVincularPattern::new(sigma, x, y)
    }
}

impl Serialize for BiVincularPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BiVincularPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing 1-based positions `i_1 < ... < i_k` of an occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

/// Precomputed matcher state for one pattern.
struct Matcher<'a> {
    pi: &'a [usize],
    sigma: &'a [usize],
    /// Position in the pattern of the letter with rank `r`, 0-based.
    rank_pos: [usize; MAX_PATTERN_LEN],
    x: BoundarySet,
    y: BoundarySet,
    idx: [usize; MAX_PATTERN_LEN],
}

impl<'a> Matcher<'a> {
    fn new(pi: &'a [usize], p: &'a BiVincularPattern) -> Self {
        let sigma = p.sigma.as_slice();
        let mut rank_pos = [0; MAX_PATTERN_LEN];
        for (i, &r) in sigma.iter().enumerate() {
            rank_pos[r - 1] = i;
        }
        Matcher {
            pi,
            sigma,
            rank_pos,
            x: p.x,
            y: p.y,
            idx: [0; MAX_PATTERN_LEN],
        }
    }

    fn values_ok(&self) -> bool {
        let k = self.sigma.len();
        let n = self.pi.len();
        // j_y for y in 0..=k+1, with j_0 = 0 and j_{k+1} = n + 1
        let letter = |y: usize| -> usize {
            if y == 0 {
                0
            } else if y == k + 1 {
                n + 1
            } else {
                self.pi[self.idx[self.rank_pos[y - 1]]]
            }
        };
        self.y.iter().all(|y| letter(y + 1) == letter(y) + 1)
    }

    /// Depth-first search over positions; `visit` returns `false` to stop.
    fn search<F: FnMut(&[usize]) -> bool>(&mut self, m: usize, visit: &mut F) -> bool {
        let k = self.sigma.len();
        let n = self.pi.len();
        if m == k {
            if self.values_ok() {
                return visit(&self.idx[..k]);
            }
            return true;
        }
        let mut lo = if m == 0 { 0 } else { self.idx[m - 1] + 1 };
        let mut hi = n - (k - m);
        if self.x.contains(m) {
            // i_{m+1} = i_m + 1; i_0 = 0 pins the first letter to the front
            hi = hi.min(lo);
        }
        if m == k - 1 && self.x.contains(k) {
            // i_k = n
            lo = lo.max(n - 1);
        }
        if lo > hi {
            return true;
        }
        for pos in lo..=hi {
            let v = self.pi[pos];
            let consistent = (0..m).all(|l| (self.pi[self.idx[l]] < v) == (self.sigma[l] < self.sigma[m]));
            if !consistent {
                continue;
            }
            self.idx[m] = pos;
            if !self.search(m + 1, visit) {
                return false;
            }
        }
        true
    }
}

fn run_matcher<F: FnMut(&[usize]) -> bool>(pi: &[usize], p: &BiVincularPattern, mut visit: F) {
    if pi.len() < p.len() {
        return;
    }
    let mut m = Matcher::new(pi, p);
    m.search(0, &mut visit);
}

/// Number of occurrences of `p` in the word `pi` (a permutation of `1..=n`).
pub fn count_in_slice(pi: &[usize], p: &BiVincularPattern) -> u64 {
    let mut count = 0;
    run_matcher(pi, p, |_| {
        count += 1;
        true
    });
    count
}

/// Whether `pi` contains `p`; stops at the first occurrence.
pub fn contains_in_slice(pi: &[usize], p: &BiVincularPattern) -> bool {
    let mut found = false;
    run_matcher(pi, p, |_| {
        found = true;
        false
    });
    found
}

pub fn count_occurrences(pi: &Permutation, p: &BiVincularPattern) -> u64 {
    count_in_slice(pi.as_slice(), p)
}

pub fn contains(pi: &Permutation, p: &BiVincularPattern) -> bool {
    contains_in_slice(pi.as_slice(), p)
}

pub fn avoids(pi: &Permutation, p: &BiVincularPattern) -> bool {
    !contains(pi, p)
}

pub fn occurrences(pi: &Permutation, p: &BiVincularPattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    run_matcher(pi.as_slice(), p, |idx| {
        out.push(Occurrence {
            indices: idx.iter().map(|&i| i + 1).collect(),
        });
        true
    });
    out
}

/// All `4^(k+1) k!` patterns of length `k`, ordered by sigma (lexicographic),
/// then `X` bitmask, then `Y` bitmask.
pub fn enumerate_patterns(k: usize) -> Result<Vec<BiVincularPattern>, PatternError> {
    if !(1..=4).contains(&k) {
        return Err(PatternError::EnumerationGuard(k));
    }
    let mut out = Vec::new();
    for sigma in crate::perm::permutations_of(k) {
        for x in BoundarySet::all(k) {
            for y in BoundarySet::all(k) {
                out.push(BiVincularPattern {
                    sigma: sigma.clone(),
                    x,
                    y,
                });
            }
        }
    }
    Ok(out)
}

/// The member whose text form is lexicographically least.
pub fn canonical_representative<'a, I>(class: I) -> Option<BiVincularPattern>
where
    I: IntoIterator<Item = &'a BiVincularPattern>,
{
    class
        .into_iter()
        .map(|p| (p.to_string(), p))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, p)| p.clone())
}
