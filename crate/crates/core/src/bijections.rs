//! Ascent sequences and the constructive maps between pattern classes.
//!
//! Insertion sites are positions `0..=n` in a permutation of length `n`;
//! site `s` puts the new maximum after the first `s` entries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::c10_pairs;
use crate::pattern::{avoids, contains_in_slice, count_occurrences, occurrences};
use crate::perm::Permutation;
use crate::{BiVincularPattern, BoundarySet};

pub const MAX_ASCENT_LEN: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("not an ascent sequence: {0}")]
    InvalidAscentSequence(String),
    #[error("length {n} is outside 1..={max}")]
    Guard { n: usize, max: usize },
    #[error("{perm} contains {pattern}")]
    ContainsPattern { perm: String, pattern: String },
    #[error("entries {index} and {} are equal", index + 1)]
    AdjacentEqual { index: usize },
    #[error("letter {letter} at step {step} exceeds the {sites} active sites")]
    SiteOutOfRange { step: usize, letter: usize, sites: usize },
    #[error("no occurrence of {0}")]
    NoOccurrence(String),
    #[error("{count} occurrences of {pattern}; exactly one is required")]
    MultipleOccurrences { pattern: String, count: u64 },
    #[error("unsupported pattern {0}")]
    UnsupportedPattern(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A word `x` with `x_1 = 0` and `x_i <= 1 + asc(x_1..x_{i-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AscentSequence(Vec<usize>);

impl AscentSequence {
    pub fn new(x: Vec<usize>) -> Result<Self, BijectionError> {
        if x.is_empty() {
            return Err(BijectionError::InvalidAscentSequence("empty".into()));
        }
        if x[0] != 0 {
            return Err(BijectionError::InvalidAscentSequence(format!("x_1 = {}", x[0])));
        }
        let mut asc = 0;
        for i in 1..x.len() {
            if x[i] > asc + 1 {
                return Err(BijectionError::InvalidAscentSequence(format!(
                    "x_{} = {} exceeds {}",
                    i + 1,
                    x[i],
                    asc + 1
                )));
            }
            if x[i - 1] < x[i] {
                asc += 1;
            }
        }
        Ok(AscentSequence(x))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether no two adjacent entries are equal.
    pub fn is_restricted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl TryFrom<Vec<usize>> for AscentSequence {
    type Error = BijectionError;

    fn try_from(x: Vec<usize>) -> Result<Self, Self::Error> {
        AscentSequence::new(x)
    }
}

impl From<AscentSequence> for Vec<usize> {
    fn from(x: AscentSequence) -> Self {
        x.0
    }
}

impl fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Lexicographic stream of the ascent sequences of one length.
pub struct AscentSequences {
    x: Vec<usize>,
    /// `asc[i]` is the number of ascents in `x[..=i]`.
    asc: Vec<usize>,
    done: bool,
}

impl Iterator for AscentSequences {
    type Item = AscentSequence;

    fn next(&mut self) -> Option<AscentSequence> {
        if self.done {
            return None;
        }
        let out = AscentSequence(self.x.clone());
        let n = self.x.len();
        match (1..n).rev().find(|&i| self.x[i] < self.asc[i - 1] + 1) {
            None => self.done = true,
            Some(i) => {
                self.x[i] += 1;
                for v in &mut self.x[i + 1..] {
                    *v = 0;
                }
                for j in i..n {
                    self.asc[j] = self.asc[j - 1] + usize::from(self.x[j - 1] < self.x[j]);
                }
            }
        }
        Some(out)
    }
}

pub fn generate_ascent_sequences(n: usize) -> Result<AscentSequences, BijectionError> {
    if !(1..=MAX_ASCENT_LEN).contains(&n) {
        return Err(BijectionError::Guard { n, max: MAX_ASCENT_LEN });
    }
    Ok(AscentSequences {
        x: vec![0; n],
        asc: vec![0; n],
        done: false,
    })
}

/// Positions `i` (1-based) with `x_i < x_{i+1}`.
fn ascent_positions(x: &[usize]) -> Vec<usize> {
    (1..x.len()).filter(|&i| x[i - 1] < x[i]).collect()
}

/// The modified sequence `x̂`: for each ascent `i` in increasing order, every
/// earlier `x_j` (`j < i`) with `x_j >= x_{i+1}` is incremented.
pub fn modified_ascent_sequence(x: &AscentSequence) -> Vec<usize> {
    let mut y = x.0.clone();
    for i in ascent_positions(&x.0) {
        let top = y[i];
        for v in &mut y[..i - 1] {
            if *v >= top {
                *v += 1;
            }
        }
    }
    y
}

/// Bottom row after sorting the columns `(top, bottom)` by top, ties broken
/// by bottom (descending or ascending).
fn sorted_bottoms(mut cols: Vec<(usize, usize)>, descending_ties: bool) -> Permutation {
    cols.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| if descending_ties { b.1.cmp(&a.1) } else { a.1.cmp(&b.1) })
    });
    Permutation::from_vec_unchecked(cols.into_iter().map(|c| c.1).collect())
}

/// Ascent sequences onto `A_n(231,{1},{1})`: columns `(x̂_i, i)`, ties by
/// descending bottom entry.
pub fn map_f(x: &AscentSequence) -> Permutation {
    let xh = modified_ascent_sequence(x);
    sorted_bottoms(xh.into_iter().zip(1..).collect(), true)
}

/// Inverse of [`map_f`]: the insertion word with respect to `(231,{1},{1})`.
pub fn map_f_inverse(pi: &Permutation) -> Result<AscentSequence, BijectionError> {
    AscentSequence::new(insertion_word(pi, &pattern_231())?)
}

/// Ascent sequences without adjacent equal entries onto
/// `A_{n-1}(321,{1},{1})`: columns `(x̂_i, i - 1)` for `i >= 2`, ties by
/// ascending bottom entry.
pub fn map_h(x: &AscentSequence) -> Result<Permutation, BijectionError> {
    if let Some(index) = x.0.windows(2).position(|w| w[0] == w[1]) {
        return Err(BijectionError::AdjacentEqual { index: index + 1 });
    }
    let xh = modified_ascent_sequence(x);
    Ok(sorted_bottoms(xh.into_iter().skip(1).zip(1..).collect(), false))
}

pub fn pattern_231() -> BiVincularPattern {
    "231|X=1|Y=1".parse().expect("literal pattern")
}

pub fn pattern_132() -> BiVincularPattern {
    "132|X=1|Y=1".parse().expect("literal pattern")
}

fn require_avoids(pi: &Permutation, p: &BiVincularPattern) -> Result<(), BijectionError> {
    if avoids(pi, p) {
        Ok(())
    } else {
        Err(BijectionError::ContainsPattern {
            perm: pi.to_string(),
            pattern: p.to_string(),
        })
    }
}

/// Sites where inserting `n + 1` keeps `pi` avoiding `p`, in increasing
/// order.
pub fn active_sites(pi: &Permutation, p: &BiVincularPattern) -> Result<Vec<usize>, BijectionError> {
    require_avoids(pi, p)?;
    Ok(active_sites_unchecked(pi, p))
}

fn active_sites_unchecked(pi: &Permutation, p: &BiVincularPattern) -> Vec<usize> {
    (0..=pi.len())
        .filter(|&s| !contains_in_slice(pi.insert_max(s).as_slice(), p))
        .collect()
}

/// How active sites are indexed by insertion-word letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SiteOrder {
    /// Letter 0 is the leftmost active site.
    #[default]
    LeftToRight,
    /// Letter 0 is the rightmost active site.
    RightToLeft,
}

fn ordered(mut sites: Vec<usize>, order: SiteOrder) -> Vec<usize> {
    if order == SiteOrder::RightToLeft {
        sites.reverse();
    }
    sites
}

/// Insertion word with sites indexed left to right.
pub fn insertion_word(pi: &Permutation, p: &BiVincularPattern) -> Result<Vec<usize>, BijectionError> {
    insertion_word_with(pi, p, SiteOrder::LeftToRight)
}

/// `x_i` is the index, among the active sites of `pi^(i-1)`, of the site at
/// which `i` enters `pi^(i)`, where `pi^(i)` keeps the entries `<= i`.
pub fn insertion_word_with(
    pi: &Permutation,
    p: &BiVincularPattern,
    order: SiteOrder,
) -> Result<Vec<usize>, BijectionError> {
    let mut word = Vec::with_capacity(pi.len());
    let mut prev = Permutation::empty();
    for i in 1..=pi.len() {
        let cur = pi.restrict_to(i);
        require_avoids(&cur, p)?;
        let site = cur.position_of(i) - 1;
        let sites = ordered(active_sites_unchecked(&prev, p), order);
        let letter = sites.iter().position(|&s| s == site).expect("an avoiding insertion is an active site");
        word.push(letter);
        prev = cur;
    }
    Ok(word)
}

/// Rebuilds a permutation by inserting `i` at the `x_i`-th active site.
pub fn build_from_insertion_word(
    word: &[usize],
    p: &BiVincularPattern,
    order: SiteOrder,
) -> Result<Permutation, BijectionError> {
    let mut pi = Permutation::empty();
    for (step, &letter) in word.iter().enumerate() {
        let sites = ordered(active_sites_unchecked(&pi, p), order);
        let &site = sites.get(letter).ok_or(BijectionError::SiteOutOfRange {
            step: step + 1,
            letter,
            sites: sites.len(),
        })?;
        pi = pi.insert_max(site);
    }
    Ok(pi)
}

/// `A_n(132,{1},{1})` onto ascent sequences: the insertion word with active
/// sites indexed from the right.
pub fn map_g(pi: &Permutation) -> Result<AscentSequence, BijectionError> {
    AscentSequence::new(insertion_word_with(pi, &pattern_132(), SiteOrder::RightToLeft)?)
}

pub fn map_g_inverse(x: &AscentSequence) -> Result<Permutation, BijectionError> {
    build_from_insertion_word(x.as_slice(), &pattern_132(), SiteOrder::RightToLeft)
}

/// `a 1 b -> a 1 b^r`.
pub fn reverse_after_one(pi: &Permutation) -> Permutation {
    let mut e = pi.as_slice().to_vec();
    if let Some(pos) = e.iter().position(|&v| v == 1) {
        e[pos + 1..].reverse();
    }
    Permutation::from_vec_unchecked(e)
}

/// The boundary sets `X` for which the shift applies.
pub fn set_b() -> [BoundarySet; 3] {
    [[0, 1, 2], [0, 1, 3], [0, 2, 3]].map(|s| s.into_iter().collect())
}

/// Default source pattern of [`cyclic_shift_set_b`].
pub fn set_b_default_source() -> BiVincularPattern {
    "132|X=0,1,2|Y=1".parse().expect("literal pattern")
}

/// The `Y = {3}` counterpart of a `Y = {1}` source pattern.
pub fn set_b_target(source: &BiVincularPattern) -> BiVincularPattern {
    BiVincularPattern::new(source.sigma().clone(), source.x(), [3].into_iter().collect())
        .expect("same sigma and X")
}

/// Moves the values above `pi_1` cyclically up by `n - k`, where `k` is the
/// largest letter of the unique occurrence of `source`; values below `pi_1`
/// stay put.
pub fn cyclic_shift_set_b(pi: &Permutation, source: &BiVincularPattern) -> Result<Permutation, BijectionError> {
    let sigma = source.sigma().to_string();
    let y1: BoundarySet = [1].into_iter().collect();
    if !(sigma == "123" || sigma == "132") || !set_b().contains(&source.x()) || source.y() != y1 {
        return Err(BijectionError::UnsupportedPattern(source.to_string()));
    }
    let occ = occurrences(pi, source);
    let first = match occ.len() {
        0 => return Err(BijectionError::NoOccurrence(source.to_string())),
        1 => &occ[0],
        count => {
            return Err(BijectionError::MultipleOccurrences {
                pattern: source.to_string(),
                count: count as u64,
            })
        }
    };
    let n = pi.len();
    let k = first.indices.iter().map(|&i| pi.at(i)).max().expect("non-empty occurrence");
    let p1 = pi.at(1);
    let e = pi
        .as_slice()
        .iter()
        .map(|&v| {
            if v > k {
                v + p1 - k
            } else if v > p1 {
                v + n - k
            } else {
                v
            }
        })
        .collect();
    Ok(Permutation::from_vec_unchecked(e))
}

/// Reverses the entries before and after position `j` (0-based).
fn reverse_around(pi: &[usize], j: usize) -> Permutation {
    let mut e = pi.to_vec();
    e[..j].reverse();
    e[j + 1..].reverse();
    Permutation::from_vec_unchecked(e)
}

/// Position of the smallest entry left of index `k`, provided it is below
/// `pi[k]`.
fn pivot(pi: &[usize], k: usize) -> Option<usize> {
    let j = (0..k).min_by_key(|&j| pi[j])?;
    (pi[j] < pi[k]).then_some(j)
}

fn unique_pair(pi: &[usize], descending: bool) -> Result<usize, BijectionError> {
    let pairs = c10_pairs(pi, descending);
    match pairs.as_slice() {
        [k] => Ok(*k),
        _ => Err(BijectionError::Precondition(format!(
            "expected exactly one adjacent pair (v, v{}1) with a smaller entry to its left, found {}",
            if descending { '-' } else { '+' },
            pairs.len()
        ))),
    }
}

/// `pi_a pi_j pi_b -> pi_a^r pi_j pi_b^r`, where `pi_j` is the smallest entry
/// left of the unique adjacent pair `(v, v+1)` that has a smaller entry to
/// its left.
///
/// This is not injective: `(2,1,3,4)` and `(2,3,4,1)` both map to
/// `(2,1,4,3)`.
pub fn wilf22_map(pi: &Permutation) -> Result<Permutation, BijectionError> {
    let s = pi.as_slice();
    let k = unique_pair(s, false)?;
    let j = pivot(s, k).expect("qualifying pairs have a smaller entry to the left");
    Ok(reverse_around(s, j))
}

/// The same reversal keyed on the unique qualifying pair `(v, v-1)`.
pub fn wilf22_inverse(pi: &Permutation) -> Result<Permutation, BijectionError> {
    let s = pi.as_slice();
    let k = unique_pair(s, true)?;
    let j = pivot(s, k).expect("qualifying pairs have a smaller entry to the left");
    Ok(reverse_around(s, j))
}

pub fn pattern_c12() -> BiVincularPattern {
    "123|X=1|Y=1,3".parse().expect("literal pattern")
}

/// Swaps the entries at positions `k - 1` and `k`, where `k` is the position
/// of `n`, for `pi` avoiding `(123,{1},{1,3})`.
pub fn column_swap_map(pi: &Permutation) -> Result<Permutation, BijectionError> {
    if pi.is_empty() {
        return Err(BijectionError::Precondition("empty permutation".into()));
    }
    require_avoids(pi, &pattern_c12())?;
    let k = pi.position_of(pi.len());
    if k < 2 {
        return Err(BijectionError::Precondition(format!("{} is at position 1", pi.len())));
    }
    let mut e = pi.as_slice().to_vec();
    e.swap(k - 2, k - 1);
    Ok(Permutation::from_vec_unchecked(e))
}

/// Occurrence count of `p` in `pi`, re-exported for callers checking
/// statistic transfer.
pub fn occurrence_count(pi: &Permutation, p: &BiVincularPattern) -> u64 {
    count_occurrences(pi, p)
}
