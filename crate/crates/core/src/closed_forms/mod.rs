//! Closed forms, sums and recurrences for the Wilf classes of lengths 2 and
//! 3, with a harness that checks them against brute force.

pub mod catalog;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{bell, binomial, catalan, factorial, falling_ratio, non_derangements, pow};
use crate::enumeration::avoidance_sequence;
use crate::pattern::BoundarySet;
use crate::perm::{for_each_in_shard, permutations_of, shards};
use crate::BiVincularPattern;

pub use catalog::{CatalogEntry, APPENDIX_CLASSES, CATALOG};

pub const MAX_VERIFY_LEN: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("unknown formula id {0:?} (expected B01..B07 or C01..C24)")]
    UnknownId(String),
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("length {n} exceeds the limit {max}")]
    Guard { n: usize, max: usize },
}

macro_rules! formula_ids {
    ($($name:ident),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FormulaId { $($name),* }

        impl FormulaId {
            pub const ALL: [FormulaId; 31] = [$(FormulaId::$name),*];

            pub fn as_str(self) -> &'static str {
                match self { $(FormulaId::$name => stringify!($name)),* }
            }
        }
    };
}

formula_ids!(
    B01, B02, B03, B04, B05, B06, B07, C01, C02, C03, C04, C05, C06, C07, C08, C09, C10, C11, C12,
    C13, C14, C15, C16, C17, C18, C19, C20, C21, C22, C23, C24,
);

impl FormulaId {
    pub fn entry(self) -> &'static CatalogEntry {
        &CATALOG[self as usize]
    }

    /// Length of the patterns in this class.
    pub fn pattern_len(self) -> usize {
        if self.as_str().starts_with('B') {
            2
        } else {
            3
        }
    }

    pub fn representative(self) -> BiVincularPattern {
        self.entry().representative.parse().expect("catalog patterns parse")
    }

    /// Every listed member, with `X=*` expanded over all boundary sets.
    pub fn members(self) -> Vec<BiVincularPattern> {
        expand_members(self.entry().members, self.pattern_len())
    }

    pub fn has_formula(self) -> bool {
        self.entry().formula.is_some()
    }
}

fn expand_members(texts: &[&str], k: usize) -> Vec<BiVincularPattern> {
    let mut out = Vec::new();
    for t in texts {
        if t.contains("X=*") {
            for x in BoundarySet::all(k) {
                let s = t.replace("X=*", &format!("X={x}"));
                out.push(s.parse().expect("catalog patterns parse"));
            }
        } else {
            out.push(t.parse().expect("catalog patterns parse"));
        }
    }
    out
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str() == t)
            .ok_or_else(|| FormulaError::UnknownId(s.to_string()))
    }
}

impl Serialize for FormulaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for FormulaId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn signed_sum(terms: impl IntoIterator<Item = (bool, BigUint)>) -> BigUint {
    let mut acc = BigInt::zero();
    for (neg, t) in terms {
        if neg {
            acc -= BigInt::from(t);
        } else {
            acc += BigInt::from(t);
        }
    }
    acc.to_biguint().expect("count is non-negative")
}

/// `a_n` of the class, or `None` when no formula is known. Lengths shorter
/// than the pattern give `n!`.
pub fn eval_closed_form(id: FormulaId, n: usize) -> Result<Option<BigUint>, FormulaError> {
    if n == 0 {
        return Err(FormulaError::ZeroLength);
    }
    if !id.has_formula() {
        return Ok(None);
    }
    if n < id.pattern_len() {
        return Ok(Some(factorial(n)));
    }
    use FormulaId::*;
    let f = factorial;
    let v = match id {
        B01 => BigUint::from(1u32),
        B02 => f(n - 1),
        B03 => b03(n),
        B04 => f(n) / 2u32,
        B05 => f(n) - f(n - 1),
        B06 => f(n) - f(n - 2),
        B07 => f(n) - u32::from(n == 2),
        C01 => catalan(n),
        C02 => bell(n),
        C06 => (1..=n).map(|k| f(k - 1) * f(n - k)).sum(),
        C07 => (0..n).map(|k| falling_ratio(n - 1, k)).sum(),
        C08 => f(n - 1) + (1..n).map(|k| f(n - 1) / k).sum::<BigUint>(),
        C09 => c09_sum(n),
        C11 => f(n) - f(n - 1) * (n - 2) / 2u32,
        C12 => c12_recurrence(n),
        C13 => f(n) - f(n - 1) + 1u32,
        C14 => f(n) * 5u32 / 6u32,
        C15 => f(n) - f(n - 2) * (n - 2),
        C16 => f(n) - c16_b(n),
        C18 => f(n) - f(n - 1) / 2u32,
        C19 => f(n) - f(n - 2),
        C20 => f(n) - f(n - 3),
        C21 => f(n) - u32::from(n == 3),
        C03 | C04 | C05 | C10 | C17 | C22 | C23 | C24 => return Ok(None),
    };
    Ok(Some(v))
}

/// `sum_{i=0}^{m} (-1)^i (m - i + 1) m!/i!` at `m = n - 1`.
fn b03(n: usize) -> BigUint {
    let m = n - 1;
    signed_sum((0..=m).map(|i| (i % 2 == 1, falling_ratio(m, i) * (m - i + 1))))
}

/// Permutations of `[n]` avoiding `(123,{0,2},{})` whose first entry is `k`.
pub fn c09_first_entry(n: usize, k: usize) -> BigUint {
    assert!((1..=n).contains(&k));
    if k + 2 <= n {
        factorial(k - 1) * pow(k, n - k)
    } else {
        factorial(n - 1)
    }
}

pub fn c09_sum(n: usize) -> BigUint {
    (1..=n).map(|k| c09_first_entry(n, k)).sum()
}

/// `n! - sum_{k=1}^{n-2} k k! ((k+1)^{n-k-1} - k^{n-k-1})`.
pub fn c09_alternative(n: usize) -> BigUint {
    let sub: BigUint = (1..=n.saturating_sub(2))
        .map(|k| factorial(k) * k * (pow(k + 1, n - k - 1) - pow(k, n - k - 1)))
        .sum();
    factorial(n) - sub
}

/// `a_n = (n-1) a_{n-1} + (n-2) a_{n-2}` with `a_1 = 1`, `a_2 = 2`.
pub fn c12_recurrence(n: usize) -> BigUint {
    assert!(n >= 1);
    let (mut prev, mut cur) = (BigUint::from(1u32), BigUint::from(2u32));
    if n == 1 {
        return prev;
    }
    for m in 3..=n {
        let next = &cur * (m - 1) + &prev * (m - 2);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `(n-1)! + sum_{k=0}^{n-2} (-1)^{n-k} (k+1)! C(n-1, k)`.
pub fn c12_alternating(n: usize) -> BigUint {
    assert!(n >= 1);
    let terms = (0..n.saturating_sub(1)).map(|k| ((n - k) % 2 == 1, factorial(k + 1) * binomial(n - 1, k)));
    signed_sum(std::iter::once((false, factorial(n - 1))).chain(terms))
}

/// `c_{n+1} / n` with `c` the non-derangement counts.
pub fn c12_from_next_non_derangements(n: usize) -> BigUint {
    non_derangements(n + 1) / n
}

/// `c_n + c_{n-1}` with `c` the non-derangement counts.
pub fn c12_from_non_derangements(n: usize) -> BigUint {
    non_derangements(n) + non_derangements(n - 1)
}

/// `(1/k!) prod_{i=2k}^{3k-1} (n-i)(m-i)`: placements of `k` three-by-three
/// squares in an `n` by `m` board with no two sharing a row or a column.
pub fn c16_squares(n: usize, m: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    if 3 * k > n.min(m) {
        return BigUint::zero();
    }
    let prod = (2 * k..3 * k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) * (m - i));
    prod / factorial(k)
}

/// `d_{n,k} = (n - 3k)! c_{n,n,k}`.
pub fn c16_d(n: usize, k: usize) -> BigUint {
    factorial(n - 3 * k) * c16_squares(n, n, k)
}

/// Permutations of `[n]` containing `(132,{1,2},{1,2})`, by inclusion and
/// exclusion over `d_{n,k}`.
pub fn c16_b(n: usize) -> BigUint {
    signed_sum((1..=n / 3).map(|k| (k % 2 == 0, c16_d(n, k))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub id: FormulaId,
    pub pattern: BiVincularPattern,
    pub n: usize,
    #[serde(serialize_with = "crate::arith::serialize_decimal")]
    pub formula: BigUint,
    pub brute_force: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub horizon: usize,
    /// Ids with a formula, each with the number of member patterns checked.
    pub checked: Vec<(FormulaId, usize)>,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every formula with brute force for `n = 1..=horizon`, over every
/// member pattern of each class.
pub fn verify_registry(horizon: usize) -> Result<VerificationReport, FormulaError> {
    verify_with(horizon, |id, n| eval_closed_form(id, n).ok().flatten())
}

/// Same as [`verify_registry`] with a caller-supplied evaluator.
pub fn verify_with<F>(horizon: usize, eval: F) -> Result<VerificationReport, FormulaError>
where
    F: Fn(FormulaId, usize) -> Option<BigUint>,
{
    if horizon == 0 {
        return Err(FormulaError::ZeroLength);
    }
    if horizon > MAX_VERIFY_LEN {
        return Err(FormulaError::Guard { n: horizon, max: MAX_VERIFY_LEN });
    }
    let mut checked = Vec::new();
    let mut mismatches = Vec::new();
    for id in FormulaId::ALL {
        let values: Vec<Option<BigUint>> = (1..=horizon).map(|n| eval(id, n)).collect();
        if values.iter().all(Option::is_none) {
            continue;
        }
        let members = id.members();
        for p in &members {
            let seq = avoidance_sequence(std::slice::from_ref(p), horizon).expect("horizon is guarded");
            for (i, v) in values.iter().enumerate() {
                let Some(v) = v else { continue };
                if v.to_u64() != Some(seq.terms[i]) {
                    mismatches.push(Mismatch {
                        id,
                        pattern: p.clone(),
                        n: i + 1,
                        formula: v.clone(),
                        brute_force: seq.terms[i],
                    });
                }
            }
        }
        checked.push((id, members.len()));
    }
    Ok(VerificationReport { horizon, checked, mismatches })
}

fn max_guard(n: usize) -> Result<(), FormulaError> {
    if n > MAX_VERIFY_LEN {
        Err(FormulaError::Guard { n, max: MAX_VERIFY_LEN })
    } else {
        Ok(())
    }
}

/// `sum_{pi in S_n} max(0, max_i (pi_i - i))`.
pub fn max_excedence_sum(n: usize) -> Result<u64, FormulaError> {
    max_guard(n)?;
    let total = shards(n)
        .into_iter()
        .map(|first| {
            let mut s = 0u64;
            for_each_in_shard(n, first, |pi| {
                let m = pi.iter().enumerate().map(|(i, &v)| v.saturating_sub(i + 1)).max().unwrap_or(0);
                s += m as u64;
            });
            s
        })
        .sum();
    Ok(total)
}

/// 0-based indices `k` with `pi[k+1] = pi[k] + 1` (or `pi[k] - 1` when
/// `descending`) that have a smaller entry somewhere to the left of `k`.
pub fn c10_pairs(pi: &[usize], descending: bool) -> Vec<usize> {
    (0..pi.len().saturating_sub(1))
        .filter(|&k| {
            let adjacent = if descending {
                pi[k + 1] + 1 == pi[k]
            } else {
                pi[k + 1] == pi[k] + 1
            };
            adjacent && pi[..k].iter().any(|&v| v < pi[k])
        })
        .collect()
}

/// `(c_n(p1), c_n(p2))`: permutations with exactly one adjacent pair
/// `(v, v+1)`, respectively `(v, v-1)`, preceded somewhere by an entry
/// smaller than `v`.
pub fn c10_ingredients(n: usize) -> Result<(u64, u64), FormulaError> {
    max_guard(n)?;
    let mut up = 0;
    let mut down = 0;
    for pi in permutations_of(n) {
        if c10_pairs(pi.as_slice(), false).len() == 1 {
            up += 1;
        }
        if c10_pairs(pi.as_slice(), true).len() == 1 {
            down += 1;
        }
    }
    Ok((up, down))
}

/// `a_{n+1} = c_n + n (a_n - a_{n-1}) + (n + 1) a_{n-1}`.
pub fn c10_step(n: usize, c_n: u64, a_n: u64, a_prev: u64) -> u64 {
    c_n + n as u64 * (a_n - a_prev) + (n as u64 + 1) * a_prev
}

/// `a_{n,k}` for `k = 1..=n`: avoiders of `(123,{1},{1,3})` with `n` at
/// position `k`.
pub fn c12_counts_by_max_position(n: usize) -> Result<Vec<u64>, FormulaError> {
    max_guard(n)?;
    let p = FormulaId::C12.representative();
    let mut counts = vec![0u64; n];
    for pi in permutations_of(n) {
        if crate::pattern::avoids(&pi, &p) {
            counts[pi.position_of(n) - 1] += 1;
        }
    }
    Ok(counts)
}
