//! Brute-force avoidance counts, occurrence distributions, symmetry classes,
//! Wilf classification and the count of symmetry classes.
//!
//! Every search is sharded by the first entry of the permutation and the
//! per-shard results are merged in shard order, so the output never depends
//! on how many worker threads rayon uses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, falling_ratio, involutions, pow2};
use crate::closed_forms::{CatalogEntry, FormulaId};
use crate::pattern::{canonical_representative, contains_in_slice, count_in_slice, enumerate_patterns};
use crate::perm::{for_each_in_shard, shards};
use crate::{oeis, BiVincularPattern, PatternError};

pub const MAX_SEQUENCE_LEN: usize = 11;
pub const MAX_DISTRIBUTION_LEN: usize = 8;
pub const MAX_COMPARE_LEN: usize = 7;
/// Classification enumerates every symmetry class, so it stops earlier than
/// explicit pattern lists do.
pub const MAX_CLASSIFY_LEN: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("the pattern set is empty")]
    EmptyPatternSet,
    #[error("length {n} is outside the supported range {lo}..={hi}")]
    Guard { n: usize, lo: usize, hi: usize },
    #[error("pattern length {0} is not supported here (expected 2 or 3)")]
    PatternLength(usize),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

fn guard(n: usize, lo: usize, hi: usize) -> Result<(), EnumerationError> {
    if n < lo || n > hi {
        Err(EnumerationError::Guard { n, lo, hi })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceSequence {
    pub patterns: Vec<BiVincularPattern>,
    /// `terms[i]` is `a_{i+1}`.
    pub terms: Vec<u64>,
}

impl AvoidanceSequence {
    /// `a_n` for `1 <= n <= N`.
    pub fn term(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.terms.get(i).copied())
    }
}

/// Number of permutations of length `n` avoiding every pattern in `patterns`.
pub fn count_avoiders(patterns: &[BiVincularPattern], n: usize) -> u64 {
    shards(n)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_in_shard(n, first, |pi| {
                if patterns.iter().all(|p| !contains_in_slice(pi, p)) {
                    count += 1;
                }
            });
            count
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// `a_1 .. a_N` for joint avoidance of `patterns`. Duplicates are dropped and
/// the stored set is sorted.
pub fn avoidance_sequence(
    patterns: &[BiVincularPattern],
    max_n: usize,
) -> Result<AvoidanceSequence, EnumerationError> {
    if patterns.is_empty() {
        return Err(EnumerationError::EmptyPatternSet);
    }
    guard(max_n, 1, MAX_SEQUENCE_LEN)?;
    let set: BTreeSet<_> = patterns.iter().cloned().collect();
    let patterns: Vec<_> = set.into_iter().collect();
    let terms = (1..=max_n).map(|n| count_avoiders(&patterns, n)).collect();
    Ok(AvoidanceSequence { patterns, terms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub pattern: BiVincularPattern,
    /// `rows[i - 1]` maps an occurrence count `j` to `d_{i,j}`.
    pub rows: Vec<BTreeMap<u64, u64>>,
}

impl DistributionTable {
    pub fn row(&self, i: usize) -> Option<&BTreeMap<u64, u64>> {
        i.checked_sub(1).and_then(|r| self.rows.get(r))
    }
}

fn histogram(p: &BiVincularPattern, n: usize) -> BTreeMap<u64, u64> {
    let parts: Vec<BTreeMap<u64, u64>> = shards(n)
        .into_par_iter()
        .map(|first| {
            let mut h = BTreeMap::new();
            for_each_in_shard(n, first, |pi| {
                *h.entry(count_in_slice(pi, p)).or_insert(0) += 1;
            });
            h
        })
        .collect();
    let mut out = BTreeMap::new();
    for h in parts {
        for (j, c) in h {
            *out.entry(j).or_insert(0) += c;
        }
    }
    out
}

pub fn distribution(p: &BiVincularPattern, max_n: usize) -> Result<DistributionTable, EnumerationError> {
    guard(max_n, 1, MAX_DISTRIBUTION_LEN)?;
    let rows = (1..=max_n).map(|n| histogram(p, n)).collect();
    Ok(DistributionTable { pattern: p.clone(), rows })
}

pub fn distributions_equal(
    p: &BiVincularPattern,
    q: &BiVincularPattern,
    max_n: usize,
) -> Result<bool, EnumerationError> {
    guard(max_n, 1, MAX_COMPARE_LEN)?;
    Ok((1..=max_n).all(|n| histogram(p, n) == histogram(q, n)))
}

/// Orbits of `enumerate_patterns(k)` under the symmetry group, in order of
/// their first member in enumeration order.
pub fn symmetry_partition(k: usize) -> Result<Vec<BTreeSet<BiVincularPattern>>, EnumerationError> {
    let all = enumerate_patterns(k)?;
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for p in all {
        if seen.contains(&p) {
            continue;
        }
        let class = p.symmetry_class();
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ProvedInPaper,
    PrefixEqualOnly,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ProvedInPaper => "proved-in-paper",
            Provenance::PrefixEqualOnly => "prefix-equal-only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfClass {
    pub representative: BiVincularPattern,
    /// Canonical representatives of the member symmetry classes, sorted.
    pub members: Vec<BiVincularPattern>,
    pub terms: Vec<u64>,
    pub formula_id: Option<FormulaId>,
    pub oeis_id: Option<String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub k: usize,
    pub horizon: usize,
    /// Sorted by their term sequences.
    pub classes: Vec<WilfClass>,
}

/// Catalog rows whose representative falls in one of the given symmetry
/// classes.
fn matching_entries(canon: &BTreeSet<BiVincularPattern>) -> Vec<&'static CatalogEntry> {
    FormulaId::ALL
        .iter()
        .map(|id| id.entry())
        .filter(|e| canon.contains(&id_representative(e).canonical()))
        .collect()
}

fn id_representative(e: &CatalogEntry) -> BiVincularPattern {
    e.representative.parse().expect("catalog patterns parse")
}

/// Groups the symmetry classes of length `k` by their first `horizon`
/// avoidance counts.
pub fn wilf_classify(k: usize, horizon: usize) -> Result<ClassificationReport, EnumerationError> {
    if k != 2 && k != 3 {
        return Err(EnumerationError::PatternLength(k));
    }
    guard(horizon, 1, MAX_CLASSIFY_LEN)?;
    let reps: Vec<BiVincularPattern> = symmetry_partition(k)?
        .iter()
        .map(|c| canonical_representative(c).expect("orbits are non-empty"))
        .collect();
    let seqs: Vec<Vec<u64>> = reps
        .par_iter()
        .map(|p| {
            let one = std::slice::from_ref(p);
            (1..=horizon).map(|n| count_avoiders(one, n)).collect()
        })
        .collect();
    let mut groups: BTreeMap<Vec<u64>, BTreeSet<BiVincularPattern>> = BTreeMap::new();
    for (rep, terms) in reps.into_iter().zip(seqs) {
        groups.entry(terms).or_default().insert(rep);
    }
    let classes = groups
        .into_iter()
        .map(|(terms, canon)| build_class(terms, canon))
        .collect();
    Ok(ClassificationReport { k, horizon, classes })
}

fn build_class(terms: Vec<u64>, canon: BTreeSet<BiVincularPattern>) -> WilfClass {
    let entries = matching_entries(&canon);
    let single = if entries.len() == 1 { Some(entries[0]) } else { None };
    let representative = match single {
        Some(e) => id_representative(e),
        None => canon.iter().next().expect("groups are non-empty").clone(),
    };
    let provenance = match single {
        Some(e) => {
            let covered: BTreeSet<_> = e.id.members().iter().map(|p| p.canonical()).collect();
            if canon.is_subset(&covered) {
                Provenance::ProvedInPaper
            } else {
                Provenance::PrefixEqualOnly
            }
        }
        None => Provenance::PrefixEqualOnly,
    };
    let oeis_id = resolve_oeis(&terms, single.and_then(|e| e.oeis));
    WilfClass {
        representative,
        members: canon.into_iter().collect(),
        terms,
        formula_id: single.map(|e| e.id),
        oeis_id,
        provenance,
    }
}

/// Offline lookup of a term prefix. Several hits are narrowed to the cited
/// id when it is among them.
fn resolve_oeis(terms: &[u64], cited: Option<&str>) -> Option<String> {
    let hits = oeis::snapshot_matches(terms);
    match hits.len() {
        0 => None,
        1 => Some(hits[0].clone()),
        _ => cited.filter(|c| hits.iter().any(|h| h == c)).map(str::to_string),
    }
}

pub fn involution_count(n: usize) -> BigUint {
    involutions(n)
}

/// `s_n`, the number of symmetry classes of patterns of length `n >= 2`,
/// from the four-case closed form.
pub fn burnside_s(n: usize) -> Result<BigUint, EnumerationError> {
    if n < 2 {
        return Err(EnumerationError::Guard { n, lo: 2, hi: usize::MAX });
    }
    let m = n / 4;
    // 2^{2m} (2m-1)!/(m-1)!, the fixed points of the quarter turns
    let quarter = || pow2(2 * m) * falling_ratio(2 * m - 1, m - 1);
    let s = match n % 4 {
        0 => {
            pow2(6 * m - 1) * factorial(2 * m)
                + pow2(8 * m - 1) * factorial(4 * m)
                + pow2(4 * m - 1) * involutions(4 * m)
                + quarter()
        }
        1 => {
            pow2(6 * m - 1) * factorial(2 * m)
                + pow2(8 * m + 1) * factorial(4 * m + 1)
                + pow2(4 * m) * involutions(4 * m + 1)
                + quarter()
        }
        2 => {
            pow2(6 * m + 2) * factorial(2 * m + 1)
                + pow2(8 * m + 3) * factorial(4 * m + 2)
                + pow2(4 * m + 1) * involutions(4 * m + 2)
        }
        _ => {
            pow2(6 * m + 2) * factorial(2 * m + 1)
                + pow2(8 * m + 5) * factorial(4 * m + 3)
                + pow2(4 * m + 2) * involutions(4 * m + 3)
        }
    };
    Ok(s)
}

/// Literal orbit count over all `4^{n+1} n!` patterns.
pub fn burnside_direct(n: usize) -> Result<u64, EnumerationError> {
    guard(n, 2, 4)?;
    Ok(symmetry_partition(n)?.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideRow {
    pub n: usize,
    #[serde(serialize_with = "crate::arith::serialize_decimal")]
    pub value: BigUint,
    pub note: Option<String>,
}

/// The published value printed under the label `s_7`.
pub const PRINTED_S7: u64 = 1_478_528;

/// `s_2 ..= s_max` with notes on the published labelling.
pub fn burnside_table(max_n: usize) -> Result<Vec<BurnsideRow>, EnumerationError> {
    guard(max_n, 2, 64)?;
    (2..=max_n)
        .map(|n| {
            let value = burnside_s(n)?;
            let note = match n {
                6 => Some(format!("{PRINTED_S7} is printed with the label s_7; the closed form puts it at n=6")),
                7 => Some(format!("closed form value; differs from the printed s_7 = {PRINTED_S7}")),
                _ => None,
            };
            Ok(BurnsideRow { n, value, note })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{permutations_of, Permutation};

    fn pat(s: &str) -> BiVincularPattern {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_examples() {
        let seq = |s: &str, n| avoidance_sequence(&[pat(s)], n).unwrap().terms;
        assert_eq!(seq("231|X=1|Y=1", 7), [1, 2, 5, 15, 53, 217, 1014]);
        assert_eq!(seq("12|X=|Y=0", 7), [1, 1, 2, 6, 24, 120, 720]);
        assert_eq!(seq("123|X=|Y=", 7), [1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn joint_avoidance_matches_filter() {
        let set = [pat("21|X=1|Y=1"), pat("12|X=1|Y=1")];
        let got = avoidance_sequence(&set, 5).unwrap().terms;
        // no two adjacent entries differ by exactly one
        let expected: Vec<u64> = (1..=5)
            .map(|n| {
                permutations_of(n)
                    .filter(|p| p.as_slice().windows(2).all(|w| w[0].abs_diff(w[1]) != 1))
                    .count() as u64
            })
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got, [1, 0, 0, 2, 14]);
    }

    #[test]
    fn sequence_errors() {
        assert_eq!(avoidance_sequence(&[], 3), Err(EnumerationError::EmptyPatternSet));
        assert!(matches!(avoidance_sequence(&[pat("12|X=|Y=")], 12), Err(EnumerationError::Guard { .. })));
        assert!(matches!(avoidance_sequence(&[pat("12|X=|Y=")], 0), Err(EnumerationError::Guard { .. })));
    }

    #[test]
    fn distribution_examples() {
        let d = distribution(&pat("12|X=|Y="), 3).unwrap();
        assert_eq!(d.row(3).unwrap(), &BTreeMap::from([(0, 1), (1, 2), (2, 2), (3, 1)]));
        let d = distribution(&pat("132|X=1|Y="), 4).unwrap();
        assert_eq!(d.row(2).unwrap(), &BTreeMap::from([(0, 2)]));
        for (i, row) in d.rows.iter().enumerate() {
            let total: u64 = row.values().sum();
            assert_eq!(BigUint::from(total), factorial(i + 1));
        }
        assert!(distribution(&pat("12|X=|Y="), 9).is_err());
    }

    #[test]
    fn distribution_zero_column_is_avoidance() {
        for p in ["132|X=1|Y=1", "123|X=0|Y=0,2", "12|X=1|Y=0"] {
            let p = pat(p);
            let d = distribution(&p, 6).unwrap();
            let a = avoidance_sequence(&[p], 6).unwrap();
            for i in 1..=6 {
                assert_eq!(d.row(i).unwrap().get(&0).copied().unwrap_or(0), a.term(i).unwrap());
            }
        }
    }

    #[test]
    fn distribution_equality_examples() {
        assert!(distributions_equal(&pat("123|X=|Y=0"), &pat("132|X=|Y=0"), 6).unwrap());
        assert!(distributions_equal(&pat("123|X=0|Y=1"), &pat("123|X=0|Y=3"), 6).unwrap());
        assert!(distributions_equal(&pat("12|X=|Y="), &pat("21|X=|Y="), 4).unwrap());
        assert!(!distributions_equal(&pat("123|X=|Y="), &pat("132|X=1|Y=1"), 5).unwrap());
        assert!(distributions_equal(&pat("12|X=|Y="), &pat("21|X=|Y="), 8).is_err());
    }

    #[test]
    fn avoidance_is_symmetry_invariant() {
        for k in 1..=3 {
            for p in enumerate_patterns(k).unwrap() {
                let base = avoidance_sequence(std::slice::from_ref(&p), 6).unwrap().terms;
                for s in crate::Symmetry::ALL {
                    let q = p.apply(s);
                    assert_eq!(avoidance_sequence(&[q], 6).unwrap().terms, base, "{p} {s:?}");
                }
            }
        }
    }

    #[test]
    fn symmetry_partition_sizes() {
        assert_eq!(symmetry_partition(1).unwrap().len(), 6);
        let two = symmetry_partition(2).unwrap();
        assert_eq!(two.len(), 24);
        assert_eq!(two.iter().map(BTreeSet::len).sum::<usize>(), 128);
        let three = symmetry_partition(3).unwrap();
        assert_eq!(three.len(), 212);
        assert_eq!(three.iter().map(BTreeSet::len).sum::<usize>(), 1536);
        assert!(symmetry_partition(5).is_err());
    }

    #[test]
    fn classification_shapes() {
        let two = wilf_classify(2, 7).unwrap();
        assert_eq!(two.classes.len(), 7);
        let three = wilf_classify(3, 1).unwrap();
        assert_eq!(three.classes.len(), 1);
        assert_eq!(three.classes[0].members.len(), 212);
        assert_eq!(three.classes[0].provenance, Provenance::PrefixEqualOnly);
        assert!(wilf_classify(4, 3).is_err());
    }

    #[test]
    fn length_two_rows_match_catalog() {
        let report = wilf_classify(2, 7).unwrap();
        for class in &report.classes {
            let id = class.formula_id.expect("every length-2 class has a catalog row");
            assert_eq!(class.terms, id.entry().table_terms);
            assert_eq!(class.representative.to_string(), id.entry().representative);
            assert_eq!(class.provenance, Provenance::ProvedInPaper, "{id}");
        }
        let total: usize = report.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn length_three_classes() {
        let report = wilf_classify(3, 7).unwrap();
        let rows: BTreeSet<Vec<u64>> = report.classes.iter().map(|c| c.terms.clone()).collect();
        for id in &FormulaId::ALL[7..] {
            assert!(rows.iter().any(|r| r[..] == id.entry().table_terms[..]), "{id}");
        }
        // two classes beyond the 24 catalog rows
        let extra: Vec<String> = report
            .classes
            .iter()
            .filter(|c| c.formula_id.is_none())
            .map(|c| c.representative.to_string())
            .collect();
        assert_eq!(extra, ["123|X=1,2|Y=", "123|X=0,2|Y=0,2"]);
        assert_eq!(report.classes.len(), 26);
        let total: usize = report.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 212);
    }

    #[test]
    fn burnside_values() {
        let s: Vec<BigUint> = (2..=7).map(|n| burnside_s(n).unwrap()).collect();
        let expected = [24u64, 212, 3220, 61924, 1_478_528, 41_304_064].map(BigUint::from);
        assert_eq!(s, expected);
        assert!(burnside_s(1).is_err());
        assert_eq!(burnside_direct(2).unwrap(), 24);
        assert_eq!(burnside_direct(3).unwrap(), 212);
        assert!(burnside_direct(5).is_err());
        assert_eq!(involution_count(4), BigUint::from(10u32));
    }

    /// Burnside's lemma evaluated by brute force: the average number of
    /// patterns fixed by each of the eight group elements.
    #[test]
    fn burnside_by_fixed_points() {
        let words = ["", "i", "r", "c", "rc", "ir", "ri", "irc"];
        for n in 2..=3 {
            let all = enumerate_patterns(n).unwrap();
            let mut fixed = 0usize;
            for w in words {
                fixed += all.iter().filter(|p| p.apply_symmetry(w).unwrap() == **p).count();
            }
            assert_eq!(fixed % 8, 0);
            assert_eq!(BigUint::from(fixed / 8), burnside_s(n).unwrap());
        }
    }

    /// The permutation ingredients of the closed form: fixed points of the
    /// half turn and the quarter turns.
    #[test]
    fn rotation_fixed_points() {
        for n in 1..=8 {
            let half = permutations_of(n).filter(|p| p.reverse().complement() == *p).count();
            let g180 = BigUint::from(1u32) << (n / 2);
            assert_eq!(BigUint::from(half), g180 * factorial(n / 2), "n={n}");
            let quarter = permutations_of(n).filter(|p: &Permutation| p.inverse().reverse() == *p).count();
            let m = n / 4;
            let expected = if n % 4 < 2 && m >= 1 {
                BigUint::from(2u32) * falling_ratio(2 * m - 1, m - 1)
            } else if n <= 1 {
                BigUint::from(1u32)
            } else {
                BigUint::from(0u32)
            };
            assert_eq!(BigUint::from(quarter), expected, "n={n}");
        }
    }

    #[test]
    fn burnside_table_flags_label() {
        let rows = burnside_table(7).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[4].n, 6);
        assert_eq!(rows[4].value, BigUint::from(PRINTED_S7));
        assert!(rows[4].note.as_deref().unwrap().contains("s_7"));
        assert!(rows[5].note.is_some());
    }
}
