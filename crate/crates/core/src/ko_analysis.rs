//! The three right-set counts for every element of the ideal below `w_max`.
//!
//! For `w` in the ideal, with `v` ranging over ideal members `v ≤ w`:
//! `c7` counts all such `v`, `c6` those with `R(w) ⊆ R(v)`, and `c5` those with
//! `R(w) = R(v)`. The element `w` itself is always counted.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine_group::{AffineElement, AffineWeylGroup, RightSet, Word};
use crate::bruhat::{enumerate_wplus_ideal, BruhatCache, IdealEnumeration, IdealMember};
use crate::error::{Error, Result};
use crate::weights::RankConfig;

/// One table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub y_word: Word,
    pub epsilon: Vec<i64>,
    pub omega: Vec<i64>,
    pub length: u32,
    pub c5: u64,
    pub c6: u64,
    pub c7: u64,
    pub right_set: RightSet,
}

impl TableRow {
    pub fn from_member(member: &IdealMember, counts: KoCounts) -> Self {
        TableRow {
            y_word: member.y_word.clone(),
            epsilon: member.epsilon.clone(),
            omega: member.weight.omega().to_vec(),
            length: member.length,
            c5: counts.c5,
            c6: counts.c6,
            c7: counts.c7,
            right_set: member.right_set,
        }
    }

    pub fn counts(&self) -> KoCounts {
        KoCounts {
            c5: self.c5,
            c6: self.c6,
            c7: self.c7,
        }
    }

    /// Checks the structural row invariants against `ℓ(w_0) = n(n+1)/2`.
    pub fn check_invariants(&self, n: usize) -> std::result::Result<(), String> {
        if !(1 <= self.c5 && self.c5 <= self.c6 && self.c6 <= self.c7) {
            return Err(format!("counts ({}, {}, {}) not ordered", self.c5, self.c6, self.c7));
        }
        let w0_len = (n * (n + 1) / 2) as u32;
        if self.length != w0_len + self.y_word.len() as u32 {
            return Err(format!(
                "length {} != {} + |{}|",
                self.length, w0_len, self.y_word
            ));
        }
        let omega: Vec<i64> = self.epsilon.windows(2).map(|p| p[0] - p[1]).collect();
        if omega != self.omega {
            return Err(format!("omega {:?} does not match epsilon {:?}", self.omega, self.epsilon));
        }
        if self.epsilon.iter().sum::<i64>() != 0 {
            return Err(format!("epsilon {:?} does not sum to zero", self.epsilon));
        }
        Ok(())
    }
}

/// Columns (5), (6), (7).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KoCounts {
    pub c5: u64,
    pub c6: u64,
    pub c7: u64,
}

impl KoCounts {
    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (self.c5, self.c6, self.c7)
    }
}

/// The sets behind the counts, as indices into the ideal's member list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KoSets {
    /// `v ≤ w`.
    pub below: Vec<usize>,
    /// `v ≤ w` and `R(w) ⊆ R(v)`.
    pub containing: Vec<usize>,
    /// `v ≤ w` and `R(w) = R(v)`.
    pub equal: Vec<usize>,
}

impl KoSets {
    pub fn counts(&self) -> KoCounts {
        KoCounts {
            c5: self.equal.len() as u64,
            c6: self.containing.len() as u64,
            c7: self.below.len() as u64,
        }
    }
}

fn member_index(ideal: &IdealEnumeration, w: &AffineElement) -> Result<usize> {
    ideal
        .position(w)
        .ok_or_else(|| Error::NotInWplus(format!("{w:?} is not a member of the ideal")))
}

/// The three sets for the member at `index`.
pub fn ko_sets_at(group: &AffineWeylGroup, ideal: &IdealEnumeration, index: usize, cache: &mut BruhatCache) -> KoSets {
    let members = ideal.members();
    let w = &members[index];
    if cache.right_argument() != &w.element {
        *cache = if cache.is_memoizing() {
            BruhatCache::new(group, &w.element)
        } else {
            BruhatCache::chain_only(group, &w.element)
        };
    }
    let mut sets = KoSets::default();
    // Members are sorted by descending length, so nothing before `index`
    // other than `w` itself can lie below it.
    for (j, v) in members.iter().enumerate().skip(index) {
        if !cache.leq_with_length(group, &v.element, v.length) {
            continue;
        }
        sets.below.push(j);
        if w.right_set.is_subset(&v.right_set) {
            sets.containing.push(j);
            if w.right_set == v.right_set {
                sets.equal.push(j);
            }
        }
    }
    sets
}

pub fn ko_sets(group: &AffineWeylGroup, w: &AffineElement, ideal: &IdealEnumeration, cache: &mut BruhatCache) -> Result<KoSets> {
    let index = member_index(ideal, w)?;
    Ok(ko_sets_at(group, ideal, index, cache))
}

/// Columns (5), (6), (7) for `w`, which must be a member of `ideal`.
pub fn ko_counts(group: &AffineWeylGroup, w: &AffineElement, ideal: &IdealEnumeration, cache: &mut BruhatCache) -> Result<KoCounts> {
    ko_sets(group, w, ideal, cache).map(|s| s.counts())
}

/// Rows for every member of `ideal`, computed in parallel on the current rayon
/// pool in chunks of `chunk_size`. Rows already present in `done` (keyed by
/// member index) are reused; `sink` sees each freshly computed chunk, in order.
pub fn compute_rows<F>(
    group: &AffineWeylGroup,
    ideal: &IdealEnumeration,
    done: &BTreeMap<usize, TableRow>,
    chunk_size: usize,
    mut sink: F,
) -> Result<Vec<TableRow>>
where
    F: FnMut(&[(usize, TableRow)]) -> Result<()>,
{
    let members = ideal.members();
    let pending: Vec<usize> = (0..members.len()).filter(|i| !done.contains_key(i)).collect();
    let mut computed: BTreeMap<usize, TableRow> = BTreeMap::new();
    for chunk in pending.chunks(chunk_size.max(1)) {
        let rows: Vec<(usize, TableRow)> = chunk
            .par_iter()
            .map(|&i| {
                let mut cache = BruhatCache::chain_only(group, &members[i].element);
                let counts = ko_sets_at(group, ideal, i, &mut cache).counts();
                (i, TableRow::from_member(&members[i], counts))
            })
            .collect();
        sink(&rows)?;
        computed.extend(rows);
    }
    Ok((0..members.len())
        .map(|i| {
            done.get(&i)
                .or_else(|| computed.get(&i))
                .cloned()
                .expect("every index computed or reused")
        })
        .collect())
}

/// The ideal below `w_max` for a configuration with `p = h`.
pub fn build_ideal(cfg: RankConfig) -> Result<(AffineWeylGroup, IdealEnumeration)> {
    let group = AffineWeylGroup::new(cfg);
    let wmax = group.find_wmax()?;
    let ideal = enumerate_wplus_ideal(&group, &wmax)?;
    Ok((group, ideal))
}

/// Full pipeline on the current rayon pool: `w_max`, its ideal, and one row per member.
pub fn build_rows(cfg: RankConfig) -> Result<Vec<TableRow>> {
    let (group, ideal) = build_ideal(cfg)?;
    compute_rows(&group, &ideal, &BTreeMap::new(), 256, |_| Ok(()))
}

/// [`build_rows`] on a dedicated pool of `threads` workers.
pub fn build_rows_with_threads(cfg: RankConfig, threads: usize) -> Result<Vec<TableRow>> {
    with_threads(threads, || build_rows(cfg))
}

/// Runs `f` inside a rayon pool with `threads` workers (0 means rayon's default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(f)
}
