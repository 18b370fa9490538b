//! Strong Wilf equivalence: embedding-index censuses, refutation by census
//! comparison, and the column-maximum construction of minimal words.

pub mod registry;
pub mod witness;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::words_of_norm;
use crate::word::{embedding_indices_unchecked, Composition};

/// Census cell: `(Em-set, length, norm)`.
pub type CellKey = (Vec<usize>, u64, u64);

/// Number of words `w` with `1 <= Σ(w) <= norm_bound` in each cell
/// `(Em(subject, w), |w|, Σ(w))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmCensus {
    pub subject: Composition,
    pub norm_bound: u64,
    pub counts: BTreeMap<CellKey, u64>,
}

impl EmCensus {
    pub fn get(&self, em: &[usize], length: u64, norm: u64) -> u64 {
        self.counts.get(&(em.to_vec(), length, norm)).copied().unwrap_or(0)
    }

    /// Count of words of the given weight whose Em-set is nonempty.
    pub fn containing(&self, length: u64, norm: u64) -> u64 {
        self.counts.iter().filter(|((em, l, n), _)| !em.is_empty() && *l == length && *n == norm).map(|(_, c)| c).sum()
    }

    pub fn total(&self, length: u64, norm: u64) -> u64 {
        self.counts.iter().filter(|((_, l, n), _)| *l == length && *n == norm).map(|(_, c)| c).sum()
    }
}

fn census_of_norm(u: &[u64], n: u64) -> BTreeMap<CellKey, u64> {
    let mut local = BTreeMap::new();
    for w in words_of_norm(n) {
        let em = embedding_indices_unchecked(u, w.parts());
        *local.entry((em, w.len() as u64, n)).or_insert(0) += 1;
    }
    local
}

/// Enumerates every word up to the bound, one shard per norm.
pub fn census(u: &Composition, norm_bound: u64) -> Result<EmCensus> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if norm_bound < 1 {
        return Err(Error::InvalidParameter("norm bound must be >= 1".into()));
    }
    let shards: Vec<BTreeMap<CellKey, u64>> =
        (1..=norm_bound).into_par_iter().map(|n| census_of_norm(u.parts(), n)).collect();
    // Shards have disjoint keys (the norm is part of the key).
    let counts = shards.into_iter().flatten().collect();
    Ok(EmCensus { subject: u.clone(), norm_bound, counts })
}

/// A census cell where two words disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub em: Vec<usize>,
    pub length: u64,
    pub norm: u64,
    pub count_u: u64,
    pub count_v: u64,
}

/// The first cell in which the censuses of `u` and `v` differ. Cells are
/// ordered by norm, then length; within a weight, cells holding words of `u`
/// with no counterpart for `v` come first, then the converse, then plain
/// count mismatches, each group by Em-set. `None` means agreement up to the
/// bound, which is evidence for `u ∼ₛ v` but not a proof.
pub fn strong_refute(u: &Composition, v: &Composition, norm_bound: u64) -> Result<Option<Refutation>> {
    let cu = census(u, norm_bound)?;
    let cv = census(v, norm_bound)?;
    Ok(first_difference(&cu, &cv))
}

pub fn first_difference(cu: &EmCensus, cv: &EmCensus) -> Option<Refutation> {
    let keys: BTreeSet<&CellKey> = cu.counts.keys().chain(cv.counts.keys()).collect();
    keys.into_iter()
        .filter_map(|(em, length, norm)| {
            let (a, b) = (cu.get(em, *length, *norm), cv.get(em, *length, *norm));
            let rank = match (a, b) {
                _ if a == b => return None,
                (_, 0) => 0,
                (0, _) => 1,
                _ => 2,
            };
            Some(((*norm, *length, rank, em.clone()), Refutation { em: em.clone(), length: *length, norm: *norm, count_u: a, count_v: b }))
        })
        .min_by(|x, y| x.0.cmp(&y.0))
        .map(|(_, r)| r)
}

/// The word built by overlaying copies of `u` starting at each index of
/// `indices` and taking the maximum in each column, unconstrained columns
/// being 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalWord {
    pub word: Composition,
    /// Whether `Em(u, word)` equals the requested set rather than a superset.
    pub exact: bool,
}

pub fn minimal_word_for_indices(u: &Composition, indices: &BTreeSet<usize>) -> Result<MinimalWord> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (Some(&first), Some(&last)) = (indices.first(), indices.last()) else {
        return Err(Error::BadIndexSet);
    };
    if first < 1 {
        return Err(Error::BadIndexSet);
    }
    let len = last + u.len() - 1;
    let mut parts = vec![1u64; len];
    for &j in indices {
        for (t, &a) in u.parts().iter().enumerate() {
            let p = j - 1 + t;
            parts[p] = parts[p].max(a);
        }
    }
    let word = Composition::new(parts)?;
    let em: BTreeSet<usize> = embedding_indices_unchecked(u.parts(), word.parts()).into_iter().collect();
    Ok(MinimalWord { exact: &em == indices, word })
}
