//! Wilf equivalence: testing, classification, the closed forms for two
//! families, and the explicit bijection between `xmynz` and `xnymz`.

mod closed;
mod mn;

pub use closed::{closed_form_increasing, closed_form_one_k_b_l};
pub use mn::{MnImage, MnInstance};

use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::Stat;
use crate::error::{Error, Result};
use crate::polyrat::RatFun2;
use crate::transfer::gen_function;
use crate::word::Composition;

/// `u ∼ v`, decided by exact equality of `S(u)` and `S(v)`.
pub fn wilf_equivalent(u: &Composition, v: &Composition) -> Result<bool> {
    let su = gen_function(u, Stat::S)?;
    let sv = gen_function(v, Stat::S)?;
    Ok(su.rat_eq(&sv))
}

#[derive(Debug, Clone)]
pub struct WilfClass {
    /// Sorted length-then-lex; the first member is the representative.
    pub members: Vec<Composition>,
    pub key: RatFun2,
}

impl WilfClass {
    pub fn representative(&self) -> &Composition {
        &self.members[0]
    }
}

/// A partition of words into Wilf classes, ordered by least member.
#[derive(Debug, Clone)]
pub struct WilfClassification {
    pub classes: Vec<WilfClass>,
}

/// JSON row of a classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub representative: String,
    pub members: Vec<String>,
    #[serde(rename = "S")]
    pub s: String,
}

impl WilfClassification {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn records(&self) -> Vec<ClassRecord> {
        self.classes
            .iter()
            .map(|c| ClassRecord {
                representative: c.representative().to_string(),
                members: c.members.iter().map(|m| m.to_string()).collect(),
                s: c.key.to_string(),
            })
            .collect()
    }

    /// Member lists only, for comparisons.
    pub fn partition(&self) -> Vec<Vec<String>> {
        self.classes.iter().map(|c| c.members.iter().map(|m| m.to_string()).collect()).collect()
    }
}

/// Partitions `words` by equality of `S`. Duplicates are dropped.
pub fn classify(words: &[Composition]) -> Result<WilfClassification> {
    if words.is_empty() {
        return Err(Error::InvalidParameter("nothing to classify".into()));
    }
    let mut sorted = words.to_vec();
    sorted.sort_by(|a, b| a.shortlex_cmp(b));
    sorted.dedup();
    let series: Vec<RatFun2> = sorted.par_iter().map(|u| gen_function(u, Stat::S)).collect::<Result<_>>()?;
    let mut classes: Vec<WilfClass> = Vec::new();
    for (u, s) in sorted.into_iter().zip(series) {
        // Different minimal weights can never match, which keeps the scan short.
        match classes.iter_mut().find(|c| c.representative().weight() == u.weight() && c.key.rat_eq(&s)) {
            Some(c) => c.members.push(u),
            None => classes.push(WilfClass { members: vec![u], key: s }),
        }
    }
    Ok(WilfClassification { classes })
}

/// All permutations of `1..=n`, lexicographically.
pub fn permutations(n: u64) -> Vec<Composition> {
    let mut parts: Vec<u64> = (1..=n).collect();
    let mut out = vec![Composition::from_parts_unchecked(parts.clone())];
    while let Some(i) = (1..parts.len()).rev().find(|&i| parts[i - 1] < parts[i]) {
        let j = (i..parts.len()).rev().find(|&j| parts[j] > parts[i - 1]).expect("successor exists");
        parts.swap(i - 1, j);
        parts[i..].reverse();
        out.push(Composition::from_parts_unchecked(parts.clone()));
    }
    out
}

/// All words of length `1..=max_len` with parts in `1..=max_part`.
pub fn bounded_words(max_len: usize, max_part: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 1..=max_part {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Composition::from_parts_unchecked));
        layer = next;
    }
    out
}

/// Outcome of testing `a1b2c ∼ a2b1c` for one triple.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureCase {
    pub left: String,
    pub right: String,
    pub equivalent: bool,
}

/// Tests `a1b2c ∼ a2b1c` for all `a, b, c` in `lo..=hi`.
pub fn check_conjecture(lo: u64, hi: u64) -> Result<Vec<ConjectureCase>> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidParameter(format!("bad range {lo}..{hi}")));
    }
    let mut triples = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                triples.push((a, b, c));
            }
        }
    }
    triples
        .par_iter()
        .map(|&(a, b, c)| {
            let left = Composition::new(vec![a, 1, b, 2, c])?;
            let right = Composition::new(vec![a, 2, b, 1, c])?;
            Ok(ConjectureCase { left: left.to_string(), right: right.to_string(), equivalent: wilf_equivalent(&left, &right)? })
        })
        .collect()
}
