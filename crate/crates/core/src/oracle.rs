//! Brute-force ground truth. Membership is decided straight from the
//! definitions of the orders, never through an automaton.

use crate::automaton::{Pattern, Stat};
use crate::polyrat::SeriesTable;
use crate::word::{embedding_indices_unchecked, next_composition_same_length, Composition};

/// Which words to enumerate: all compositions with norm at most
/// `norm_bound`, optionally restricted in length and largest part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub norm_bound: u64,
    pub length_bound: Option<usize>,
    pub alphabet_cap: Option<u64>,
}

impl EnumerationSpec {
    pub fn up_to(norm_bound: u64) -> Self {
        EnumerationSpec { norm_bound, length_bound: None, alphabet_cap: None }
    }

    fn admits(&self, w: &[u64]) -> bool {
        self.alphabet_cap.map_or(true, |cap| w.iter().all(|&a| a <= cap))
    }
}

/// Streams compositions by norm, then length, then lexicographically.
/// The empty word is not produced.
#[derive(Debug, Clone)]
pub struct WordStream {
    spec: EnumerationSpec,
    min_norm: u64,
    norm: u64,
    cur: Vec<u64>,
    started: bool,
}

impl WordStream {
    fn new(spec: EnumerationSpec, min_norm: u64) -> Self {
        WordStream { spec, min_norm, norm: min_norm, cur: Vec::new(), started: false }
    }

    fn max_len(&self) -> usize {
        let by_norm = self.norm as usize;
        self.spec.length_bound.map_or(by_norm, |l| l.min(by_norm))
    }

    fn first_of_length(&mut self, len: usize) {
        self.cur = vec![1; len];
        self.cur[len - 1] = self.norm - (len as u64 - 1);
    }

    /// Moves to the next raw word, ignoring the alphabet cap.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.norm = self.min_norm;
            if self.norm == 0 || self.norm > self.spec.norm_bound {
                return false;
            }
            self.first_of_length(1);
            return true;
        }
        if next_composition_same_length(&mut self.cur) {
            return true;
        }
        let len = self.cur.len();
        if len < self.max_len() {
            self.first_of_length(len + 1);
            return true;
        }
        if self.norm < self.spec.norm_bound {
            self.norm += 1;
            self.first_of_length(1);
            return true;
        }
        false
    }
}

impl Iterator for WordStream {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        while self.advance() {
            if self.spec.admits(&self.cur) {
                return Some(Composition::from_parts_unchecked(self.cur.clone()));
            }
        }
        None
    }
}

pub fn enumerate_words(spec: EnumerationSpec) -> WordStream {
    WordStream::new(spec, 1)
}

/// The compositions of exactly `n`, in length-then-lex order.
pub fn words_of_norm(n: u64) -> WordStream {
    WordStream::new(EnumerationSpec::up_to(n), n)
}

/// Membership in `𝒮(u)`, `ℱ(u)` or `𝒜(u)` from the embedding indices.
pub fn in_language(u: &Composition, w: &Composition, stat: Stat) -> bool {
    let em = embedding_indices_unchecked(u.parts(), w.parts());
    match stat {
        Stat::F => !em.is_empty(),
        Stat::A => em.is_empty(),
        Stat::S => em.len() == 1 && em[0] + u.len() == w.len() + 1,
    }
}

pub fn brute_series(u: &Composition, stat: Stat, norm_bound: u64) -> SeriesTable {
    let mut table = SeriesTable::new(norm_bound, norm_bound);
    if stat == Stat::A {
        table.increment(0, 0);
    }
    for w in enumerate_words(EnumerationSpec::up_to(norm_bound)) {
        if in_language(u, &w, stat) {
            table.increment(w.len() as u64, w.norm());
        }
    }
    table
}

/// `(𝒜(u) - 𝒜(v), 𝒜(v) - 𝒜(u))` over the given words.
pub fn avoid_diff_among<I>(u: &Composition, v: &Composition, words: I) -> (Vec<Composition>, Vec<Composition>)
where
    I: IntoIterator<Item = Composition>,
{
    let mut only_u = Vec::new();
    let mut only_v = Vec::new();
    for w in words {
        let au = in_language(u, &w, Stat::A);
        let av = in_language(v, &w, Stat::A);
        if au && !av {
            only_u.push(w);
        } else if av && !au {
            only_v.push(w);
        }
    }
    (only_u, only_v)
}

/// Both avoidance difference sets restricted to norm at most `norm_bound`.
pub fn brute_avoid_diff(u: &Composition, v: &Composition, norm_bound: u64) -> (Vec<Composition>, Vec<Composition>) {
    avoid_diff_among(u, v, enumerate_words(EnumerationSpec::up_to(norm_bound)))
}

/// Distinct rearrangements of `w`, sorted lexicographically.
pub fn rearrangements(w: &Composition) -> Vec<Composition> {
    let mut parts = w.sorted_parts();
    let mut out = vec![Composition::from_parts_unchecked(parts.clone())];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..parts.len()).rev().find(|&i| parts[i - 1] < parts[i]) else {
            return out;
        };
        let j = (i..parts.len()).rev().find(|&j| parts[j] > parts[i - 1]).expect("pivot has a successor");
        parts.swap(i - 1, j);
        parts[i..].reverse();
        out.push(Composition::from_parts_unchecked(parts.clone()));
    }
}

fn dominates_at(block: &[u64], w: &[u64], at: usize) -> bool {
    at + block.len() <= w.len() && block.iter().zip(&w[at..]).all(|(a, b)| a <= b)
}

/// Whether the blocks embed into `w` in order, without overlap, starting no
/// earlier than `from`. Plain backtracking over all placements.
fn pattern_embeds_from(blocks: &[Composition], w: &[u64], from: usize) -> bool {
    let Some((first, rest)) = blocks.split_first() else {
        return true;
    };
    (from..w.len()).any(|at| dominates_at(first.parts(), w, at) && pattern_embeds_from(rest, w, at + first.len()))
}

pub fn pattern_embeds(p: &Pattern, w: &Composition) -> bool {
    pattern_embeds_from(p.blocks(), w.parts(), 0)
}

/// Membership for barred patterns; `𝒮(p)` means `p` embeds into `w` but
/// into no proper prefix of `w`.
pub fn in_pattern_language(p: &Pattern, w: &Composition, stat: Stat) -> bool {
    let contains = pattern_embeds(p, w);
    match stat {
        Stat::F => contains,
        Stat::A => !contains,
        Stat::S => contains && !pattern_embeds_from(p.blocks(), &w.parts()[..w.len() - 1], 0),
    }
}

pub fn brute_pattern_series(p: &Pattern, stat: Stat, norm_bound: u64) -> SeriesTable {
    let mut table = SeriesTable::new(norm_bound, norm_bound);
    if stat == Stat::A {
        table.increment(0, 0);
    }
    for w in enumerate_words(EnumerationSpec::up_to(norm_bound)) {
        if in_pattern_language(p, &w, stat) {
            table.increment(w.len() as u64, w.norm());
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::HashSet;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn strs(ws: &[Composition]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn enumeration_order() {
        let got: Vec<String> = enumerate_words(EnumerationSpec::up_to(3)).map(|w| w.to_string()).collect();
        assert_eq!(got, ["1", "2", "11", "3", "12", "21", "111"]);
    }

    #[test]
    fn enumeration_counts_without_duplicates() {
        let mut seen = HashSet::new();
        let mut per_norm = [0u64; 11];
        for w in enumerate_words(EnumerationSpec::up_to(10)) {
            per_norm[w.norm() as usize] += 1;
            assert!(seen.insert(w));
        }
        for (n, &count) in per_norm.iter().enumerate().skip(1) {
            assert_eq!(count, 1 << (n - 1));
        }
        assert_eq!(words_of_norm(6).count(), 32);
    }

    #[test]
    fn restricted_enumeration() {
        let spec = EnumerationSpec { norm_bound: 6, length_bound: Some(2), alphabet_cap: Some(3) };
        let got: Vec<Composition> = enumerate_words(spec).collect();
        assert!(got.iter().all(|w| w.len() <= 2 && w.parts().iter().all(|&a| a <= 3)));
        assert_eq!(got.len(), 3 + 9);
    }

    #[test]
    fn factor_series_of_11() {
        let s = brute_series(&c("11"), Stat::F, 3);
        assert_eq!(s.get(2, 2), BigInt::from(1));
        assert_eq!(s.get(2, 3), BigInt::from(2));
        assert_eq!(s.get(3, 3), BigInt::from(1));
        assert_eq!(s.get(1, 3), BigInt::from(0));
    }

    #[test]
    fn avoiders_of_one() {
        let s = brute_series(&c("1"), Stat::A, 5);
        assert_eq!(s.entries().filter(|(_, v)| **v != BigInt::from(0)).count(), 1);
        assert_eq!(s.get(0, 0), BigInt::from(1));
    }

    #[test]
    fn suffix_series_at_own_norm() {
        let u = c("2143");
        let s = brute_series(&u, Stat::S, u.norm());
        let nonzero: Vec<_> = s.entries().filter(|(_, v)| **v != BigInt::from(0)).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(*nonzero[0].0, (4, 10));
    }

    #[test]
    fn difference_sets_on_rearrangements() {
        let (du, dv) = avoid_diff_among(&c("231"), &c("321"), rearrangements(&c("1223")));
        let mut du = strs(&du);
        let mut dv = strs(&dv);
        du.sort();
        dv.sort();
        assert_eq!(du, ["1322", "3212", "3221"]);
        assert_eq!(dv, ["1232", "2231", "2312"]);
        let (a, b) = brute_avoid_diff(&c("12"), &c("12"), 8);
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn rearrangement_count() {
        assert_eq!(rearrangements(&c("1223")).len(), 12);
        assert_eq!(rearrangements(&c("123")).len(), 6);
        assert_eq!(rearrangements(&c("5")).len(), 1);
    }

    #[test]
    fn barred_embedding() {
        let p: Pattern = "[3,2],4".parse().unwrap();
        assert!(pattern_embeds(&p, &c("14235")));
        assert!(!pattern_embeds(&p, &c("14223")));
        let s = brute_pattern_series(&p, Stat::F, 15);
        assert!(s.get(5, 15) >= BigInt::from(1));
    }

    #[test]
    fn pattern_of_two_singles() {
        let p: Pattern = "1,1".parse().unwrap();
        let f = brute_pattern_series(&p, Stat::F, 8);
        // C(n-1, l-1) for l >= 2
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        for n in 1..=8 {
            assert_eq!(f.get(1, n), BigInt::from(0));
            for l in 2..=n {
                assert_eq!(f.get(l, n), BigInt::from(binom(n - 1, l - 1)));
            }
        }
        let single = Pattern::single(c("21")).unwrap();
        for stat in Stat::ALL {
            assert_eq!(brute_pattern_series(&single, stat, 8), brute_series(&c("21"), stat, 8));
        }
    }
}
