//! Compositions (words over the positive integers), their weights, embedding
//! indices under generalized factor order, and the word transforms used by
//! the Wilf-equivalence constructions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over the positive integers. The empty word is a legal value.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::WordSyntax {
                input: format!("{parts:?}"),
                reason: format!("part {} is zero", pos + 1),
            });
        }
        Ok(Composition(parts))
    }

    /// Builds a composition without checking positivity. Callers guarantee it.
    pub(crate) fn from_parts_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p >= 1));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    pub fn weight(&self) -> Weight {
        Weight { length: self.len() as u64, norm: self.norm() }
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn push(&mut self, part: u64) {
        assert!(part >= 1, "parts are positive");
        self.0.push(part);
    }

    /// The factor `w_{start+1} .. w_{end}` (0-based half-open range).
    pub fn slice(&self, start: usize, end: usize) -> Composition {
        Composition(self.0[start..end].to_vec())
    }

    /// `u^k` style repetition of a single letter.
    pub fn repeat(letter: u64, times: usize) -> Composition {
        assert!(letter >= 1);
        Composition(vec![letter; times])
    }

    /// Sorted multiset of parts; two words are rearrangements of each other
    /// iff these agree.
    pub fn sorted_parts(&self) -> Vec<u64> {
        let mut p = self.0.clone();
        p.sort_unstable();
        p
    }

    pub fn is_rearrangement_of(&self, other: &Composition) -> bool {
        self.sorted_parts() == other.sorted_parts()
    }

    /// Length-then-lexicographic comparison, the canonical order for
    /// reporting.
    pub fn shortlex_cmp(&self, other: &Composition) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Composition> for Vec<u64> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl TryFrom<Vec<u64>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Composition::new(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&p| p <= 9) {
            for p in &self.0 {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
            f.write_str(&s.join(","))
        }
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// Accepts `2143` (one digit per part) or `10,2,3`. The empty string and
/// `ε` denote the empty word.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::WordSyntax { input: s.to_string(), reason: reason.to_string() };
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Composition::empty());
        }
        let parts: Vec<u64> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| bad("expected comma-separated positive integers")))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(u64::from).ok_or_else(|| bad("expected digits")))
                .collect::<Result<_>>()?
        };
        if parts.contains(&0) {
            return Err(bad("parts must be positive"));
        }
        Ok(Composition(parts))
    }
}

/// The monomial `t^length x^norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub length: u64,
    pub norm: u64,
}

/// `Em(u, w)`: the 1-based starting positions `j` with `u_i <= w_{j+i-1}`
/// for every `i`. Nonempty iff `u <= w` in generalized factor order.
pub fn embedding_indices(u: &Composition, w: &Composition) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(embedding_indices_unchecked(u.parts(), w.parts()))
}

pub(crate) fn embedding_indices_unchecked(u: &[u64], w: &[u64]) -> Vec<usize> {
    if u.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - u.len())
        .filter(|&j| u.iter().zip(&w[j..]).all(|(a, b)| a <= b))
        .map(|j| j + 1)
        .collect()
}

/// True iff `u <= w` in generalized factor order over the chain of positive
/// integers.
pub fn embeds(u: &Composition, w: &Composition) -> bool {
    let (u, w) = (u.parts(), w.parts());
    if u.len() > w.len() {
        return false;
    }
    (0..=w.len() - u.len()).any(|j| u.iter().zip(&w[j..]).all(|(a, b)| a <= b))
}

/// One block of a k-factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFactorization {
    /// `y_1, ..., y_m`: maximal runs of parts `< k` (first and last may be empty).
    pub low: Vec<Composition>,
    /// `z_1, ..., z_{m-1}`: maximal nonempty runs of parts `>= k`.
    pub high: Vec<Composition>,
}

impl KFactorization {
    /// Reassembles `y_1 z_1 y_2 ... z_{m-1} y_m`.
    pub fn join(&self) -> Composition {
        let mut parts = Vec::new();
        for (i, y) in self.low.iter().enumerate() {
            parts.extend_from_slice(y.parts());
            if let Some(z) = self.high.get(i) {
                parts.extend_from_slice(z.parts());
            }
        }
        Composition(parts)
    }
}

/// The unique factorization `w = y_1 z_1 y_2 z_2 ... z_{m-1} y_m` with
/// `y_i` over `[1, k)` and `z_i` over `[k, ∞)`.
pub fn k_factorize(w: &Composition, k: u64) -> Result<KFactorization> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut low = vec![Vec::new()];
    let mut high: Vec<Vec<u64>> = Vec::new();
    let mut in_high = false;
    for &p in w.parts() {
        if p >= k {
            if !in_high {
                high.push(Vec::new());
                in_high = true;
            }
            high.last_mut().unwrap().push(p);
        } else {
            if in_high {
                low.push(Vec::new());
                in_high = false;
            }
            low.last_mut().unwrap().push(p);
        }
    }
    if in_high {
        low.push(Vec::new());
    }
    Ok(KFactorization {
        low: low.into_iter().map(Composition).collect(),
        high: high.into_iter().map(Composition).collect(),
    })
}

/// A strictly increasing map `ι : P -> P`, stored on `1..=values.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaMap {
    values: Vec<u64>,
}

impl IotaMap {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values[0] == 0 || values.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::IotaNotIncreasing);
        }
        Ok(IotaMap { values })
    }

    /// `ι(p) = p + shift` on `1..=bound`.
    pub fn shift(shift: u64, bound: u64) -> Self {
        IotaMap { values: (1..=bound).map(|p| p + shift).collect() }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// The largest argument on which `ι` is declared.
    pub fn domain_bound(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn apply_letter(&self, p: u64) -> Result<u64> {
        if p == 0 || p > self.domain_bound() {
            return Err(Error::IotaDomain { part: p });
        }
        Ok(self.values[p as usize - 1])
    }

    /// Index `j` with `k_j <= p < k_{j+1}`. Parts at or beyond the last
    /// declared value are rejected since the next boundary is unknown.
    pub fn collapse_letter(&self, p: u64) -> Result<u64> {
        if p < self.values[0] {
            return Err(Error::IotaDomain { part: p });
        }
        let j = self.values.partition_point(|&k| k <= p);
        if j >= self.values.len() {
            return Err(Error::IotaDomain { part: p });
        }
        Ok(j as u64)
    }

    /// True iff every part of `w` can be collapsed.
    pub fn collapses(&self, w: &Composition) -> bool {
        w.parts().iter().all(|&p| self.collapse_letter(p).is_ok())
    }
}

/// The word transforms used by the equivalence lemmas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    Reverse,
    ShiftUp(u64),
    ShiftDown(u64),
    PrependOne,
    ApplyIota(IotaMap),
    Collapse(IotaMap),
}

pub fn transform(w: &Composition, spec: &Transform) -> Result<Composition> {
    let parts = w.parts();
    let out = match spec {
        Transform::Reverse => parts.iter().rev().copied().collect(),
        Transform::ShiftUp(m) => parts.iter().map(|p| p + m).collect(),
        Transform::ShiftDown(m) => parts
            .iter()
            .map(|&p| if p > *m { Ok(p - m) } else { Err(Error::ShiftBelowOne { m: *m, part: p }) })
            .collect::<Result<_>>()?,
        Transform::PrependOne => std::iter::once(1).chain(parts.iter().copied()).collect(),
        Transform::ApplyIota(iota) => parts.iter().map(|&p| iota.apply_letter(p)).collect::<Result<_>>()?,
        Transform::Collapse(iota) => parts.iter().map(|&p| iota.collapse_letter(p)).collect::<Result<_>>()?,
    };
    Ok(Composition(out))
}

pub fn reverse(w: &Composition) -> Composition {
    Composition(w.parts().iter().rev().copied().collect())
}

pub fn shift_up(w: &Composition, m: u64) -> Composition {
    Composition(w.parts().iter().map(|p| p + m).collect())
}

/// Every composition of `n`, in lexicographic order within each length,
/// lengths ascending. Used for small exhaustive checks.
pub fn compositions_of(n: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    for len in 1..=n as usize {
        let mut cur = vec![1u64; len];
        cur[len - 1] = n - (len as u64 - 1);
        loop {
            out.push(Composition(cur.clone()));
            if !next_composition_same_length(&mut cur) {
                break;
            }
        }
    }
    out
}

/// Advances `w` to the lexicographically next composition of the same norm
/// and length. Returns `false` when `w` was the last one.
pub(crate) fn next_composition_same_length(w: &mut [u64]) -> bool {
    let len = w.len();
    if len < 2 {
        return false;
    }
    // Tail sum after position i must leave at least one unit per later part.
    let mut tail: u64 = w[len - 1];
    for i in (0..len - 1).rev() {
        let later = (len - 1 - i) as u64;
        if tail > later {
            w[i] += 1;
            let rest = tail - 1;
            for p in w.iter_mut().take(len - 1).skip(i + 1) {
                *p = 1;
            }
            w[len - 1] = rest - (later - 1);
            return true;
        }
        tail += w[i];
    }
    false
}
