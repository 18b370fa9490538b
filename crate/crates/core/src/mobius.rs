//! Möbius function of ordinary factor order over a finite alphabet, by
//! Björner's recursion, with a zeta-inversion oracle.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};

/// A finite alphabet of distinct characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self> {
        let chars: Vec<char> = letters.chars().collect();
        let distinct: BTreeSet<char> = chars.iter().copied().collect();
        if chars.is_empty() || distinct.len() != chars.len() {
            return Err(Error::InvalidParameter(format!("alphabet {letters:?} must be nonempty with distinct letters")));
        }
        Ok(Alphabet(chars))
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    /// `ε` or the empty string give the empty word.
    pub fn parse(&self, s: &str) -> Result<AlphaWord> {
        let s = s.trim();
        if s == "ε" {
            return Ok(AlphaWord(Vec::new()));
        }
        if let Some(c) = s.chars().find(|c| !self.0.contains(c)) {
            return Err(Error::Malformed(format!("letter {c:?} of {s:?} is not in the alphabet")));
        }
        Ok(AlphaWord(s.chars().collect()))
    }

    /// Every word of length `len`, lexicographic in alphabet order.
    pub fn words_of_length(&self, len: usize) -> Vec<AlphaWord> {
        let mut out = vec![AlphaWord(Vec::new())];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| self.0.iter().map(move |&c| w.pushed(c))).collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaWord(Vec<char>);

impl AlphaWord {
    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn pushed(&self, c: char) -> AlphaWord {
        let mut v = self.0.clone();
        v.push(c);
        AlphaWord(v)
    }

    fn slice(&self, a: usize, b: usize) -> AlphaWord {
        AlphaWord(self.0[a..b].to_vec())
    }
}

impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// `u` is a contiguous factor of `w`.
pub fn is_factor(u: &AlphaWord, w: &AlphaWord) -> bool {
    u.len() <= w.len() && (u.is_empty() || w.0.windows(u.len()).any(|win| win == u.0.as_slice()))
}

/// Longest proper border, from the failure function.
pub fn dominant_outer(w: &AlphaWord) -> AlphaWord {
    let s = &w.0;
    if s.is_empty() {
        return AlphaWord(Vec::new());
    }
    let mut fail = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    w.slice(0, fail[s.len() - 1])
}

/// `w` with its first and last letters removed.
pub fn dominant_inner(w: &AlphaWord) -> Result<AlphaWord> {
    if w.len() < 2 {
        return Err(Error::Precondition(format!("dominant inner factor needs |w| >= 2, got {w}")));
    }
    Ok(w.slice(1, w.len() - 1))
}

pub fn is_flat(w: &AlphaWord) -> bool {
    w.0.windows(2).all(|p| p[0] == p[1])
}

/// Memo for `μ(u, w)`; concurrent readers, idempotent inserts.
#[derive(Debug, Default)]
pub struct MobiusCache {
    memo: RwLock<HashMap<(AlphaWord, AlphaWord), i8>>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Björner's formula; 0 when `u` is not a factor of `w`.
    pub fn mobius(&self, u: &AlphaWord, w: &AlphaWord) -> i8 {
        if !is_factor(u, w) {
            return 0;
        }
        let key = (u.clone(), w.clone());
        if let Some(&m) = self.memo.read().expect("memo lock").get(&key) {
            return m;
        }
        let m = self.compute(u, w);
        self.memo.write().expect("memo lock").insert(key, m);
        m
    }

    fn compute(&self, u: &AlphaWord, w: &AlphaWord) -> i8 {
        let gap = w.len() - u.len();
        if gap < 2 {
            return if gap == 0 { 1 } else { -1 };
        }
        let o = dominant_outer(w);
        let i = dominant_inner(w).expect("|w| >= 2 when the gap is 2 or more");
        if gap == 2 {
            return i8::from(!is_flat(w) && (*u == o || *u == i));
        }
        if is_factor(u, &o) && !is_factor(&o, &i) {
            return self.mobius(u, &o);
        }
        0
    }
}

pub fn mobius(u: &AlphaWord, w: &AlphaWord) -> i8 {
    MobiusCache::new().mobius(u, w)
}

/// The interval `[u, w]`: distinct factors of `w` containing `u`, by length
/// then lexicographically.
pub fn interval(u: &AlphaWord, w: &AlphaWord) -> Result<Vec<AlphaWord>> {
    if !is_factor(u, w) {
        return Err(Error::Precondition(format!("{u} is not a factor of {w}")));
    }
    let mut set = BTreeSet::new();
    for a in 0..=w.len() {
        for b in a..=w.len() {
            let z = w.slice(a, b);
            if is_factor(u, &z) {
                set.insert((z.len(), z));
            }
        }
    }
    Ok(set.into_iter().map(|(_, z)| z).collect())
}

/// `μ(u, w)` from `μ(u, u) = 1` and `Σ_{u <= z <= w} μ(u, z) = 0`, over
/// the interval, with no use of the recursion.
pub fn mobius_oracle(u: &AlphaWord, w: &AlphaWord) -> Result<i64> {
    let elems = interval(u, w)?;
    let mut mu: Vec<i64> = Vec::with_capacity(elems.len());
    for (k, z) in elems.iter().enumerate() {
        let value = if z == u { 1 } else { -(0..k).filter(|&j| is_factor(&elems[j], z)).map(|j| mu[j]).sum::<i64>() };
        mu.push(value);
    }
    Ok(*mu.last().expect("interval contains w"))
}

/// `a bⁿ a bⁿ a` for `j = 0`, else `a b^{n+j} a bⁿ a`, with `μ(a, ·)`.
pub fn non_regularity_witness(n: usize, j: usize) -> Result<(AlphaWord, i8)> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut letters = vec!['a'];
    letters.extend(std::iter::repeat('b').take(n + j));
    letters.push('a');
    letters.extend(std::iter::repeat('b').take(n));
    letters.push('a');
    let z = AlphaWord(letters);
    let m = mobius(&AlphaWord(vec!['a']), &z);
    Ok((z, m))
}
