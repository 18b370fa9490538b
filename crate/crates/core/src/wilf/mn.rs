use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{embedding_indices_unchecked, Composition};

/// The data `x, y, z, m, n` of the pair `u = x m y n z`, `v = x n y m z`,
/// with every part of `x, y, z` at most `m < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnInstance {
    x: Composition,
    y: Composition,
    z: Composition,
    m: u64,
    n: u64,
}

/// Result of one application of the bijection. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MnImage {
    pub word: Vec<u64>,
    /// Positions of the letter `n` in the embeddings that get destroyed.
    pub eta: Vec<usize>,
    /// One string per element of `eta`, in the order it was walked.
    pub strings: Vec<Vec<usize>>,
}

impl MnInstance {
    pub fn new(x: Composition, y: Composition, z: Composition, m: u64, n: u64) -> Result<Self> {
        if m < 1 || n <= m {
            return Err(Error::InvalidParameter(format!("need 1 <= m < n, got m = {m}, n = {n}")));
        }
        if [&x, &y, &z].iter().any(|w| w.parts().iter().any(|&p| p > m)) {
            return Err(Error::InvalidParameter(format!("parts of x, y, z must be at most m = {m}")));
        }
        Ok(MnInstance { x, y, z, m, n })
    }

    /// Recovers the instance from `u` and `v`, which must differ by swapping
    /// one `m` with one larger `n` and have all other parts at most `m`.
    pub fn from_pair(u: &Composition, v: &Composition) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("{u} and {v} are not of the form xmynz, xnymz"));
        if u.len() != v.len() {
            return Err(bad());
        }
        let diff: Vec<usize> = (0..u.len()).filter(|&i| u.parts()[i] != v.parts()[i]).collect();
        let [p, q] = diff[..] else {
            return Err(bad());
        };
        let (m, n) = (u.parts()[p], u.parts()[q]);
        if v.parts()[p] != n || v.parts()[q] != m {
            return Err(bad());
        }
        Self::new(u.slice(0, p), u.slice(p + 1, q), u.slice(q + 1, u.len()), m, n).map_err(|_| bad())
    }

    pub fn u(&self) -> Composition {
        self.assemble(self.m, self.n)
    }

    pub fn v(&self) -> Composition {
        self.assemble(self.n, self.m)
    }

    fn assemble(&self, first: u64, second: u64) -> Composition {
        let mut parts = self.x.parts().to_vec();
        parts.push(first);
        parts.extend_from_slice(self.y.parts());
        parts.push(second);
        parts.extend_from_slice(self.z.parts());
        Composition::new(parts).expect("positive parts")
    }

    /// `k = |y| + 1`.
    pub fn k(&self) -> usize {
        self.y.len() + 1
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `w ∈ 𝒜(u) - 𝒜(v)` to `w̄ ∈ 𝒜(v) - 𝒜(u)`: strings run rightwards from
    /// each `n` of an embedding of `v`.
    pub fn forward(&self, w: &Composition) -> Result<MnImage> {
        let (u, v) = (self.u(), self.v());
        self.check_side(&u, &v, w)?;
        Ok(walk(&v, self.x.len() + 1, self.k() as isize, w))
    }

    /// The inverse: roles of `u` and `v` exchanged, strings run leftwards.
    pub fn backward(&self, w: &Composition) -> Result<MnImage> {
        let (u, v) = (self.u(), self.v());
        self.check_side(&v, &u, w)?;
        Ok(walk(&u, self.x.len() + self.y.len() + 2, -(self.k() as isize), w))
    }

    fn check_side(&self, avoided: &Composition, contained: &Composition, w: &Composition) -> Result<()> {
        let a = embedding_indices_unchecked(avoided.parts(), w.parts());
        let c = embedding_indices_unchecked(contained.parts(), w.parts());
        if !a.is_empty() || c.is_empty() {
            return Err(Error::Precondition(format!("{w} must avoid {avoided} and contain {contained}")));
        }
        Ok(())
    }
}

/// Whether `pat`, with its maximum at 1-based index `max_at`, has a
/// pseudo-embedding into `w` placing the maximum at 1-based position `p`.
fn pseudo_at(pat: &[u64], max_at: usize, w: &[u64], p: isize) -> bool {
    let start = p - max_at as isize;
    if start < 0 || start as usize + pat.len() > w.len() {
        return false;
    }
    let start = start as usize;
    pat.iter().enumerate().all(|(j, &a)| j + 1 == max_at || a <= w[start + j])
}

fn walk(pat: &Composition, max_at: usize, step: isize, w: &Composition) -> MnImage {
    let parts = w.parts();
    let eta: Vec<usize> =
        embedding_indices_unchecked(pat.parts(), parts).into_iter().map(|j| j + max_at - 1).collect();
    let mut word = parts.to_vec();
    let mut strings = Vec::new();
    for &i in &eta {
        let mut string = vec![i];
        let mut pos = i as isize;
        while pseudo_at(pat.parts(), max_at, parts, pos) {
            pos += step;
            string.push(pos as usize);
        }
        let last = *string.last().expect("nonempty");
        word.swap(i - 1, last - 1);
        strings.push(string);
    }
    MnImage { word, eta, strings }
}
