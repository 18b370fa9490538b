use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rat::RatFun2;
use crate::error::{Error, Result};

/// Truncated coefficient table `[t^length x^norm] f` for `norm <= norm_bound`
/// and `length <= length_bound`. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeriesTable {
    coeffs: BTreeMap<(u64, u64), BigInt>,
    norm_bound: u64,
    length_bound: u64,
}

impl SeriesTable {
    pub fn new(norm_bound: u64, length_bound: u64) -> Self {
        SeriesTable { coeffs: BTreeMap::new(), norm_bound, length_bound }
    }

    pub fn norm_bound(&self) -> u64 {
        self.norm_bound
    }

    pub fn length_bound(&self) -> u64 {
        self.length_bound
    }

    /// Coefficient of `t^length x^norm`.
    pub fn get(&self, length: u64, norm: u64) -> BigInt {
        self.coeffs.get(&(length, norm)).cloned().unwrap_or_default()
    }

    pub fn add_to(&mut self, length: u64, norm: u64, delta: &BigInt) {
        if length > self.length_bound || norm > self.norm_bound || delta.is_zero() {
            return;
        }
        let e = self.coeffs.entry((length, norm)).or_default();
        *e += delta;
        if e.is_zero() {
            self.coeffs.remove(&(length, norm));
        }
    }

    pub fn increment(&mut self, length: u64, norm: u64) {
        self.add_to(length, norm, &BigInt::from(1));
    }

    /// Nonzero entries as `((length, norm), coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Termwise sum; bounds are the minimum of the two.
    pub fn sum(&self, other: &SeriesTable) -> SeriesTable {
        let mut out = SeriesTable::new(self.norm_bound.min(other.norm_bound), self.length_bound.min(other.length_bound));
        for (&(l, n), c) in self.entries().chain(other.entries()) {
            out.add_to(l, n, c);
        }
        out
    }

    /// Drops entries beyond the given bounds.
    pub fn truncate(&self, norm_bound: u64, length_bound: u64) -> SeriesTable {
        let mut out = SeriesTable::new(norm_bound, length_bound);
        for (&(l, n), c) in self.entries() {
            out.add_to(l, n, c);
        }
        out
    }
}

impl Serialize for SeriesTable {
    /// A JSON array of `{"length", "norm", "coeff"}` objects in
    /// `(length, norm)` order; coefficients are decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            length: u64,
            norm: u64,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (&(length, norm), c) in &self.coeffs {
            seq.serialize_element(&Entry { length, norm, coeff: c.to_string() })?;
        }
        seq.end()
    }
}

/// Expands `r` as a power series in `t, x` up to `x^norm_bound`, keeping
/// lengths up to `norm_bound` (every word has length at most its norm).
pub fn series_expand(r: &RatFun2, norm_bound: u64) -> Result<SeriesTable> {
    series_expand_box(r, norm_bound, norm_bound)
}

/// Expansion on the box `length <= length_bound`, `norm <= norm_bound`.
///
/// Solves `den * f = num` coefficientwise: with `d0` the constant term of the
/// denominator, `f[l,n] = (num[l,n] - Σ_{(i,j) ≠ (0,0)} den[i,j] f[l-i,n-j]) / d0`.
/// Every entry depends only on entries with smaller indices, so the box is
/// closed under the recursion.
pub fn series_expand_box(r: &RatFun2, length_bound: u64, norm_bound: u64) -> Result<SeriesTable> {
    let den = r.den();
    let d0 = den.constant_term();
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let (lb, nb) = (length_bound as usize, norm_bound as usize);
    let width = nb + 1;
    let mut f = vec![BigInt::zero(); (lb + 1) * width];
    let den_terms: Vec<(usize, usize, &BigInt)> = den
        .terms()
        .filter(|(m, _)| **m != (0, 0))
        .map(|(&(i, j), c)| (i as usize, j as usize, c))
        .filter(|(i, j, _)| *i <= lb && *j <= nb)
        .collect();
    // Norm outer, length inner, so every dependency is already computed.
    for n in 0..=nb {
        for l in 0..=lb {
            let mut acc = r.num().coeff(l as u32, n as u32);
            for &(i, j, c) in &den_terms {
                if i <= l && j <= n {
                    let prev = &f[(l - i) * width + (n - j)];
                    if !prev.is_zero() {
                        acc -= c * prev;
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            let (q, rem) = acc.div_rem(&d0);
            if !rem.is_zero() {
                return Err(Error::NonIntegralSeries);
            }
            f[l * width + n] = q;
        }
    }
    let mut table = SeriesTable::new(norm_bound, length_bound);
    for l in 0..=lb {
        for n in 0..=nb {
            table.add_to(l as u64, n as u64, &f[l * width + n]);
        }
    }
    Ok(table)
}
