#![allow(dead_code)]

use genfactor::automaton::Pattern;
use genfactor::polyrat::SeriesTable;
use genfactor::wilf::bounded_words;
use genfactor::Composition;
use num_bigint::BigInt;

pub fn c(s: &str) -> Composition {
    s.parse().unwrap()
}

/// Every two-block pattern with total length at most `max_total` and parts
/// at most `max_part`.
pub fn two_block_patterns(max_total: usize, max_part: u64) -> Vec<Pattern> {
    let blocks = bounded_words(max_total - 1, max_part);
    let mut out = Vec::new();
    for a in &blocks {
        for b in &blocks {
            if a.len() + b.len() <= max_total {
                out.push(Pattern::new(vec![a.clone(), b.clone()]).unwrap());
            }
        }
    }
    out
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The product of `s` with the series of all words, `Σ C(n-1, l-1) t^l x^n`
/// plus 1, truncated at `norm_bound`.
pub fn times_all_words(s: &SeriesTable, norm_bound: u64) -> SeriesTable {
    let mut out = SeriesTable::new(norm_bound, norm_bound);
    for (&(l, n), coeff) in s.entries() {
        out.add_to(l, n, coeff);
        for n2 in 1..=norm_bound.saturating_sub(n) {
            for l2 in 1..=n2 {
                out.add_to(l + l2, n + n2, &(coeff * BigInt::from(binom(n2 - 1, l2 - 1))));
            }
        }
    }
    out
}
