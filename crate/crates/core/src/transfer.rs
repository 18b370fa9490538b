//! Transfer matrices of suffix automata and the generating functions they
//! produce.

use crate::automaton::{FiniteNfa, IntervalLabel, IntervalNfa, Pattern, StateKey, Stat};
use crate::error::Result;
use crate::poset::FinitePoset;
use crate::polyrat::{cross_diff_div, Poly2, RatFun2};
use crate::word::Composition;

/// Weights of the arcs of an automaton: entry `(T, U)` sums `t x^a` over the
/// letters `a` labelling the arc `T -> U`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    states: Vec<StateKey>,
    finals: Vec<bool>,
    initial: usize,
    entries: Vec<Vec<RatFun2>>,
}

/// `Σ_{a ∈ label} t x^a`, with `t x^N / (1 - x)` for a tail `[N, ∞)`.
pub fn label_weight(label: &IntervalLabel) -> RatFun2 {
    let mut singles = Poly2::zero();
    for &a in &label.singles {
        singles = singles + Poly2::monomial(1, 1, exponent(a));
    }
    let mut w = RatFun2::from_poly(singles);
    if let Some(n) = label.tail {
        let tail = RatFun2::new(Poly2::monomial(1, 1, exponent(n)), Poly2::one_minus_x()).expect("nonzero");
        w = &w + &tail;
    }
    w
}

fn exponent(a: u64) -> u32 {
    u32::try_from(a).expect("letter too large for a polynomial exponent")
}

impl TransferMatrix {
    /// Panics if the automaton still has ε-arcs.
    pub fn from_nfa(nfa: &IntervalNfa) -> Self {
        assert!(!nfa.has_epsilon(), "transfer matrix needs an ε-free automaton");
        let n = nfa.num_states();
        let mut entries = vec![vec![RatFun2::zero(); n]; n];
        for (from, row) in entries.iter_mut().enumerate() {
            for arc in nfa.arcs_from(from) {
                row[arc.to] = &row[arc.to] + &label_weight(&arc.label);
            }
        }
        TransferMatrix {
            states: nfa.states().to_vec(),
            finals: (0..n).map(|s| nfa.is_final(s)).collect(),
            initial: 0,
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StateKey] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn entry(&self, from: usize, to: usize) -> &RatFun2 {
        &self.entries[from][to]
    }

    /// The same matrix with state `order[i]` moved to position `i`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len());
        let mut inverse = vec![usize::MAX; order.len()];
        for (i, &s) in order.iter().enumerate() {
            inverse[s] = i;
        }
        TransferMatrix {
            states: order.iter().map(|&s| self.states[s]).collect(),
            finals: order.iter().map(|&s| self.finals[s]).collect(),
            initial: inverse[self.initial],
            entries: order.iter().map(|&r| order.iter().map(|&c| self.entries[r][c].clone()).collect()).collect(),
        }
    }

    /// `Σ_{T final} ((I - M)^{-1})_{initial, T}`.
    ///
    /// Final rows are zero, so only non-final states are unknowns: with `N`
    /// the non-final states, the row `z = e_initial (I - M_NN)^{-1}` gives
    /// `S = Σ_U z_U r_U` where `r_U` sums the arcs from `U` into final
    /// states. Every entry has denominator `1` or `1 - x`, so the transposed
    /// system is cleared by `1 - x` and solved without fractions.
    pub fn suffix_sum(&self) -> RatFun2 {
        let omx = Poly2::one_minus_x();
        let cleared = |e: &RatFun2| (e.num() * &omx).div_exact(e.den()).expect("entry denominator divides 1 - x");
        if self.finals[self.initial] {
            return RatFun2::one();
        }
        let live: Vec<usize> = (0..self.len()).filter(|&s| !self.finals[s]).collect();
        let n = live.len();
        let mut a = vec![vec![Poly2::zero(); n]; n];
        let mut exits = vec![Poly2::zero(); n];
        for (i, &si) in live.iter().enumerate() {
            for (j, &sj) in live.iter().enumerate() {
                let diag = if i == j { omx.clone() } else { Poly2::zero() };
                // transposed
                a[j][i] = diag - cleared(&self.entries[si][sj]);
            }
            for (t, e) in self.entries[si].iter().enumerate() {
                if self.finals[t] && !e.is_zero() {
                    exits[i] = &exits[i] + &cleared(e);
                }
            }
        }
        let mut b = vec![Poly2::zero(); n];
        b[live.iter().position(|&s| s == self.initial).expect("initial state is live")] = omx.clone();
        let (y, d) = solve_fraction_free(a, b);
        let mut num = Poly2::zero();
        for (yi, ri) in y.iter().zip(&exits) {
            if !yi.is_zero() && !ri.is_zero() {
                num = num + yi * ri;
            }
        }
        RatFun2::new(num, &d * &omx).expect("nonsingular system")
    }
}

/// Solves `a · x = b` over `ℤ[t, x]` by Bareiss elimination, pivoting on
/// the first nonzero entry of each column. Returns `(y, d)` with `x = y / d`.
/// Panics if `a` is singular.
pub fn solve_fraction_free(mut a: Vec<Vec<Poly2>>, mut b: Vec<Poly2>) -> (Vec<Poly2>, Poly2) {
    let n = a.len();
    let mut prev = Poly2::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).expect("singular system");
        if p != k {
            a.swap(p, k);
            b.swap(p, k);
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for (off, row) in rest.iter_mut().enumerate() {
            let i = k + 1 + off;
            let factor = row[k].clone();
            for j in k + 1..n {
                row[j] = bareiss_step(pivot, &row[j], &factor, &pivot_row[j], &prev);
            }
            b[i] = bareiss_step(pivot, &b[i], &factor, &b[k], &prev);
            row[k] = Poly2::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    let mut y = vec![Poly2::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &d * &b[i];
        for j in i + 1..n {
            if !a[i][j].is_zero() && !y[j].is_zero() {
                acc = acc - &a[i][j] * &y[j];
            }
        }
        y[i] = acc.div_exact(&a[i][i]).expect("fraction-free back substitution is exact");
    }
    (y, d)
}

/// `(p · x - f · q) / prev`, exact by Sylvester's identity.
fn bareiss_step(p: &Poly2, x: &Poly2, f: &Poly2, q: &Poly2, prev: &Poly2) -> Poly2 {
    cross_diff_div(p, x, f, q, prev).expect("Bareiss division is exact")
}

/// `F = (1 - x) S / (1 - x - t x)`.
pub fn factor_from_suffix(s: &RatFun2) -> RatFun2 {
    let omx = Poly2::one_minus_x();
    let den = &omx - &Poly2::monomial(1, 1, 1);
    (s * &RatFun2::new(omx, den).expect("nonzero")).simplify()
}

/// `A = (1 - x) / (1 - x - t x) - F`.
pub fn avoid_from_factor(f: &RatFun2) -> RatFun2 {
    let omx = Poly2::one_minus_x();
    let den = &omx - &Poly2::monomial(1, 1, 1);
    (&RatFun2::new(omx, den).expect("nonzero") - f).simplify()
}

fn from_suffix(s: RatFun2, stat: Stat) -> RatFun2 {
    match stat {
        Stat::S => s,
        Stat::F => factor_from_suffix(&s),
        Stat::A => avoid_from_factor(&factor_from_suffix(&s)),
    }
}

/// The weight generating function of `𝒮(u)`, `ℱ(u)` or `𝒜(u)`.
pub fn gen_function(u: &Composition, stat: Stat) -> Result<RatFun2> {
    let nfa = IntervalNfa::build_suffix(u)?;
    Ok(from_suffix(TransferMatrix::from_nfa(&nfa).suffix_sum().simplify(), stat))
}

/// As [`gen_function`] for a barred pattern.
pub fn pattern_gen_function(p: &Pattern, stat: Stat) -> Result<RatFun2> {
    let nfa = IntervalNfa::build_pattern(p)?;
    Ok(from_suffix(TransferMatrix::from_nfa(&nfa).suffix_sum().simplify(), stat))
}

/// Length generating function `Σ t^{|w|}` of the language of `u` over a
/// finite poset. The result only involves `t`.
pub fn finite_length_gf(u: &[usize], poset: &FinitePoset, stat: Stat) -> Result<RatFun2> {
    let nfa = FiniteNfa::build(u, poset, Stat::S)?;
    let n = nfa.num_states();
    let mut a = vec![vec![Poly2::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Poly2::one();
    }
    for s in 0..n {
        for letter in 0..nfa.alphabet_size() {
            if let Some(to) = nfa.step(s, letter) {
                // transposed: column s, row `to`
                a[to][s] = &a[to][s] - &Poly2::t();
            }
        }
    }
    let mut b = vec![Poly2::zero(); n];
    b[0] = Poly2::one();
    let (y, d) = solve_fraction_free(a, b);
    let num = (0..n).filter(|&s| nfa.is_final(s)).fold(Poly2::zero(), |acc, s| acc + y[s].clone());
    let s = RatFun2::new(num, d)?.simplify_with(&[Poly2::one() - Poly2::t()]);
    // Every word over k letters: 1 / (1 - k t); ℱ = 𝒮 · P*.
    let all_den = Poly2::one() - Poly2::monomial(poset.len() as i64, 1, 0);
    let star = RatFun2::new(Poly2::one(), all_den)?;
    Ok(match stat {
        Stat::S => s,
        Stat::F => &s * &star,
        Stat::A => &star - &(&s * &star),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::{parse_expr, series_expand};
    use num_traits::Zero;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn e(s: &str) -> RatFun2 {
        parse_expr(s).unwrap()
    }

    fn key(positions: &[usize]) -> StateKey {
        StateKey { block: 0, mask: positions.iter().map(|p| 1u64 << (p - 1)).sum() }
    }

    #[test]
    fn matrix_for_132() {
        let nfa = IntervalNfa::build_suffix(&c("132")).unwrap();
        let m = TransferMatrix::from_nfa(&nfa);
        let at = |from: &[usize], to: &[usize]| {
            m.entry(nfa.find_state(key(from)).unwrap(), nfa.find_state(key(to)).unwrap()).clone()
        };
        assert!(at(&[], &[1]).rat_eq(&e("t*x/(1-x)")));
        assert!(at(&[1], &[1]).rat_eq(&e("t*x + t*x^2")));
        assert!(at(&[1], &[1, 2]).rat_eq(&e("t*x^3/(1-x)")));
        assert!(at(&[1, 2], &[1]).rat_eq(&e("t*x")));
        assert!(at(&[1, 2], &[1, 3]).rat_eq(&e("t*x^2")));
        assert!(at(&[1, 2], &[1, 2, 3]).rat_eq(&e("t*x^3/(1-x)")));
        for row in [&[1, 3][..], &[1, 2, 3][..]] {
            let s = nfa.find_state(key(row)).unwrap();
            assert!((0..m.len()).all(|j| m.entry(s, j).is_zero()));
        }
    }

    #[test]
    fn single_one() {
        let s = gen_function(&c("1"), Stat::S).unwrap();
        assert!(s.rat_eq(&e("t*x/(1-x)")));
        let f = gen_function(&c("1"), Stat::F).unwrap();
        assert!(f.rat_eq(&e("t*x/(1-x-t*x)")));
        let a = gen_function(&c("1"), Stat::A).unwrap();
        let series = series_expand(&a, 8).unwrap();
        assert_eq!(series.entries().filter(|(_, v)| !v.is_zero()).count(), 1);
        assert_eq!(series.get(0, 0), 1.into());
    }

    #[test]
    fn suffix_123() {
        let s = gen_function(&c("123"), Stat::S).unwrap();
        assert!(s.rat_eq(&e("t^3*x^6/((1-x)^2*(1-x-t*x+t*x^3-t^2*x^4))")));
    }

    #[test]
    fn independent_of_state_order() {
        for u in ["132", "2143", "22", "3412"] {
            let m = TransferMatrix::from_nfa(&IntervalNfa::build_suffix(&c(u)).unwrap());
            let base = m.suffix_sum();
            let n = m.len();
            let reversed: Vec<usize> = (0..n).rev().collect();
            let rotated: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            assert!(m.reordered(&reversed).suffix_sum().rat_eq(&base), "{u}");
            assert!(m.reordered(&rotated).suffix_sum().rat_eq(&base), "{u}");
        }
    }

    #[test]
    fn finite_antichain_single_letter() {
        let p = FinitePoset::antichain(&["a", "b"]).unwrap();
        let s = finite_length_gf(&[0], &p, Stat::S).unwrap();
        assert!(s.rat_eq(&e("t/(1-t)")));
        let q = FinitePoset::antichain(&["a"]).unwrap();
        let a = finite_length_gf(&[0, 0], &q, Stat::A).unwrap();
        assert!(a.rat_eq(&e("1+t")));
    }
}
