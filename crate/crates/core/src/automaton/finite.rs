use std::collections::{HashMap, VecDeque};

use super::Stat;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Subset automaton for a word over a finite poset, with one explicit arc
/// per letter. Letters and states are indices; the initial state is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteNfa {
    masks: Vec<u64>,
    finals: Vec<bool>,
    /// `delta[s][a]`, `None` when the state has no outgoing arcs.
    delta: Vec<Vec<Option<usize>>>,
    alphabet: usize,
}

impl FiniteNfa {
    pub fn build(u: &[usize], poset: &FinitePoset, stat: Stat) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        if u.len() > 63 {
            return Err(Error::InvalidParameter(format!("word length {} exceeds 63", u.len())));
        }
        if let Some(&bad) = u.iter().find(|&&a| a >= poset.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        let n = poset.len();
        let full_bit = 1u64 << (u.len() - 1);
        let mut masks = vec![0u64];
        let mut index = HashMap::from([(0u64, 0usize)]);
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let mask = masks[s];
            if mask & full_bit != 0 {
                continue;
            }
            for a in 0..n {
                let mut next = u64::from(poset.leq(u[0], a));
                for t in 1..u.len() {
                    if mask >> (t - 1) & 1 == 1 && poset.leq(u[t], a) {
                        next |= 1 << t;
                    }
                }
                let to = *index.entry(next).or_insert_with(|| {
                    masks.push(next);
                    delta.push(vec![None; n]);
                    queue.push_back(masks.len() - 1);
                    masks.len() - 1
                });
                delta[s][a] = Some(to);
            }
        }
        let mut finals: Vec<bool> = masks.iter().map(|m| m & full_bit != 0).collect();
        if stat != Stat::S {
            for s in 0..masks.len() {
                if finals[s] {
                    delta[s] = vec![Some(s); n];
                }
            }
        }
        if stat == Stat::A {
            finals.iter_mut().for_each(|f| *f = !*f);
        }
        Ok(FiniteNfa { masks, finals, delta, alphabet: n })
    }

    pub fn num_states(&self) -> usize {
        self.masks.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    /// The subset `T` of state `s`, as 1-based positions.
    pub fn positions(&self, s: usize) -> Vec<usize> {
        (0..64).filter(|b| self.masks[s] >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn step(&self, s: usize, a: usize) -> Option<usize> {
        self.delta[s].get(a).copied().flatten()
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut cur = 0;
        for &a in w {
            match self.step(cur, a) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        self.finals[cur]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(names: &[&str]) -> FinitePoset {
        FinitePoset::antichain(names).unwrap()
    }

    #[test]
    fn suffix_ab_over_antichain() {
        let p = antichain(&["a", "b"]);
        let u = p.parse_word("ab").unwrap();
        let s = FiniteNfa::build(&u, &p, Stat::S).unwrap();
        for (w, want) in [("ab", true), ("bab", true), ("abb", false), ("abab", false), ("aab", true), ("ba", false)] {
            assert_eq!(s.accepts(&p.parse_word(w).unwrap()), want, "{w}");
        }
    }

    #[test]
    fn every_power_of_a_contains_a() {
        let p = antichain(&["a"]);
        let f = FiniteNfa::build(&[0], &p, Stat::F).unwrap();
        for n in 1..6 {
            assert!(f.accepts(&vec![0; n]));
        }
        assert!(!f.accepts(&[]));
    }

    #[test]
    fn two_chain_factor() {
        let p = FinitePoset::from_covers(&["1", "2"], &[("1", "2")]).unwrap();
        let u = p.parse_word("2").unwrap();
        let f = FiniteNfa::build(&u, &p, Stat::F).unwrap();
        let a = FiniteNfa::build(&u, &p, Stat::A).unwrap();
        assert!(!f.accepts(&p.parse_word("111").unwrap()));
        assert!(f.accepts(&p.parse_word("1211").unwrap()));
        assert!(a.accepts(&p.parse_word("111").unwrap()));
    }

    #[test]
    fn agrees_with_direct_containment() {
        let p = FinitePoset::from_covers(&["a", "b", "c"], &[("a", "c")]).unwrap();
        let u = p.parse_word("ca").unwrap();
        let f = FiniteNfa::build(&u, &p, Stat::F).unwrap();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &words {
                assert_eq!(f.accepts(w), p.embeds(&u, w), "{w:?}");
                for a in 0..3 {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words = next;
        }
    }

    #[test]
    fn unknown_letter() {
        let p = antichain(&["a"]);
        assert!(matches!(FiniteNfa::build(&[3], &p, Stat::S), Err(Error::UnknownElement(_))));
    }
}
