//! Exhaustive agreement between the symbolic pipelines and enumeration.

mod common;

use std::collections::{BTreeSet, HashSet};

use common::c;
use genfactor::automaton::{FiniteNfa, IntervalNfa, Pattern, Stat};
use genfactor::oracle::{brute_avoid_diff, enumerate_words, in_language, EnumerationSpec};
use genfactor::poset::FinitePoset;
use genfactor::polyrat::{series_expand, series_expand_box};
use genfactor::strong::{census, minimal_word_for_indices, strong_refute};
use genfactor::transfer::{finite_length_gf, gen_function};
use genfactor::wilf::{bounded_words, MnInstance};
use genfactor::word::embedding_indices;
use genfactor::Composition;
use num_bigint::BigInt;

fn words(norm_bound: u64) -> Vec<Composition> {
    enumerate_words(EnumerationSpec::up_to(norm_bound)).collect()
}

#[test]
fn suffix_automaton_state_semantics() {
    let ws = words(10);
    for u in bounded_words(4, 4) {
        let nfa = IntervalNfa::build_suffix(&u).unwrap();
        let up = u.parts();
        for w in &ws {
            let wp = w.parts();
            let sim = nfa.simulate(w);
            for (m, &state) in sim.trace.iter().enumerate() {
                let expected: Vec<usize> =
                    (1..=up.len().min(m)).filter(|&t| (0..t).all(|i| up[i] <= wp[m - t + i])).collect();
                assert_eq!(nfa.states()[state].positions(), expected, "u = {u}, w = {w}, step {m}");
            }
            let em = embedding_indices(&u, w).unwrap();
            assert_eq!(sim.accepted, w.len() >= u.len() && em == vec![w.len() + 1 - u.len()], "u = {u}, w = {w}");
            assert_eq!(nfa.derive_avoid().accepts(w), em.is_empty(), "u = {u}, w = {w}");
        }
    }
}

#[test]
fn suffix_automaton_is_letter_complete() {
    for u in bounded_words(4, 4) {
        let nfa = IntervalNfa::build_suffix(&u).unwrap();
        assert!(nfa.is_letter_complete(), "u = {u}");
        for s in 0..nfa.num_states() {
            if nfa.is_final(s) {
                assert!(nfa.arcs_from(s).is_empty());
                continue;
            }
            for a in 1..=u.max_part().unwrap() + 2 {
                assert_eq!(nfa.arcs_from(s).iter().filter(|arc| arc.label.contains(a)).count(), 1);
            }
        }
    }
}

#[test]
fn single_block_patterns_match_suffix_automata() {
    let ws = words(9);
    for u in bounded_words(3, 3) {
        let p = Pattern::single(u.clone()).unwrap();
        let a = IntervalNfa::build_pattern(&p).unwrap();
        let b = IntervalNfa::build_suffix(&u).unwrap();
        for w in &ws {
            assert_eq!(a.accepts(w), b.accepts(w));
        }
    }
}

#[test]
fn census_matches_factor_series() {
    for u in bounded_words(4, 4) {
        let cen = census(&u, 12).unwrap();
        let f = series_expand(&gen_function(&u, Stat::F).unwrap(), 12).unwrap();
        for n in 1..=12 {
            for l in 1..=n {
                assert_eq!(BigInt::from(cen.containing(l, n)), f.get(l, n), "u = {u} at t^{l} x^{n}");
            }
        }
    }
}

#[test]
fn minimal_words_have_minimal_norm() {
    let ws = words(12);
    for u in bounded_words(3, 3) {
        let len = u.len();
        let positions: Vec<usize> = (1..=3).collect();
        for mask in 1u32..8 {
            let set: BTreeSet<usize> = positions.iter().copied().filter(|&j| mask >> (j - 1) & 1 == 1).collect();
            let m = minimal_word_for_indices(&u, &set).unwrap();
            let target_len = set.last().unwrap() + len - 1;
            let best = ws
                .iter()
                .filter(|w| w.len() == target_len)
                .filter(|w| {
                    let em: BTreeSet<usize> = embedding_indices(&u, w).unwrap().into_iter().collect();
                    set.is_subset(&em)
                })
                .map(|w| w.norm())
                .min();
            if m.word.norm() <= 12 {
                assert_eq!(best, Some(m.word.norm()), "u = {u}, E = {set:?}");
            } else {
                assert!(best.is_none());
            }
        }
    }
}

#[test]
fn known_strong_equivalences_agree() {
    let pairs = [("12", "21"), ("123", "132"), ("123", "231"), ("123", "321"), ("112", "121"), ("1122", "2211")];
    for (u, v) in pairs {
        assert_eq!(strong_refute(&c(u), &c(v), 14).unwrap(), None, "{u} vs {v}");
    }
    assert!(strong_refute(&c("123"), &c("213"), 10).unwrap().is_some());
}

#[test]
fn mn_bijection_on_small_slices() {
    for (u, v) in [("231", "321"), ("12", "21"), ("1324", "1423"), ("1213", "1312"), ("12213", "13212")] {
        let inst = MnInstance::from_pair(&c(u), &c(v)).unwrap();
        let (only_u, only_v) = brute_avoid_diff(&c(u), &c(v), 12);
        let images: HashSet<Composition> = only_u
            .iter()
            .map(|w| {
                let img = Composition::new(inst.forward(w).unwrap().word).unwrap();
                assert_eq!(img.weight(), w.weight());
                assert_eq!(Composition::new(inst.backward(&img).unwrap().word).unwrap(), *w);
                img
            })
            .collect();
        assert_eq!(images.len(), only_u.len());
        assert_eq!(images, only_v.into_iter().collect(), "{u} vs {v}");
    }
}

fn finite_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w: &Vec<usize>| (0..k).map(move |a| [w.clone(), vec![a]].concat())).collect();
        all.extend(layer.iter().cloned());
    }
    all
}

#[test]
fn finite_poset_length_series() {
    let posets = [
        FinitePoset::antichain(&["a", "b"]).unwrap(),
        FinitePoset::from_covers(&["1", "2"], &[("1", "2")]).unwrap(),
        FinitePoset::from_covers(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap(),
    ];
    for poset in &posets {
        let k = poset.len();
        let ws = finite_words(k, 7);
        for u in finite_words(k, 3).into_iter().filter(|u| !u.is_empty()) {
            for stat in Stat::ALL {
                let series = series_expand_box(&finite_length_gf(&u, poset, stat).unwrap(), 7, 0).unwrap();
                let nfa = FiniteNfa::build(&u, poset, stat).unwrap();
                for l in 0..=7u64 {
                    let brute = ws
                        .iter()
                        .filter(|w| w.len() as u64 == l)
                        .filter(|w| {
                            let em: Vec<usize> = (0..(w.len() + 1).saturating_sub(u.len()))
                                .filter(|&j| u.iter().zip(&w[j..]).all(|(&a, &b)| poset.leq(a, b)))
                                .collect();
                            match stat {
                                Stat::S => w.len() >= u.len() && em == vec![w.len() - u.len()],
                                Stat::F => !em.is_empty(),
                                Stat::A => em.is_empty(),
                            }
                        })
                        .count();
                    assert_eq!(series.get(l, 0), BigInt::from(brute), "u = {u:?}, {stat}, length {l}");
                    let by_nfa = ws.iter().filter(|w| w.len() as u64 == l && nfa.accepts(w)).count();
                    assert_eq!(by_nfa, brute);
                }
            }
        }
    }
}

#[test]
fn membership_oracle_agrees_with_automata() {
    let ws = words(9);
    for u in bounded_words(3, 3) {
        let s = IntervalNfa::build_suffix(&u).unwrap();
        let f = s.derive_factor();
        let a = s.derive_avoid();
        for w in &ws {
            assert_eq!(s.accepts(w), in_language(&u, w, Stat::S));
            assert_eq!(f.accepts(w), in_language(&u, w, Stat::F));
            assert_eq!(a.accepts(w), in_language(&u, w, Stat::A));
        }
    }
}
