//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p genfactor --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use common::{c, times_all_words, two_block_patterns};
use genfactor::automaton::{IntervalNfa, Pattern, Stat};
use genfactor::fixtures::{check_partition, check_series_rows, parse_fixture, Fixture};
use genfactor::mobius::{self, Alphabet, MobiusCache};
use genfactor::oracle::{avoid_diff_among, brute_pattern_series, brute_series, pattern_embeds, rearrangements};
use genfactor::polyrat::{parse_expr, series_expand};
use genfactor::strong::strong_refute;
use genfactor::transfer::{factor_from_suffix, gen_function, pattern_gen_function};
use genfactor::wilf::{bounded_words, closed_form_increasing, closed_form_one_k_b_l, wilf_equivalent, MnInstance};
use genfactor::Composition;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table2() -> Outcome {
    let Fixture::Series(rows) = parse_fixture(include_str!("../fixtures/table2.json")).map_err(|e| e.to_string())? else {
        return Err("table2.json is not a series table".into());
    };
    let checks = check_series_rows(&rows).map_err(|e| e.to_string())?;
    let bad: Vec<&str> = checks.iter().filter(|r| !r.matches).map(|r| r.u.as_str()).collect();
    ensure(bad.is_empty(), format!("mismatched rows: {bad:?}"))?;
    Ok(format!("{} words across the table rows", checks.len()))
}

fn table1() -> Outcome {
    let Fixture::Partition(classes) = parse_fixture(include_str!("../fixtures/table1.json")).map_err(|e| e.to_string())? else {
        return Err("table1.json is not a partition".into());
    };
    let words: usize = classes.iter().map(Vec::len).sum();
    ensure(words == 152, format!("fixture covers {words} permutations"))?;
    let check = check_partition(&classes).map_err(|e| e.to_string())?;
    ensure(check.matches, format!("computed {} classes, table has {}", check.computed.len(), classes.len()))?;
    let per_len = |n: usize| check.computed.iter().filter(|cl| cl[0].len() == n).count();
    Ok(format!("classes by length 2..5: {} + {} + {} + {}", per_len(2), per_len(3), per_len(4), per_len(5)))
}

fn displayed_functions() -> Outcome {
    let s123 = gen_function(&c("123"), Stat::S).map_err(|e| e.to_string())?;
    let s213 = gen_function(&c("213"), Stat::S).map_err(|e| e.to_string())?;
    let p123 = parse_expr("t^3*x^6/((1-x)^2*(1-x-t*x+t*x^3-t^2*x^4))").unwrap();
    let p213 = parse_expr("t^3*x^6*(1+t*x^3)/((1-x)*(1-x+t^2*x^4)*(1-x-t*x+t*x^3-t^2*x^4))").unwrap();
    ensure(s123.rat_eq(&p123), format!("S(123) = {s123}"))?;
    ensure(s213.rat_eq(&p213), format!("S(213) = {s213}"))?;
    ensure(!wilf_equivalent(&c("123"), &c("213")).unwrap(), "123 and 213 reported equivalent")?;
    Ok("S(123), S(213) match; 123 and 213 not equivalent".into())
}

fn closed_forms() -> Outcome {
    for n in 2..=6u32 {
        let u = Composition::new((1..=u64::from(n)).collect()).unwrap();
        let s = gen_function(&u, Stat::S).map_err(|e| e.to_string())?;
        ensure(closed_form_increasing(n).unwrap().rat_eq(&s), format!("increasing n = {n}"))?;
    }
    let mut count = 0;
    for k in 0..=2u32 {
        for b in 2..=4u32 {
            for l in 1..=3u32 {
                let mut parts = vec![1u64; k as usize];
                parts.extend(std::iter::repeat(u64::from(b)).take(l as usize));
                let s = gen_function(&Composition::new(parts).unwrap(), Stat::S).map_err(|e| e.to_string())?;
                ensure(closed_form_one_k_b_l(k, b, l).unwrap().rat_eq(&s), format!("1^{k} {b}^{l}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("n = 2..6 and {count} (k, b, l) triples"))
}

fn oracle_equivalence() -> Outcome {
    let words = bounded_words(4, 4);
    for u in &words {
        for stat in Stat::ALL {
            let r = gen_function(u, stat).map_err(|e| e.to_string())?;
            let series = series_expand(&r, 12).map_err(|e| e.to_string())?;
            ensure(series == brute_series(u, stat, 12), format!("{stat}({u}) disagrees with enumeration"))?;
        }
    }
    Ok(format!("{} words x 3 stats, norm <= 12", words.len()))
}

fn fsa_identities() -> Outcome {
    let words = bounded_words(4, 4);
    let omx = parse_expr("1-x").unwrap();
    let geo = parse_expr("(1-x)/(1-x-t*x)").unwrap();
    for u in &words {
        let s = gen_function(u, Stat::S).map_err(|e| e.to_string())?;
        let f = gen_function(u, Stat::F).map_err(|e| e.to_string())?;
        let a = gen_function(u, Stat::A).map_err(|e| e.to_string())?;
        let f_direct = (&(&omx * &s) * &parse_expr("1/(1-x-t*x)").unwrap()).simplify();
        ensure(f.rat_eq(&f_direct), format!("F({u}) != (1-x)S/(1-x-tx)"))?;
        ensure(a.rat_eq(&(&geo - &f)), format!("A({u}) != (1-x)/(1-x-tx) - F"))?;
        ensure(factor_from_suffix(&s).rat_eq(&f), format!("F({u}) route mismatch"))?;
        // F(u) = S(u) P*, checked on enumerated languages
        let conv = times_all_words(&brute_series(u, Stat::S, 12), 12);
        ensure(conv == brute_series(u, Stat::F, 12), format!("enumerated F({u}) != S({u}) P*"))?;
    }
    Ok(format!("{} words", words.len()))
}

fn strong_refutation() -> Outcome {
    let r = strong_refute(&c("2143"), &c("3412"), 22).map_err(|e| e.to_string())?.ok_or("no divergence found")?;
    let got = (r.em.clone(), r.length, r.norm, r.count_u, r.count_v);
    ensure(got == (vec![1, 3, 4], 7, 21, 1, 0), format!("got {got:?}"))?;
    Ok(format!("cell {got:?}"))
}

fn mn_example() -> Outcome {
    let inst = MnInstance::from_pair(&c("1352463"), &c("1362453")).map_err(|e| e.to_string())?;
    let w = Composition::new(vec![1, 1, 2, 4, 8, 3, 9, 5, 4, 5, 5, 4, 5, 5, 3, 3, 3, 6, 6, 5, 5, 3]).unwrap();
    let img = inst.forward(&w).map_err(|e| e.to_string())?;
    let expected = vec![1, 1, 2, 4, 5, 3, 5, 5, 4, 5, 5, 4, 9, 8, 3, 3, 3, 5, 6, 5, 6, 3];
    ensure(img.word == expected, format!("image {:?}", img.word))?;
    ensure(img.eta == vec![5, 7, 18], format!("eta {:?}", img.eta))?;
    ensure(img.strings.first() == Some(&vec![5, 8, 11, 14]), format!("strings {:?}", img.strings))?;
    let back = inst.backward(&Composition::new(img.word.clone()).unwrap()).map_err(|e| e.to_string())?;
    ensure(back.word == w.parts(), "backward does not invert forward")?;
    Ok("image, eta and first string match; round trip ok".into())
}

fn mobius_checks() -> Outcome {
    let ab = Alphabet::new("ab").unwrap();
    let cache = MobiusCache::new();
    let mut pairs = 0;
    for len in 0..=8 {
        for w in ab.words_of_length(len) {
            for u in mobius::interval(&ab.parse("").unwrap(), &w).unwrap() {
                let m = cache.mobius(&u, &w);
                let o = mobius::mobius_oracle(&u, &w).unwrap();
                ensure(i64::from(m) == o, format!("mu({u}, {w}) = {m}, oracle {o}"))?;
                pairs += 1;
            }
        }
    }
    ensure(cache.mobius(&ab.parse("b").unwrap(), &ab.parse("abbaabb").unwrap()) == 1, "mu(b, abbaabb) != 1")?;
    for n in 1..=6 {
        let (z, m) = mobius::non_regularity_witness(n, 0).unwrap();
        ensure(m == 1, format!("mu(a, {z}) = {m}"))?;
        for j in 1..n {
            let (z, m) = mobius::non_regularity_witness(n, j).unwrap();
            ensure(m == 0, format!("mu(a, {z}) = {m}"))?;
        }
    }
    Ok(format!("{pairs} pairs agree with the oracle; witness family holds"))
}

fn difference_sets() -> Outcome {
    let (du, dv) = avoid_diff_among(&c("231"), &c("321"), rearrangements(&c("1223")));
    let du: BTreeSet<String> = du.iter().map(|w| w.to_string()).collect();
    let dv: BTreeSet<String> = dv.iter().map(|w| w.to_string()).collect();
    let pu: BTreeSet<String> = ["1322", "3212", "3221"].map(String::from).into();
    let pv: BTreeSet<String> = ["1232", "2313", "2231"].map(String::from).into();
    ensure(du == pu && dv == pv, format!("computed {du:?} and {dv:?}, printed {pu:?} and {pv:?}"))?;
    Ok("both sets match".into())
}

fn conjecture() -> Outcome {
    let mut n = 0;
    for a in 2..=3u64 {
        for b in 2..=3u64 {
            for cc in 2..=3u64 {
                let l = Composition::new(vec![a, 1, b, 2, cc]).unwrap();
                let r = Composition::new(vec![a, 2, b, 1, cc]).unwrap();
                ensure(wilf_equivalent(&l, &r).map_err(|e| e.to_string())?, format!("COUNTEREXAMPLE: {l} vs {r}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples equivalent (evidence only)"))
}

fn pattern_pipeline() -> Outcome {
    let patterns = two_block_patterns(4, 3);
    for p in &patterns {
        for stat in Stat::ALL {
            let r = pattern_gen_function(p, stat).map_err(|e| e.to_string())?;
            let series = series_expand(&r, 10).map_err(|e| e.to_string())?;
            ensure(series == brute_pattern_series(p, stat, 10), format!("{stat}({p}) disagrees with enumeration"))?;
        }
    }
    let p: Pattern = "[3,2],4".parse().unwrap();
    ensure(pattern_embeds(&p, &c("14235")), "[3,2],4 not found in 14235 by enumeration")?;
    let nfa = IntervalNfa::build_pattern(&p).unwrap().derive_factor();
    ensure(nfa.accepts(&c("14235")), "[3,2],4 not found in 14235 by the automaton")?;
    Ok(format!("{} patterns x 3 stats, norm <= 10; example detected", patterns.len()))
}

/// Criteria that cannot pass as written; see the project notes. They still
/// run and print FAIL, and an unexpected PASS is an error.
const KNOWN_UNATTAINABLE: &[usize] = &[10];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("table 2 generating functions", table2),
        ("table 1 permutation classes", table1),
        ("displayed S(123), S(213)", displayed_functions),
        ("closed forms", closed_forms),
        ("oracle equivalence", oracle_equivalence),
        ("F/S/A identities", fsa_identities),
        ("strong Wilf refutation 2143 / 3412", strong_refutation),
        ("mn bijection worked example", mn_example),
        ("Moebius function", mobius_checks),
        ("avoidance difference sets", difference_sets),
        ("a1b2c / a2b1c evidence", conjecture),
        ("barred pattern pipeline", pattern_pipeline),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        match outcome {
            Ok(detail) => {
                println!("PASS {id:>2} {name} ({secs:.1}s): {detail}");
                if known {
                    println!("     criterion {id} was expected to fail");
                    unexpected += 1;
                }
            }
            Err(reason) => {
                println!("FAIL {id:>2} {name} ({secs:.1}s): {reason}");
                if known {
                    println!("     known: the printed set contains a word that is not a rearrangement of 1223");
                } else {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
