use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use genfactor::automaton::{IntervalNfa, Pattern, Stat};
use genfactor::fixtures::{check_partition, check_series_rows, parse_fixture, Fixture};
use genfactor::mobius::{self, Alphabet, MobiusCache};
use genfactor::poset::FinitePoset;
use genfactor::polyrat::{series_expand, series_expand_box, RatFun2};
use genfactor::strong::registry::Registry;
use genfactor::strong::witness::validate;
use genfactor::strong::{minimal_word_for_indices, strong_refute};
use genfactor::transfer::{finite_length_gf, gen_function, pattern_gen_function};
use genfactor::wilf::{
    bounded_words, check_conjecture, classify, closed_form_increasing, closed_form_one_k_b_l, permutations,
    wilf_equivalent, MnInstance,
};
use genfactor::{Composition, Error};

#[derive(Parser)]
#[command(name = "genfactor", version, about = "Generalized factor order: generating functions, Wilf classes, Moebius values")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generating function S, F or A of a composition.
    Gf {
        #[arg(long, default_value = "S")]
        stat: Stat,
        #[arg(short)]
        u: String,
        /// Also expand the series up to this norm.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=60))]
        series: Option<u64>,
        /// Also print the suffix automaton.
        #[arg(long)]
        dump_nfa: bool,
    },
    /// Decide Wilf equivalence of two compositions.
    Wilf {
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
    },
    /// Partition a set of compositions into Wilf classes.
    Classify(ClassifyArgs),
    /// Compare embedding-index censuses up to a norm bound.
    Strongwilf {
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=26))]
        bound: u64,
    },
    /// Column-maximum word with prescribed embedding indices.
    Minword {
        #[arg(short)]
        u: String,
        /// Comma-separated 1-based indices.
        #[arg(long)]
        indices: String,
    },
    /// Moebius function of ordinary factor order.
    Mobius {
        #[arg(long)]
        alphabet: String,
        #[arg(short)]
        u: String,
        #[arg(short)]
        w: String,
        /// Also list the interval [u, w] by length.
        #[arg(long)]
        interval: bool,
    },
    /// Generating function of a barred pattern such as "1,[1,3,3],2".
    Pattern {
        #[arg(short)]
        p: String,
        #[arg(long, default_value = "S")]
        stat: Stat,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=60))]
        series: Option<u64>,
    },
    /// Length generating function over a finite poset read from JSON.
    Poset {
        #[arg(long)]
        file: PathBuf,
        #[arg(short)]
        u: String,
        #[arg(long, default_value = "S")]
        stat: Stat,
        /// Also expand up to this length.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=60))]
        series: Option<u64>,
    },
    /// Check a fixture of generating functions or of permutation classes.
    VerifyTables {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Compare both closed forms with the automaton pipeline.
    VerifyClosedForms {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=9))]
        max_n: u32,
    },
    /// Test a1b2c ~ a2b1c for all a, b, c in a range.
    CheckConjecture {
        /// Inclusive range such as 2..3.
        #[arg(long)]
        range: String,
    },
    /// Apply the xmynz / xnymz bijection to a word.
    Mn {
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
        #[arg(short)]
        w: String,
        #[arg(long)]
        backward: bool,
    },
    /// Build a witness from a spec like "interleave(2, matched(12, 21, 10))" and validate it.
    Witness {
        #[arg(long, required_unless_present = "list")]
        spec: Option<String>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=20))]
        bound: u64,
        /// Apply the witness to this word instead of validating.
        #[arg(long)]
        apply: Option<String>,
        /// List the registered witness constructors.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct ClassifyArgs {
    /// All permutations of 1..N.
    #[arg(long, conflicts_with_all = ["maxlen", "maxpart"], value_parser = clap::value_parser!(u64).range(1..=7))]
    perms: Option<u64>,
    #[arg(long, requires = "maxpart", value_parser = clap::value_parser!(u64).range(1..=6))]
    maxlen: Option<u64>,
    #[arg(long, requires = "maxlen", value_parser = clap::value_parser!(u64).range(1..=9))]
    maxpart: Option<u64>,
}

/// A failure reported on one line; `arg` names the offending argument.
struct Failure {
    arg: Option<&'static str>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { arg: None, error }
    }
}

fn at(arg: &'static str) -> impl Fn(Error) -> Failure {
    move |error| Failure { arg: Some(arg), error }
}

fn word(arg: &'static str, s: &str) -> Result<Composition, Failure> {
    let w: Composition = s.parse().map_err(at(arg))?;
    if w.is_empty() {
        return Err(Failure { arg: Some(arg), error: Error::EmptyWord });
    }
    Ok(w)
}

/// What a command produced: text and JSON renderings plus whether the
/// checked property held (`false` exits with status 1).
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn gf_json(r: &RatFun2) -> Value {
    json!({ "num": r.num().to_string(), "den": r.den().to_string(), "expr": r.to_string() })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Gf { stat, u, series, dump_nfa } => {
            let u = word("-u", u)?;
            let r = gen_function(&u, *stat)?;
            let mut text = r.to_string();
            let mut out = json!({ "u": u.to_string(), "stat": stat.to_string(), "gf": gf_json(&r) });
            if let Some(n) = series {
                let s = series_expand(&r, *n)?;
                text += &format!("\n{}", serde_json::to_string(&s).expect("serializable"));
                out["series"] = serde_json::to_value(&s).expect("serializable");
            }
            if *dump_nfa {
                let nfa = IntervalNfa::build_suffix(&u)?;
                let nfa = match stat {
                    Stat::S => nfa,
                    Stat::F => nfa.derive_factor(),
                    Stat::A => nfa.derive_avoid(),
                };
                let dump = serde_json::to_value(nfa.dump()).expect("serializable");
                text += &format!("\n{dump}");
                out["nfa"] = dump;
            }
            Ok(Report::ok(text, out))
        }
        Command::Wilf { u, v } => {
            let (u, v) = (word("-u", u)?, word("-v", v)?);
            let eq = wilf_equivalent(&u, &v)?;
            let text = if eq { "equivalent" } else { "NOT equivalent" };
            let out = json!({
                "u": u.to_string(),
                "v": v.to_string(),
                "equivalent": eq,
                "S_u": gen_function(&u, Stat::S)?.to_string(),
                "S_v": gen_function(&v, Stat::S)?.to_string(),
            });
            Ok(Report::ok(text.into(), out))
        }
        Command::Classify(args) => {
            let words = match (args.perms, args.maxlen, args.maxpart) {
                (Some(n), _, _) => permutations(n),
                (None, Some(l), Some(m)) => bounded_words(l as usize, m),
                _ => unreachable!("clap enforces the argument groups"),
            };
            let records = classify(&words)?.records();
            let text = records.iter().map(|r| format!("{}: {}", r.members.join(" "), r.s)).collect::<Vec<_>>().join("\n");
            Ok(Report::ok(text, serde_json::to_value(&records).expect("serializable")))
        }
        Command::Strongwilf { u, v, bound } => {
            let (u, v) = (word("-u", u)?, word("-v", v)?);
            let out = match strong_refute(&u, &v, *bound)? {
                Some(r) => json!({ "u": u.to_string(), "v": v.to_string(), "bound": bound, "witness": r }),
                None => json!({
                    "u": u.to_string(),
                    "v": v.to_string(),
                    "bound": bound,
                    "witness": null,
                    "message": format!("no divergence up to bound {bound}"),
                }),
            };
            Ok(Report::ok(out.to_string(), out))
        }
        Command::Minword { u, indices } => {
            let u = word("-u", u)?;
            let set = indices
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<BTreeSet<usize>, _>>()
                .map_err(|_| Failure { arg: Some("--indices"), error: Error::BadIndexSet })?;
            let m = minimal_word_for_indices(&u, &set).map_err(at("--indices"))?;
            let text = format!("{} ({})", m.word, if m.exact { "exact" } else { "superset" });
            let out = json!({ "u": u.to_string(), "word": m.word.to_string(), "norm": m.word.norm(), "exact": m.exact });
            Ok(Report::ok(text, out))
        }
        Command::Mobius { alphabet, u, w, interval } => {
            let ab = Alphabet::new(alphabet).map_err(at("--alphabet"))?;
            let u = ab.parse(u).map_err(at("-u"))?;
            let w = ab.parse(w).map_err(at("-w"))?;
            let m = MobiusCache::new().mobius(&u, &w);
            let mut text = m.to_string();
            let mut out = json!({ "u": u.to_string(), "w": w.to_string(), "mu": m });
            if *interval {
                let elems = mobius::interval(&u, &w).map_err(at("-u"))?;
                let mut levels: Vec<Vec<String>> = Vec::new();
                for z in &elems {
                    let level = z.len() - u.len();
                    if levels.len() <= level {
                        levels.resize(level + 1, Vec::new());
                    }
                    levels[level].push(z.to_string());
                }
                for (i, level) in levels.iter().enumerate() {
                    text += &format!("\n{}: {}", u.len() + i, level.join(" "));
                }
                out["interval"] = json!(levels);
            }
            Ok(Report::ok(text, out))
        }
        Command::Pattern { p, stat, series } => {
            let pat: Pattern = p.parse().map_err(at("-p"))?;
            let r = pattern_gen_function(&pat, *stat)?;
            let mut text = r.to_string();
            let mut out = json!({ "pattern": pat.to_string(), "stat": stat.to_string(), "gf": gf_json(&r) });
            if let Some(n) = series {
                let s = series_expand(&r, *n)?;
                text += &format!("\n{}", serde_json::to_string(&s).expect("serializable"));
                out["series"] = serde_json::to_value(&s).expect("serializable");
            }
            Ok(Report::ok(text, out))
        }
        Command::Poset { file, u, stat, series } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Failure { arg: Some("--file"), error: Error::Malformed(format!("{}: {e}", file.display())) })?;
            let poset = FinitePoset::from_json(&text).map_err(at("--file"))?;
            let letters = poset.parse_word(u).map_err(at("-u"))?;
            if letters.is_empty() {
                return Err(Failure { arg: Some("-u"), error: Error::EmptyWord });
            }
            let r = finite_length_gf(&letters, &poset, *stat)?;
            let mut text = r.to_string();
            let mut out = json!({ "u": u, "stat": stat.to_string(), "gf": gf_json(&r) });
            if let Some(n) = series {
                let s = series_expand_box(&r, *n, 0)?;
                let counts: Vec<String> = (0..=*n).map(|l| s.get(l, 0).to_string()).collect();
                text += &format!("\n{}", counts.join(" "));
                out["counts_by_length"] = json!(counts);
            }
            Ok(Report::ok(text, out))
        }
        Command::VerifyTables { fixture } => {
            let text = fs::read_to_string(fixture)
                .map_err(|e| Failure { arg: Some("--fixture"), error: Error::Malformed(format!("{}: {e}", fixture.display())) })?;
            match parse_fixture(&text).map_err(at("--fixture"))? {
                Fixture::Series(rows) => {
                    let checks = check_series_rows(&rows)?;
                    let ok = checks.iter().all(|c| c.matches);
                    let lines: Vec<String> =
                        checks.iter().map(|c| format!("{} {}", if c.matches { "ok  " } else { "FAIL" }, c.u)).collect();
                    Ok(Report { text: lines.join("\n"), json: serde_json::to_value(&checks).expect("serializable"), ok })
                }
                Fixture::Partition(classes) => {
                    let check = check_partition(&classes)?;
                    let text = format!(
                        "{}: {} classes expected, {} computed",
                        if check.matches { "ok" } else { "FAIL" },
                        check.expected.len(),
                        check.computed.len()
                    );
                    Ok(Report { text, ok: check.matches, json: serde_json::to_value(&check).expect("serializable") })
                }
            }
        }
        Command::VerifyClosedForms { max_n } => {
            let mut rows = Vec::new();
            for n in 2..=*max_n {
                let u = Composition::new((1..=u64::from(n)).collect())?;
                let ok = closed_form_increasing(n)?.rat_eq(&gen_function(&u, Stat::S)?);
                rows.push(json!({ "u": u.to_string(), "matches": ok }));
            }
            for k in 0..=2u32 {
                for b in 2..=4u32 {
                    for l in 1..=3u32 {
                        let mut parts = vec![1u64; k as usize];
                        parts.extend(std::iter::repeat(u64::from(b)).take(l as usize));
                        let u = Composition::new(parts)?;
                        let ok = closed_form_one_k_b_l(k, b, l)?.rat_eq(&gen_function(&u, Stat::S)?);
                        rows.push(json!({ "u": u.to_string(), "matches": ok }));
                    }
                }
            }
            let ok = rows.iter().all(|r| r["matches"] == json!(true));
            let text = rows
                .iter()
                .map(|r| format!("{} {}", if r["matches"] == json!(true) { "ok  " } else { "FAIL" }, r["u"].as_str().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report { text, json: json!(rows), ok })
        }
        Command::CheckConjecture { range } => {
            let bad = || Failure { arg: Some("--range"), error: Error::InvalidParameter(format!("expected A..B, got {range:?}")) };
            let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if hi > 9 {
                return Err(bad());
            }
            let cases = check_conjecture(lo, hi).map_err(at("--range"))?;
            let ok = cases.iter().all(|c| c.equivalent);
            let text = cases
                .iter()
                .map(|c| format!("{} {} ~ {}", if c.equivalent { "ok  " } else { "COUNTEREXAMPLE" }, c.left, c.right))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report { text, json: serde_json::to_value(&cases).expect("serializable"), ok })
        }
        Command::Mn { u, v, w, backward } => {
            let inst = MnInstance::from_pair(&word("-u", u)?, &word("-v", v)?).map_err(at("-u"))?;
            let w = word("-w", w)?;
            let img = if *backward { inst.backward(&w) } else { inst.forward(&w) }.map_err(at("-w"))?;
            let image = Composition::new(img.word.clone())?;
            let text = format!("{image}\neta: {:?}\nstrings: {:?}", img.eta, img.strings);
            Ok(Report::ok(text, json!({ "word": image.to_string(), "eta": img.eta, "strings": img.strings })))
        }
        Command::Witness { spec, bound, apply, list } => {
            let registry = Registry::default();
            if *list {
                let names: Vec<Value> = registry.names().map(|(n, u)| json!({ "name": n, "usage": u })).collect();
                let text = registry.names().map(|(_, u)| u).collect::<Vec<_>>().join("\n");
                return Ok(Report::ok(text, json!(names)));
            }
            let spec = spec.as_deref().expect("clap requires --spec without --list");
            let g = registry.build(spec).map_err(at("--spec"))?;
            let (u, v) = g.pair();
            if let Some(w) = apply {
                let w: Composition = w.parse().map_err(at("--apply"))?;
                let image = g.apply(&w).map_err(at("--apply"))?;
                let out = json!({ "witness": g.describe(), "u": u.to_string(), "v": v.to_string(), "input": w.to_string(), "image": image.to_string() });
                return Ok(Report::ok(image.to_string(), out));
            }
            let report = validate(g.as_ref(), *bound);
            let text = match &report.failure {
                None => format!("{}: witnesses {} ~ {} ({:?}), {} words checked", report.witness, u, v, report.kind, report.words_checked),
                Some((w, why)) => format!("{}: FAILS at {w}: {why}", report.witness),
            };
            let ok = report.passed();
            Ok(Report { text, json: serde_json::to_value(&report).expect("serializable"), ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                println!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure { arg, error }) => {
            match arg {
                Some(a) => eprintln!("error: {a}: {error}"),
                None => eprintln!("error: {error}"),
            }
            ExitCode::from(1)
        }
    }
}
