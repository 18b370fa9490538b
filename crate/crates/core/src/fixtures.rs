//! Reference tables stored as JSON: generating-function rows
//! `[{"u": "...", "S": "expr"}, ...]` and class partitions
//! `[["12", "21"], ...]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automaton::Stat;
use crate::error::{Error, Result};
use crate::polyrat::parse_expr;
use crate::transfer::gen_function;
use crate::wilf::{classify, permutations};
use crate::word::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub u: String,
    #[serde(rename = "S")]
    pub s: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Fixture {
    // Tried first: a row struct would also accept a two-element array.
    Partition(Vec<Vec<String>>),
    Series(Vec<TableRow>),
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("fixture: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub u: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// Computes `S(u)` for every row and compares with the stored expression.
pub fn check_series_rows(rows: &[TableRow]) -> Result<Vec<RowCheck>> {
    rows.par_iter()
        .map(|row| {
            let u: Composition = row.u.parse()?;
            let expected = parse_expr(&row.s)?;
            let computed = gen_function(&u, Stat::S)?;
            Ok(RowCheck { u: row.u.clone(), expected: row.s.clone(), matches: computed.rat_eq(&expected), computed: computed.to_string() })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionCheck {
    pub expected: Vec<Vec<String>>,
    pub computed: Vec<Vec<String>>,
    pub matches: bool,
}

/// Classifies the permutations of every length occurring in the expected
/// partition and compares class memberships, ignoring order.
pub fn check_partition(expected: &[Vec<String>]) -> Result<PartitionCheck> {
    let mut lengths: Vec<u64> = expected.iter().flatten().map(|w| w.len() as u64).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let words: Vec<Composition> = lengths.iter().flat_map(|&n| permutations(n)).collect();
    let computed = classify(&words)?.partition();
    let normalize = |p: &[Vec<String>]| {
        let mut classes: Vec<Vec<String>> = p
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort();
                c
            })
            .collect();
        classes.sort();
        classes
    };
    let matches = normalize(expected) == normalize(&computed);
    Ok(PartitionCheck { expected: expected.to_vec(), computed, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        assert!(matches!(parse_fixture(r#"[{"u":"1","S":"t*x/(1-x)"}]"#).unwrap(), Fixture::Series(_)));
        assert!(matches!(parse_fixture(r#"[["12","21"]]"#).unwrap(), Fixture::Partition(_)));
        assert!(parse_fixture("{").is_err());
    }

    #[test]
    fn small_checks() {
        let rows = vec![
            TableRow { u: "1".into(), s: "t*x/(1-x)".into() },
            TableRow { u: "2".into(), s: "t*x/(1-x)".into() },
        ];
        let got = check_series_rows(&rows).unwrap();
        assert!(got[0].matches);
        assert!(!got[1].matches);
        let p = check_partition(&[vec!["12".into(), "21".into()]]).unwrap();
        assert!(p.matches);
    }
}
