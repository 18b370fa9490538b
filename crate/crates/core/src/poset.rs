//! Finite posets given by cover relations, and words over them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk form: `{ "elements": [..], "covers": [[lower, upper], ..] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// `leq[a][b]` iff `a <= b`.
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Reflexive-transitive closure of the given covers. Fails on cycles and
    /// on names not listed in `elements`.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate element {e:?}")));
            }
        }
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let ia = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            if ia == ib {
                return Err(Error::Cycle(a.as_ref().to_string()));
            }
            leq[ia][ib] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(elements[i].clone()));
                }
            }
        }
        Ok(FinitePoset { elements, index, leq })
    }

    /// Validates an explicit order matrix.
    pub fn from_matrix(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotAPartialOrder("matrix shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::NotAPartialOrder(format!("{} not reflexive", elements[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::NotAPartialOrder(format!("{} and {} are mutually below", elements[i], elements[j])));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::NotAPartialOrder("not transitive".into()));
                    }
                }
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(FinitePoset { elements, index, leq })
    }

    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::from_covers::<S>(elements, &[])
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        Self::from_covers(&file.elements, &file.covers)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Parses a word of element names: comma separated, or one character per
    /// letter when there is no comma.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(',') {
            text.split(',').map(|s| self.index_of(s.trim())).collect()
        } else {
            text.chars().map(|c| self.index_of(&c.to_string())).collect()
        }
    }

    /// `u <= w` in generalized factor order over this poset.
    pub fn embeds(&self, u: &[usize], w: &[usize]) -> bool {
        if u.len() > w.len() {
            return false;
        }
        (0..=w.len() - u.len()).any(|j| u.iter().zip(&w[j..]).all(|(&a, &b)| self.leq(a, b)))
    }
}
