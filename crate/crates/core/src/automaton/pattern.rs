use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::interval::{Arc, IntervalLabel, IntervalNfa};
use crate::error::{Error, Result};
use crate::word::Composition;

/// A barred pattern `ȳ₁ ȳ₂ … ȳ_k`: each block must embed as a contiguous
/// factor, blocks in order and non-overlapping but not necessarily adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    blocks: Vec<Composition>,
}

impl Pattern {
    pub fn new(blocks: Vec<Composition>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::EmptyBlock);
        }
        Ok(Pattern { blocks })
    }

    pub fn single(u: Composition) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn blocks(&self) -> &[Composition] {
        &self.blocks
    }

    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }
}

/// Syntax: comma-separated items; a bracketed group `[1,3,3]` (or `[133]`)
/// is one barred block, a bare integer is a one-letter block.
impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::PatternSyntax { input: s.to_string(), reason: reason.to_string() };
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if let Some(after) = rest.strip_prefix('[') {
                let close = after.find(']').ok_or_else(|| bad("unclosed '['"))?;
                let block: Composition = after[..close].parse().map_err(|_| bad("bad block contents"))?;
                if block.is_empty() {
                    return Err(Error::EmptyBlock);
                }
                blocks.push(block);
                rest = after[close + 1..].trim_start();
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                let item = rest[..end].trim();
                let part: u64 = item.parse().map_err(|_| bad("expected integer or '[...]'"))?;
                if part == 0 {
                    return Err(bad("parts must be positive"));
                }
                blocks.push(Composition::new(vec![part])?);
                rest = rest[end..].trim_start();
            }
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(bad("trailing ','"));
                }
            } else if !rest.is_empty() {
                return Err(bad("expected ','"));
            }
        }
        Pattern::new(blocks)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    b.parts()[0].to_string()
                } else {
                    let parts: Vec<String> = b.parts().iter().map(|p| p.to_string()).collect();
                    format!("[{}]", parts.join(","))
                }
            })
            .collect();
        f.write_str(&items.join(","))
    }
}

impl IntervalNfa {
    /// Pastes the suffix automata of the blocks with ε-arcs from the final
    /// states of each block to the initial state of the next, without
    /// removing them.
    pub fn paste_pattern(p: &Pattern) -> Result<Self> {
        let mut states = Vec::new();
        let mut finals = Vec::new();
        let mut arcs: Vec<Vec<Arc>> = Vec::new();
        let mut epsilon = BTreeSet::new();
        let mut prev_finals: Vec<usize> = Vec::new();
        let k = p.blocks.len();
        for (bi, block) in p.blocks.iter().enumerate() {
            let part = IntervalNfa::build_suffix_block(block, bi)?;
            let offset = states.len();
            for &pf in &prev_finals {
                epsilon.insert((pf, offset));
            }
            prev_finals = part.final_states().into_iter().map(|s| s + offset).collect();
            states.extend(part.states.iter().copied());
            finals.extend(part.finals.iter().map(|&f| f && bi + 1 == k));
            for out in part.arcs {
                arcs.push(out.into_iter().map(|a| Arc { to: a.to + offset, label: a.label }).collect());
            }
        }
        Ok(IntervalNfa { states, finals, arcs, epsilon })
    }

    /// Removes ε-arcs: each state takes over the labeled arcs of every state
    /// in its ε-closure and becomes final if the closure meets a final
    /// state. Unreachable states are pruned afterwards.
    pub fn eliminate_epsilon(&self) -> Self {
        if self.epsilon.is_empty() {
            return self.clone();
        }
        let n = self.states.len();
        let mut eps_out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.epsilon {
            eps_out[a].push(b);
        }
        let closure = |s: usize| -> Vec<usize> {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(q) = stack.pop() {
                for &r in &eps_out[q] {
                    if seen.insert(r) {
                        stack.push(r);
                    }
                }
            }
            seen.into_iter().collect()
        };
        let mut arcs = Vec::with_capacity(n);
        let mut finals = Vec::with_capacity(n);
        for s in 0..n {
            let cl = closure(s);
            finals.push(cl.iter().any(|&q| self.finals[q]));
            let mut merged: BTreeMap<usize, IntervalLabel> = BTreeMap::new();
            for &q in &cl {
                for arc in &self.arcs[q] {
                    let e = merged.entry(arc.to).or_default();
                    *e = e.union(&arc.label);
                }
            }
            arcs.push(merged.into_iter().map(|(to, label)| Arc { to, label }).collect());
        }
        IntervalNfa { states: self.states.clone(), finals, arcs, epsilon: BTreeSet::new() }.prune_unreachable()
    }

    fn prune_unreachable(&self) -> Self {
        let n = self.states.len();
        let mut order = vec![usize::MAX; n];
        let mut kept = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        order[0] = 0;
        kept.push(0);
        while let Some(s) = queue.pop_front() {
            for arc in &self.arcs[s] {
                if order[arc.to] == usize::MAX {
                    order[arc.to] = kept.len();
                    kept.push(arc.to);
                    queue.push_back(arc.to);
                }
            }
            for &(a, b) in &self.epsilon {
                if a == s && order[b] == usize::MAX {
                    order[b] = kept.len();
                    kept.push(b);
                    queue.push_back(b);
                }
            }
        }
        IntervalNfa {
            states: kept.iter().map(|&s| self.states[s]).collect(),
            finals: kept.iter().map(|&s| self.finals[s]).collect(),
            arcs: kept
                .iter()
                .map(|&s| self.arcs[s].iter().map(|a| Arc { to: order[a.to], label: a.label.clone() }).collect())
                .collect(),
            epsilon: self
                .epsilon
                .iter()
                .filter(|(a, b)| order[*a] != usize::MAX && order[*b] != usize::MAX)
                .map(|&(a, b)| (order[a], order[b]))
                .collect(),
        }
    }

    /// The ε-free automaton accepting `𝒮(p)`: words into which `p` embeds
    /// but into no proper prefix of which it embeds.
    pub fn build_pattern(p: &Pattern) -> Result<Self> {
        Ok(Self::paste_pattern(p)?.eliminate_epsilon())
    }
}
