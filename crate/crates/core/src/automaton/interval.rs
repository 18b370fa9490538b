use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Composition;

/// A set of positive integers: finitely many singles plus an optional tail
/// `[N, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalLabel {
    pub singles: BTreeSet<u64>,
    pub tail: Option<u64>,
}

impl IntervalLabel {
    pub fn tail_from(n: u64) -> Self {
        IntervalLabel { singles: BTreeSet::new(), tail: Some(n) }
    }

    pub fn range(lo: u64, hi_exclusive: u64) -> Self {
        IntervalLabel { singles: (lo..hi_exclusive).collect(), tail: None }
    }

    pub fn all() -> Self {
        Self::tail_from(1)
    }

    pub fn contains(&self, a: u64) -> bool {
        self.tail.is_some_and(|n| a >= n) || self.singles.contains(&a)
    }

    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.tail.is_none()
    }

    /// Union, keeping singles strictly below the tail.
    pub fn union(&self, other: &IntervalLabel) -> IntervalLabel {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut singles: BTreeSet<u64> = self.singles.union(&other.singles).copied().collect();
        if let Some(n) = tail {
            singles.retain(|&s| s < n);
        }
        let mut label = IntervalLabel { singles, tail };
        label.absorb_into_tail();
        label
    }

    /// Folds singles `N-1, N-2, ...` adjacent to the tail into it.
    fn absorb_into_tail(&mut self) {
        while let Some(n) = self.tail {
            if n > 1 && self.singles.remove(&(n - 1)) {
                self.tail = Some(n - 1);
            } else {
                break;
            }
        }
    }

    pub fn intersects(&self, other: &IntervalLabel) -> bool {
        if let (Some(_), Some(_)) = (self.tail, other.tail) {
            return true;
        }
        self.singles.iter().any(|&s| other.contains(s)) || other.singles.iter().any(|&s| self.contains(s))
    }
}

/// Identifies a state: the block of the pattern it belongs to (always 0 for
/// a plain composition) and the subset `T ⊆ {1..ℓ}` as a bitmask, bit
/// `t - 1` standing for `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub block: usize,
    pub mask: u64,
}

impl StateKey {
    /// Elements of `T` in increasing order.
    pub fn positions(&self) -> Vec<usize> {
        (0..64).filter(|b| self.mask >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub to: usize,
    pub label: IntervalLabel,
}

/// An automaton over the positive integers whose arcs carry
/// [`IntervalLabel`]s. Deterministic on letters: from every state at most one
/// arc contains a given letter. The initial state is index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalNfa {
    pub(crate) states: Vec<StateKey>,
    pub(crate) finals: Vec<bool>,
    pub(crate) arcs: Vec<Vec<Arc>>,
    pub(crate) epsilon: BTreeSet<(usize, usize)>,
}

/// Result of running an automaton on a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub accepted: bool,
    /// State indices visited, starting with the initial state. Shorter than
    /// `|w| + 1` when the run dies.
    pub trace: Vec<usize>,
}

/// JSON form of an automaton, for `--dump-nfa`.
#[derive(Debug, Clone, Serialize)]
pub struct NfaDump {
    pub states: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub arcs: Vec<ArcDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcDump {
    pub from: usize,
    pub to: usize,
    pub singles: Vec<u64>,
    pub tail: Option<u64>,
}

/// `T' = {t+1 : t ∈ T ∪ {0}, u_{t+1} <= a}` for a non-final `T`.
fn successor(u: &[u64], mask: u64, a: u64) -> u64 {
    let mut next = 0u64;
    if u[0] <= a {
        next |= 1;
    }
    for t in 1..u.len() {
        if mask >> (t - 1) & 1 == 1 && u[t] <= a {
            next |= 1 << t;
        }
    }
    next
}

impl IntervalNfa {
    /// The automaton accepting `𝒮(u)`: words in which the only embedding of
    /// `u` is a suffix. Only states reachable from `∅` are built.
    pub fn build_suffix(u: &Composition) -> Result<Self> {
        Self::build_suffix_block(u, 0)
    }

    pub(crate) fn build_suffix_block(u: &Composition, block: usize) -> Result<Self> {
        let u = u.parts();
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        if u.len() > 63 {
            return Err(Error::InvalidParameter(format!("word length {} exceeds 63", u.len())));
        }
        let full_bit = 1u64 << (u.len() - 1);
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut masks = vec![0u64];
        index.insert(0, 0);
        let mut arcs: Vec<Vec<Arc>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(si) = queue.pop_front() {
            let mask = masks[si];
            if mask & full_bit != 0 {
                continue;
            }
            // Letters split into classes at the thresholds u_{t+1}.
            let mut starts: BTreeSet<u64> = BTreeSet::from([1]);
            starts.insert(u[0]);
            for t in 1..u.len() {
                if mask >> (t - 1) & 1 == 1 {
                    starts.insert(u[t]);
                }
            }
            let starts: Vec<u64> = starts.into_iter().collect();
            let mut by_target: BTreeMap<u64, IntervalLabel> = BTreeMap::new();
            for (ci, &lo) in starts.iter().enumerate() {
                let target = successor(u, mask, lo);
                let class = match starts.get(ci + 1) {
                    Some(&hi) => IntervalLabel::range(lo, hi),
                    None => IntervalLabel::tail_from(lo),
                };
                let entry = by_target.entry(target).or_default();
                *entry = entry.union(&class);
            }
            for (target, label) in by_target {
                let ti = *index.entry(target).or_insert_with(|| {
                    masks.push(target);
                    arcs.push(Vec::new());
                    queue.push_back(masks.len() - 1);
                    masks.len() - 1
                });
                arcs[si].push(Arc { to: ti, label });
            }
        }
        let finals = masks.iter().map(|m| m & full_bit != 0).collect();
        Ok(IntervalNfa {
            states: masks.into_iter().map(|mask| StateKey { block, mask }).collect(),
            finals,
            arcs,
            epsilon: BTreeSet::new(),
        })
    }

    /// `ℱ(u)`: adds a `[1, ∞)` loop on every final state.
    pub fn derive_factor(&self) -> Self {
        let mut out = self.clone();
        for (i, fin) in self.finals.iter().enumerate() {
            if *fin {
                out.arcs[i].retain(|a| a.to != i);
                out.arcs[i].push(Arc { to: i, label: IntervalLabel::all() });
            }
        }
        out
    }

    /// `𝒜(u)`: the factor automaton with final and non-final states swapped.
    pub fn derive_avoid(&self) -> Self {
        let mut out = self.derive_factor();
        for f in out.finals.iter_mut() {
            *f = !*f;
        }
        out
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[StateKey] {
        &self.states
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&s| self.finals[s]).collect()
    }

    pub fn arcs_from(&self, s: usize) -> &[Arc] {
        &self.arcs[s]
    }

    pub fn has_epsilon(&self) -> bool {
        !self.epsilon.is_empty()
    }

    /// The label on the arc `from -> to`, if any.
    pub fn label(&self, from: usize, to: usize) -> Option<&IntervalLabel> {
        self.arcs[from].iter().find(|a| a.to == to).map(|a| &a.label)
    }

    /// Index of the state with the given key.
    pub fn find_state(&self, key: StateKey) -> Option<usize> {
        self.states.iter().position(|&k| k == key)
    }

    pub fn step(&self, s: usize, a: u64) -> Option<usize> {
        self.arcs[s].iter().find(|arc| arc.label.contains(a)).map(|arc| arc.to)
    }

    pub fn simulate(&self, w: &Composition) -> Simulation {
        let mut cur = 0usize;
        let mut trace = vec![cur];
        for &a in w.parts() {
            match self.step(cur, a) {
                Some(next) => {
                    cur = next;
                    trace.push(cur);
                }
                None => return Simulation { accepted: false, trace },
            }
        }
        Simulation { accepted: self.finals[cur], trace }
    }

    pub fn accepts(&self, w: &Composition) -> bool {
        self.simulate(w).accepted
    }

    /// From every non-final state the outgoing labels partition `[1, ∞)`.
    pub fn is_letter_complete(&self) -> bool {
        (0..self.states.len()).filter(|&s| !self.finals[s]).all(|s| {
            let labels: Vec<&IntervalLabel> = self.arcs[s].iter().map(|a| &a.label).collect();
            for (i, a) in labels.iter().enumerate() {
                for b in &labels[i + 1..] {
                    if a.intersects(b) {
                        return false;
                    }
                }
            }
            let Some(tail) = labels.iter().filter_map(|l| l.tail).min() else {
                return false;
            };
            (1..tail).all(|a| labels.iter().any(|l| l.contains(a)))
        })
    }

    pub fn dump(&self) -> NfaDump {
        let multi_block = self.states.iter().any(|k| k.block != 0);
        let mut arcs = Vec::new();
        for (from, out) in self.arcs.iter().enumerate() {
            for arc in out {
                arcs.push(ArcDump {
                    from,
                    to: arc.to,
                    singles: arc.label.singles.iter().copied().collect(),
                    tail: arc.label.tail,
                });
            }
        }
        NfaDump {
            states: self.states.iter().map(|k| k.positions()).collect(),
            blocks: multi_block.then(|| self.states.iter().map(|k| k.block).collect()),
            initial: 0,
            finals: self.final_states(),
            arcs,
        }
    }
}
