//! Avoidance of a finite family of binary factors in words over `{0, 1, #}`.
//!
//! The automaton is the Aho–Corasick goto/failure machine over `{0, 1}`
//! completed into a DFA. Every trie node whose suffix chain contains a
//! pattern collapses into one absorbing dead state, and reading `#` sends
//! any live state back to the start, so no occurrence can straddle padding.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, format, Error, Result};
use crate::window::{Symbol, Window};

/// A non-empty finite set of non-empty binary patterns, matched in the
/// LSD-first orientation of the digit stream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenFamily {
    patterns: BTreeSet<Vec<u8>>,
    max_len: usize,
}

impl ForbiddenFamily {
    pub fn new<I, S>(patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for p in patterns {
            let p = p.as_ref().trim();
            if p.is_empty() {
                return Err(domain("forbidden patterns must be non-empty"));
            }
            let bits = p
                .chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(format(format!(
                        "pattern {p:?} has non-binary symbol {other:?}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            set.insert(bits);
        }
        if set.is_empty() {
            return Err(domain("forbidden family must contain at least one pattern"));
        }
        let max_len = set.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Self {
            patterns: set,
            max_len,
        })
    }

    pub fn patterns(&self) -> impl Iterator<Item = &[u8]> {
        self.patterns.iter().map(Vec::as_slice)
    }

    /// `L`, the longest pattern length.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            for &b in p {
                f.write_str(if b == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for ForbiddenFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.split(','))
    }
}

/// Complete DFA over `{0, 1, #}` rejecting words that contain a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceDfa {
    transitions: Vec<[usize; 3]>,
    start: usize,
    dead: Option<usize>,
}

impl AvoidanceDfa {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn dead(&self) -> Option<usize> {
        self.dead
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn next(&self, state: usize, symbol: Symbol) -> usize {
        self.transitions[state][symbol.index()]
    }

    pub fn is_dead(&self, state: usize) -> bool {
        self.dead == Some(state)
    }

    /// True iff the run over `symbols` never reaches the dead state.
    pub fn accepts(&self, symbols: &[Symbol]) -> bool {
        let mut state = self.start;
        for &s in symbols {
            state = self.next(state, s);
            if self.is_dead(state) {
                return false;
            }
        }
        true
    }

    pub fn accepts_window(&self, window: &Window) -> bool {
        self.accepts(window.symbols())
    }
}

/// Builds the avoidance automaton; state count is at most `2 + sum |f|`.
pub fn build_avoidance_dfa(family: &ForbiddenFamily) -> AvoidanceDfa {
    // Trie over {0, 1}.
    let mut children: Vec<[Option<usize>; 2]> = vec![[None, None]];
    let mut terminal: Vec<bool> = vec![false];
    for p in family.patterns() {
        let mut node = 0;
        for &b in p {
            node = match children[node][b as usize] {
                Some(child) => child,
                None => {
                    children.push([None, None]);
                    terminal.push(false);
                    let child = children.len() - 1;
                    children[node][b as usize] = Some(child);
                    child
                }
            };
        }
        terminal[node] = true;
    }

    // Breadth-first failure links and the completed goto function.
    let nodes = children.len();
    let mut goto = vec![[0usize; 2]; nodes];
    let mut fail = vec![0usize; nodes];
    let mut queue = VecDeque::new();
    for b in 0..2 {
        match children[0][b] {
            Some(child) => {
                goto[0][b] = child;
                queue.push_back(child);
            }
            None => goto[0][b] = 0,
        }
    }
    while let Some(node) = queue.pop_front() {
        terminal[node] |= terminal[fail[node]];
        for b in 0..2 {
            match children[node][b] {
                Some(child) => {
                    fail[child] = goto[fail[node]][b];
                    goto[node][b] = child;
                    queue.push_back(child);
                }
                None => goto[node][b] = goto[fail[node]][b],
            }
        }
    }

    // Keep the live states reachable from the root, numbered in BFS order
    // with symbol order 0, 1, #; every terminal node maps to one dead state.
    let mut id = vec![usize::MAX; nodes];
    let mut order = vec![0usize];
    id[0] = 0;
    let mut head = 0;
    let mut has_dead = false;
    while head < order.len() {
        let node = order[head];
        head += 1;
        for &target in &goto[node] {
            if terminal[target] {
                has_dead = true;
            } else if id[target] == usize::MAX {
                id[target] = order.len();
                order.push(target);
            }
        }
    }
    let dead = has_dead.then_some(order.len());
    let mut transitions = Vec::with_capacity(order.len() + usize::from(has_dead));
    for &node in &order {
        let step = |b: usize| {
            let target = goto[node][b];
            if terminal[target] {
                dead.expect("dead state exists when a terminal is reachable")
            } else {
                id[target]
            }
        };
        transitions.push([step(0), step(1), 0]);
    }
    if let Some(dead) = dead {
        transitions.push([dead, dead, dead]);
    }
    AvoidanceDfa {
        transitions,
        start: 0,
        dead,
    }
}

/// Parses `v` over `{0, 1, #}` and checks it against `family`.
pub fn avoids(v: &str, family: &ForbiddenFamily) -> Result<bool> {
    let symbols = v
        .chars()
        .map(Symbol::from_char)
        .collect::<Result<Vec<_>>>()?;
    Ok(build_avoidance_dfa(family).accepts(&symbols))
}
