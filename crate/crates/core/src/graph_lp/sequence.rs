use std::fmt;

use super::GraphError;

/// An ordered, duplicate-free subset of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActivationSequence {
    n: usize,
    entries: Vec<u32>,
}

impl ActivationSequence {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e as usize > n {
                return Err(GraphError::VertexOutOfRange { vertex: e, n });
            }
            if std::mem::replace(&mut seen[e as usize], true) {
                return Err(GraphError::DuplicateEntry(e));
            }
        }
        Ok(ActivationSequence { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        ActivationSequence {
            n,
            entries: Vec::new(),
        }
    }

    /// Parses `"1,3,2"`; the empty string (or `"()"`) is the empty sequence.
    pub fn parse(n: usize, s: &str) -> Result<Self, GraphError> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Ok(Self::empty(n));
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| GraphError::Parse(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `s_r` for `1 <= r <= k`.
    pub fn get(&self, r: usize) -> u32 {
        self.entries[r - 1]
    }

    /// The first `r` entries.
    pub fn prefix(&self, r: usize) -> Self {
        ActivationSequence {
            n: self.n,
            entries: self.entries[..r].to_vec(),
        }
    }

    /// 1-based position of `l`, if present.
    pub fn position(&self, l: u32) -> Option<usize> {
        self.entries.iter().position(|&e| e == l).map(|i| i + 1)
    }

    pub fn contains(&self, l: u32) -> bool {
        self.entries.contains(&l)
    }

    /// Entries in increasing order.
    pub fn underlying_set(&self) -> Vec<u32> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }

    /// The action of mutation in direction `l`: append when absent,
    /// truncate when last, otherwise swap with the following entry.
    pub fn mutate(&self, l: u32) -> Self {
        assert!(
            l >= 1 && l as usize <= self.n,
            "direction {l} out of range 1..={}",
            self.n
        );
        let mut entries = self.entries.clone();
        match self.position(l) {
            None => entries.push(l),
            Some(k) if k == entries.len() => {
                entries.pop();
            }
            Some(i) => entries.swap(i - 1, i),
        }
        ActivationSequence { n: self.n, entries }
    }

    /// The direction that undoes `self.mutate(l)` from the mutated sequence.
    /// Equal to `l` except in the swap case, where the entry that moved
    /// into position `i` is the one to mutate back.
    pub fn inverse_direction(&self, l: u32) -> u32 {
        match self.position(l) {
            Some(i) if i < self.len() => self.entries[i],
            _ => l,
        }
    }

    /// Every activation sequence of rank `n`, by length and then
    /// lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = vec![Self::empty(n)];
        let mut frontier = vec![Self::empty(n)];
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &frontier {
                for l in 1..=n as u32 {
                    if !s.contains(l) {
                        let mut entries = s.entries.clone();
                        entries.push(l);
                        next.push(ActivationSequence { n, entries });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Display for ActivationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
