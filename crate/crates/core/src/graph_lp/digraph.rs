use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::GraphError;

/// Directed graph on `1..=n` without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DigraphJson {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v as usize > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            if !set.insert((i, j)) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
        }
        Ok(Digraph { n, edges: set })
    }

    /// `K_n`: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        let edges = (1..=n32).flat_map(|i| (1..=n32).filter(move |&j| j != i).map(move |j| (i, j)));
        Digraph {
            n,
            edges: edges.collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn out_neighbors(&self, i: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|e| e.1)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1)
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let j: DigraphJson =
            serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
        Digraph::new(j.n, j.edges.into_iter().map(|[i, j]| (i, j)))
    }

    pub fn to_json_string(&self) -> String {
        let j = DigraphJson {
            n: self.n,
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&j).expect("digraph serialization cannot fail")
    }
}
