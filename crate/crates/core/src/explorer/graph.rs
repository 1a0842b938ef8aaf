use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::lp::{Seed, SeedError};

use super::ExploreError;

pub const DEFAULT_MAX_SEEDS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: usize,
    /// First representative reached, with slot order inherited from the
    /// start seed along the discovering path.
    pub seed: Seed,
    pub canonical: String,
}

/// A mutation edge: slot `dir_u` of `u` and slot `dir_v` of `v` (0-based)
/// are exchanged by it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub dir_u: usize,
    pub v: usize,
    pub dir_v: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    rank: usize,
    vertices: Vec<Vertex>,
    /// `adj[v][dir] = (w, dir_w)`.
    adj: Vec<Vec<Option<(usize, usize)>>>,
    truncated: bool,
}

/// Normalized ambient value of a slot, used to match slots across
/// representatives of the same seed.
pub(crate) fn ambient_key(seed: &Seed, slot: usize) -> String {
    seed.ambient(slot).normalize().to_string()
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn neighbor(&self, v: usize, dir: usize) -> Option<(usize, usize)> {
        self.adj[v][dir]
    }

    /// Each edge once, with `(u, dir_u) < (v, dir_v)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            for (dir_u, e) in row.iter().enumerate() {
                if let Some((v, dir_v)) = *e {
                    if (u, dir_u) < (v, dir_v) {
                        out.push(Edge { u, dir_u, v, dir_v });
                    }
                }
            }
        }
        out
    }

    /// Slot of `v` whose normalized ambient value is `key`.
    pub fn slot_with_key(&self, v: usize, key: &str) -> Option<usize> {
        let seed = &self.vertices[v].seed;
        (0..self.rank).find(|&k| ambient_key(seed, k) == key)
    }

    /// Distinct normalized ambient values over all seeds.
    pub fn cluster_variables(&self) -> BTreeSet<String> {
        self.vertices
            .iter()
            .flat_map(|v| (0..self.rank).map(move |k| ambient_key(&v.seed, k)))
            .collect()
    }

    /// Every vertex has `n` distinct neighbors, none of them itself.
    pub fn is_regular(&self) -> bool {
        self.adj.iter().enumerate().all(|(v, row)| {
            let targets: BTreeSet<usize> = row.iter().flatten().map(|e| e.0).collect();
            row.iter().all(Option::is_some) && targets.len() == self.rank && !targets.contains(&v)
        })
    }

    /// Reassembles a graph from parts, checking adjacency symmetry.
    pub(crate) fn from_parts(
        rank: usize,
        vertices: Vec<Vertex>,
        edges: &[Edge],
        truncated: bool,
    ) -> Result<Self, ExploreError> {
        let mut adj = vec![vec![None; rank]; vertices.len()];
        for e in edges {
            for (a, da, b, db) in [(e.u, e.dir_u, e.v, e.dir_v), (e.v, e.dir_v, e.u, e.dir_u)] {
                if a >= vertices.len() || da >= rank {
                    return Err(ExploreError::Malformed(format!("edge {e:?} out of range")));
                }
                if adj[a][da].is_some_and(|x| x != (b, db)) {
                    return Err(ExploreError::Involution {
                        vertex: a,
                        direction: da + 1,
                    });
                }
                adj[a][da] = Some((b, db));
            }
        }
        Ok(ExchangeGraph {
            rank,
            vertices,
            adj,
            truncated,
        })
    }
}

struct Step {
    from: usize,
    dir: usize,
    seed: Seed,
    canonical: String,
}

/// Breadth-first exploration of the exchange graph of `start`.
///
/// Each level's mutations run in parallel; new seeds are numbered in
/// canonical-string order so the result does not depend on scheduling.
/// Every edge is produced from both endpoints and the two must agree
/// (mutation is an involution). When more than `max_seeds` seeds exist the
/// graph is returned with `truncated` set.
pub fn explore(start: &Seed, max_seeds: usize) -> Result<ExchangeGraph, ExploreError> {
    let n = start.rank();
    let root = Vertex {
        id: 0,
        seed: start.clone(),
        canonical: start.canonical_string(),
    };
    let mut index: HashMap<String, usize> = HashMap::from([(root.canonical.clone(), 0)]);
    let mut graph = ExchangeGraph {
        rank: n,
        vertices: vec![root],
        adj: vec![vec![None; n]],
        truncated: false,
    };
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let tasks: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&v| (0..n).map(move |d| (v, d)))
            .collect();
        let steps: Vec<Step> = tasks
            .par_iter()
            .map(|&(from, dir)| {
                let seed =
                    graph.vertices[from]
                        .seed
                        .mutate(dir)
                        .map_err(|source| match source {
                            SeedError::LaurentViolated { .. } => ExploreError::LaurentViolated {
                                seed: graph.vertices[from].canonical.clone(),
                                direction: dir + 1,
                                source,
                            },
                            other => other.into(),
                        })?;
                let canonical = seed.canonical_string();
                Ok(Step {
                    from,
                    dir,
                    seed,
                    canonical,
                })
            })
            .collect::<Result<_, ExploreError>>()?;

        let mut fresh: Vec<&Step> = Vec::new();
        let mut seen = BTreeSet::new();
        for st in &steps {
            if !index.contains_key(&st.canonical) && seen.insert(st.canonical.as_str()) {
                fresh.push(st);
            }
        }
        fresh.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        let mut next = Vec::new();
        for st in fresh {
            if graph.vertices.len() >= max_seeds {
                graph.truncated = true;
                break;
            }
            let id = graph.vertices.len();
            index.insert(st.canonical.clone(), id);
            graph.vertices.push(Vertex {
                id,
                seed: st.seed.clone(),
                canonical: st.canonical.clone(),
            });
            graph.adj.push(vec![None; n]);
            next.push(id);
        }

        for st in &steps {
            let Some(&w) = index.get(&st.canonical) else {
                continue;
            };
            let key = ambient_key(&st.seed, st.dir);
            let dir_w = graph.slot_with_key(w, &key).ok_or_else(|| {
                ExploreError::Malformed(format!("no slot of seed {w} matches mutated value {key}"))
            })?;
            graph.adj[st.from][st.dir] = Some((w, dir_w));
            if graph.adj[w][dir_w].is_some_and(|back| back != (st.from, st.dir)) {
                return Err(ExploreError::Involution {
                    vertex: w,
                    direction: dir_w + 1,
                });
            }
        }
        frontier = next;
    }

    if !graph.truncated {
        for (v, row) in graph.adj.iter().enumerate() {
            for (d, e) in row.iter().enumerate() {
                let (w, dw) = e.ok_or(ExploreError::Involution {
                    vertex: v,
                    direction: d + 1,
                })?;
                if graph.adj[w][dw] != Some((v, d)) {
                    return Err(ExploreError::Involution {
                        vertex: v,
                        direction: d + 1,
                    });
                }
            }
        }
    }
    Ok(graph)
}
