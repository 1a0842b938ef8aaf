use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lp::{Seed, SeedJson};

use super::graph::Vertex;
use super::{Edge, ExchangeGraph, ExploreError, SequenceLabeling};

/// Serialized exchange graph. Directions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub root: usize,
    pub truncated: bool,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub canonical: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub dir_u: usize,
    pub v: usize,
    pub dir_v: usize,
}

impl ExchangeGraph {
    pub fn to_json(&self, labels: Option<&SequenceLabeling>, with_seeds: bool) -> GraphJson {
        GraphJson {
            rank: self.rank(),
            root: self.root(),
            truncated: self.truncated(),
            vertices: self
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    label: labels.map(|l| format!("({})", l.label(v.id))),
                    canonical: v.canonical.clone(),
                    seed: with_seeds.then(|| v.seed.to_json()),
                })
                .collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|e| EdgeJson {
                    u: e.u,
                    dir_u: e.dir_u + 1,
                    v: e.v,
                    dir_v: e.dir_v + 1,
                })
                .collect(),
        }
    }

    pub fn to_dot(&self, labels: Option<&SequenceLabeling>) -> String {
        self.to_json(labels, false).to_dot()
    }
}

impl GraphJson {
    pub fn from_json_str(s: &str) -> Result<Self, ExploreError> {
        serde_json::from_str(s).map_err(|e| ExploreError::Malformed(e.to_string()))
    }

    /// Rebuilds the graph; requires inline seeds.
    pub fn to_graph(&self) -> Result<ExchangeGraph, ExploreError> {
        let vertices =
            self.vertices
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if v.id != i {
                        return Err(ExploreError::Malformed(format!(
                            "vertex {} listed at position {i}",
                            v.id
                        )));
                    }
                    let sj = v.seed.as_ref().ok_or_else(|| {
                        ExploreError::Malformed(format!("vertex {i} has no seed"))
                    })?;
                    Ok(Vertex {
                        id: i,
                        seed: Seed::from_json(sj)?,
                        canonical: v.canonical.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                if e.dir_u == 0 || e.dir_v == 0 {
                    return Err(ExploreError::Malformed(
                        "directions are 1-based".to_string(),
                    ));
                }
                Ok(Edge {
                    u: e.u,
                    dir_u: e.dir_u - 1,
                    v: e.v,
                    dir_v: e.dir_v - 1,
                })
            })
            .collect::<Result<_, _>>()?;
        ExchangeGraph::from_parts(self.rank, vertices, &edges, self.truncated)
    }

    /// Undirected DOT graph. Vertices show their sequence label when
    /// present; edges show the direction at each end.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for v in &self.vertices {
            let label = v.label.clone().unwrap_or_else(|| v.id.to_string());
            let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, label);
        }
        for e in &self.edges {
            let label = if e.dir_u == e.dir_v {
                e.dir_u.to_string()
            } else {
                format!("{}/{}", e.dir_u, e.dir_v)
            };
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, label);
        }
        out.push_str("}\n");
        out
    }
}
