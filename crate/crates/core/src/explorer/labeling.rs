use std::collections::{HashMap, VecDeque};

use crate::graph_lp::ActivationSequence;

use super::graph::ambient_key;
use super::{ExchangeGraph, ExploreError};

/// Activation sequence of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceLabeling {
    labels: Vec<ActivationSequence>,
    by_label: HashMap<ActivationSequence, usize>,
}

impl SequenceLabeling {
    pub fn label(&self, v: usize) -> &ActivationSequence {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[ActivationSequence] {
        &self.labels
    }

    pub fn vertex(&self, s: &ActivationSequence) -> Option<usize> {
        self.by_label.get(s).copied()
    }
}

/// Labels the graph by activation sequences, starting from the empty
/// sequence at the root, and checks that direction `l` at a vertex labeled
/// `s` leads to the vertex labeled `s.mutate(l)`.
///
/// Directions are tracked per vertex as the ambient value sitting at each
/// `l`. Mutating at `s_i` with `i < k` leaves the new variable in slot
/// `s_i` while it takes the role of `s_{i+1}`, so those two roles swap.
pub fn label_by_sequences(g: &ExchangeGraph) -> Result<SequenceLabeling, ExploreError> {
    if g.truncated() {
        return Err(ExploreError::Truncated);
    }
    let n = g.rank();
    let root = g.root();
    let mut labels: Vec<Option<ActivationSequence>> = vec![None; g.len()];
    let mut roles: Vec<Option<Vec<String>>> = vec![None; g.len()];
    labels[root] = Some(ActivationSequence::empty(n));
    roles[root] = Some(
        (0..n)
            .map(|k| ambient_key(&g.vertices()[root].seed, k))
            .collect(),
    );
    let mut queue = VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        let s = labels[v].clone().expect("queued vertices are labeled");
        let role = roles[v].clone().expect("queued vertices have roles");
        for l in 1..=n as u32 {
            let slot = g.slot_with_key(v, &role[l as usize - 1]).ok_or_else(|| {
                ExploreError::Malformed(format!("vertex {v} lost the variable for direction {l}"))
            })?;
            let (w, dir_w) = g.neighbor(v, slot).ok_or(ExploreError::Involution {
                vertex: v,
                direction: slot + 1,
            })?;
            let target = s.mutate(l);
            let mut new_role = role.clone();
            new_role[l as usize - 1] = ambient_key(&g.vertices()[w].seed, dir_w);
            if let Some(i) = s.position(l).filter(|&i| i < s.len()) {
                new_role.swap(l as usize - 1, s.get(i + 1) as usize - 1);
            }
            match &labels[w] {
                None => {
                    labels[w] = Some(target);
                    roles[w] = Some(new_role);
                    queue.push_back(w);
                }
                Some(found) => {
                    if *found != target || roles[w].as_ref() != Some(&new_role) {
                        return Err(ExploreError::LabelConflict {
                            from: v,
                            to: w,
                            direction: l,
                            expected: target.to_string(),
                            found: found.to_string(),
                        });
                    }
                }
            }
        }
    }

    let labels: Vec<ActivationSequence> = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| ExploreError::Malformed(format!("vertex {v} unreachable"))))
        .collect::<Result<_, _>>()?;
    let mut by_label = HashMap::new();
    for (v, s) in labels.iter().enumerate() {
        if let Some(u) = by_label.insert(s.clone(), v) {
            return Err(ExploreError::LabelConflict {
                from: u,
                to: v,
                direction: 0,
                expected: "distinct labels".to_string(),
                found: s.to_string(),
            });
        }
    }
    Ok(SequenceLabeling { labels, by_label })
}

/// Vertex map `a -> b` matching activation-sequence labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
    pub edges_checked: usize,
}

/// Checks that matching labels is a graph isomorphism between `a` and `b`.
pub fn verify_isomorphism(
    a: &ExchangeGraph,
    la: &SequenceLabeling,
    b: &ExchangeGraph,
    lb: &SequenceLabeling,
) -> Result<Isomorphism, ExploreError> {
    if a.len() != b.len() {
        return Err(ExploreError::NotIsomorphic(format!(
            "{} vs {} vertices",
            a.len(),
            b.len()
        )));
    }
    let map: Vec<usize> = (0..a.len())
        .map(|v| {
            lb.vertex(la.label(v)).ok_or_else(|| {
                ExploreError::NotIsomorphic(format!("label ({}) missing on the right", la.label(v)))
            })
        })
        .collect::<Result<_, _>>()?;
    let ea = a.edges();
    let eb = b.edges();
    if ea.len() != eb.len() {
        return Err(ExploreError::NotIsomorphic(format!(
            "{} vs {} edges",
            ea.len(),
            eb.len()
        )));
    }
    for e in &ea {
        let (x, y) = (map[e.u], map[e.v]);
        let adjacent = (0..b.rank()).any(|d| b.neighbor(x, d).is_some_and(|t| t.0 == y));
        if !adjacent {
            return Err(ExploreError::NotIsomorphic(format!(
                "edge ({}) - ({}) has no image",
                la.label(e.u),
                la.label(e.v)
            )));
        }
    }
    Ok(Isomorphism {
        map,
        edges_checked: ea.len(),
    })
}
