use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::decomp::{neighbours, LevelPolicy, OrbitLedger};
use super::SymProblem;
use crate::error::{Error, Result};
use crate::polycore::FaceIndexSet;

/// Facet adjacency up to symmetry: one node per orbit, in ledger order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub nodes: Vec<(FaceIndexSet, BigUint)>,
    /// Node pairs `(u, v)` with `u ≤ v`; `u == v` marks adjacent facets
    /// within one orbit.
    pub edges: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

pub fn adjacency_graph(problem: &SymProblem, ledger: &OrbitLedger) -> Result<AdjacencyGraph> {
    let nodes = ledger
        .entries()
        .iter()
        .map(|e| (e.key.clone(), e.size.clone()))
        .collect();
    if let Some(edges) = &ledger.edges {
        return Ok(AdjacencyGraph { nodes, edges: edges.clone() });
    }
    let policy = LevelPolicy::new(0, 0);
    let found: Vec<Result<Vec<FaceIndexSet>>> = ledger
        .entries()
        .par_iter()
        .map(|e| {
            neighbours(problem.generators(), problem.group(), &e.key, &e.normal, policy, 0).map(|(_, n)| n)
        })
        .collect();
    let mut edges = BTreeSet::new();
    for (i, keys) in found.into_iter().enumerate() {
        for key in keys? {
            let j = ledger
                .position(&key)
                .ok_or_else(|| Error::Verification(format!("neighbour facet {key} is missing from the ledger")))?;
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Ok(AdjacencyGraph { nodes, edges })
}

impl AdjacencyGraph {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn neighbours(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == u {
                    Some(b)
                } else if b == u {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Breadth-first distance between two nodes (0-based).
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Distance> {
        let n = self.nodes.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::UnknownNode(x));
            }
        }
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Ok(Distance::Finite(dist[x]));
            }
            for y in self.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(Distance::Unreachable)
    }

    /// Graphviz text; nodes are numbered from 1 in ledger order.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph facets {\n");
        for (i, (_, size)) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  o{} [label=\"orbit {} (size {})\"];", i + 1, i + 1, size);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  o{} -- o{};", a + 1, b + 1);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph() -> AdjacencyGraph {
        AdjacencyGraph {
            nodes: (0..4).map(|i| (FaceIndexSet::new([i]), BigUint::from(1u32))).collect(),
            edges: [(0, 1), (1, 2)].into_iter().collect(),
        }
    }

    #[test]
    fn distances() {
        let g = path_graph();
        assert_eq!(g.shortest_path(0, 0).unwrap(), Distance::Finite(0));
        assert_eq!(g.shortest_path(0, 1).unwrap(), Distance::Finite(1));
        assert_eq!(g.shortest_path(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(g.shortest_path(0, 3).unwrap(), Distance::Unreachable);
        assert_eq!(g.shortest_path(0, 9), Err(Error::UnknownNode(9)));
    }

    #[test]
    fn dot_format() {
        let dot = path_graph().to_dot();
        assert!(dot.starts_with("graph facets {\n"));
        assert!(dot.contains("  o1 [label=\"orbit 1 (size 1)\"];\n"));
        assert!(dot.contains("  o2 -- o3;\n"));
    }
}
