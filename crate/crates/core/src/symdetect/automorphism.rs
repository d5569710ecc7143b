//! Automorphisms of an edge-coloured complete graph by colour refinement and
//! individualization.
//!
//! The first path of the search tree individualizes, at each level, the first
//! vertex of the smallest non-singleton cell (lowest cell index on ties). The
//! levels are then revisited bottom-up; at level `i` every other vertex of the
//! target cell that is not already in the orbit of the first-path vertex is
//! tried, and a subtree search looks for a leaf whose induced map is an
//! automorphism. The generators found form a strong generating set relative to
//! the first-path base.

use super::graph::SymmetryGraph;
use crate::permgrp::Permutation;

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    colors: &'a [Vec<u32>],
    k: usize,
}

impl Search<'_> {
    fn refine(&self, mut cells: Partition) -> Partition {
        let mut cell_of = vec![0usize; self.k];
        loop {
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let before = cells.len();
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let row = &self.colors[v];
                        let mut sig: Vec<(usize, u32)> =
                            (0..self.k).map(|u| (if u == v { usize::MAX } else { cell_of[u] }, row[u])).collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        let mut part: Vec<usize> = keyed[start..i].iter().map(|(_, v)| *v).collect();
                        part.sort_unstable();
                        next.push(part);
                        start = i;
                    }
                }
            }
            cells = next;
            if cells.len() == before {
                return cells;
            }
        }
    }

    fn individualize(cells: &Partition, target: usize, v: usize) -> Partition {
        let mut out = Vec::with_capacity(cells.len() + 1);
        for (c, cell) in cells.iter().enumerate() {
            if c == target {
                out.push(vec![v]);
                out.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                out.push(cell.clone());
            }
        }
        out
    }

    fn target_cell(cells: &Partition) -> Option<usize> {
        cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
    }

    fn is_automorphism(&self, images: &[usize]) -> bool {
        (0..self.k).all(|i| (i..self.k).all(|j| self.colors[images[i]][images[j]] == self.colors[i][j]))
    }

    fn leaf_map(leaf0: &Partition, leaf: &Partition, k: usize) -> Vec<usize> {
        let mut images = vec![0; k];
        for (a, b) in leaf0.iter().zip(leaf) {
            images[a[0]] = b[0];
        }
        images
    }

    /// Searches the subtree rooted at an (unrefined) partition at `depth` of
    /// the first path for a leaf yielding an automorphism.
    fn search(&self, cells: Partition, depth: usize, path: &[Partition], leaf0: &Partition) -> Option<Vec<usize>> {
        let cells = self.refine(cells);
        let reference = path.get(depth).unwrap_or(leaf0);
        if cells.len() != reference.len() || cells.iter().zip(reference).any(|(a, b)| a.len() != b.len()) {
            return None;
        }
        let Some(t) = Self::target_cell(&cells) else {
            let images = Self::leaf_map(leaf0, &cells, self.k);
            return self.is_automorphism(&images).then_some(images);
        };
        for &u in &cells[t] {
            if let Some(found) = self.search(Self::individualize(&cells, t, u), depth + 1, path, leaf0) {
                return Some(found);
            }
        }
        None
    }
}

fn orbit_mask(point: usize, gens: &[Vec<usize>], k: usize) -> Vec<bool> {
    let mut seen = vec![false; k];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            if !seen[g[p]] {
                seen[g[p]] = true;
                stack.push(g[p]);
            }
        }
    }
    seen
}

/// Generators of the automorphism group of a coloured complete graph given by
/// its colour matrix.
pub fn colored_automorphisms(colors: &[Vec<u32>]) -> Vec<Permutation> {
    let k = colors.len();
    if k <= 1 {
        return Vec::new();
    }
    let s = Search { colors, k };
    // First path: partitions at each depth (refined) and the chosen vertex.
    let mut path: Vec<Partition> = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut cells = s.refine(vec![(0..k).collect()]);
    while let Some(t) = Search::target_cell(&cells) {
        let v = cells[t][0];
        path.push(cells.clone());
        chosen.push((t, v));
        cells = s.refine(Search::individualize(&cells, t, v));
    }
    let leaf0 = cells;

    let mut gens: Vec<Vec<usize>> = Vec::new();
    for level in (0..path.len()).rev() {
        let (t, v) = chosen[level];
        let deeper = gens.clone();
        let mut reach = orbit_mask(v, &gens, k);
        let mut failed = vec![false; k];
        for &w in &path[level][t] {
            if reach[w] || failed[w] {
                continue;
            }
            let branch = Search::individualize(&path[level], t, w);
            match s.search(branch, level + 1, &path, &leaf0) {
                Some(images) => {
                    gens.push(images);
                    reach = orbit_mask(v, &gens, k);
                }
                None => {
                    for (p, hit) in orbit_mask(w, &deeper, k).into_iter().enumerate() {
                        failed[p] |= hit;
                    }
                }
            }
        }
    }
    gens.into_iter()
        .map(|g| Permutation::from_images(g).expect("leaf maps are bijections"))
        .collect()
}

pub fn graph_automorphisms(graph: &SymmetryGraph) -> Vec<Permutation> {
    colored_automorphisms(graph.colors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::PermutationGroup;
    use num_bigint::BigUint;

    fn order(colors: &[Vec<u32>]) -> BigUint {
        PermutationGroup::new(colors.len(), colored_automorphisms(colors)).unwrap().order()
    }

    #[test]
    fn monochrome_graph_gives_symmetric_group() {
        for k in 1..=6usize {
            let colors: Vec<Vec<u32>> = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
            let expected: u32 = (1..=k as u32).product();
            assert_eq!(order(&colors), BigUint::from(expected));
        }
    }

    #[test]
    fn path_coloring_is_rigid() {
        // Edge colour = |i - j| on 5 vertices with a distinguished end.
        let k = 5;
        let colors: Vec<Vec<u32>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { u32::from(i == 0) } else { (i as i64 - j as i64).unsigned_abs() as u32 + 1 }).collect())
            .collect();
        assert_eq!(order(&colors), BigUint::from(1u32));
    }
}
