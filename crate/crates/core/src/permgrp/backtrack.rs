//! Searches over a stabilizer chain whose base starts with the points of a set:
//! set stabilizers, set transporters and lexicographically least set images.

use std::collections::BTreeMap;

use super::bsgs::PermutationGroup;
use super::perm::Permutation;
use crate::polycore::FaceIndexSet;

fn membership(degree: usize, set: &FaceIndexSet) -> Vec<bool> {
    let mut v = vec![false; degree];
    for i in set.iter() {
        v[i] = true;
    }
    v
}

fn reach_from(point: usize, gens: &[Permutation], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// Depth-first search below `level`: extends `prefix` by coset representatives
/// until the first `depth` base points all land in `target`.
fn extend(
    chain: &PermutationGroup,
    level: usize,
    depth: usize,
    prefix: &Permutation,
    target: &[bool],
) -> Option<Permutation> {
    if level == depth {
        return Some(prefix.clone());
    }
    let lv = &chain.levels[level];
    for &delta in &lv.orbit {
        if !target[prefix.apply(delta)] {
            continue;
        }
        let u = lv.transversal[delta].as_ref().expect("orbit point");
        if let Some(found) = extend(chain, level + 1, depth, &prefix.compose(u), target) {
            return Some(found);
        }
    }
    None
}

/// The subgroup of `group` mapping `set` onto itself.
pub fn set_stabilizer(group: &PermutationGroup, set: &FaceIndexSet) -> PermutationGroup {
    let degree = group.degree();
    if set.is_empty() || set.len() == degree || group.is_trivial() {
        return group.clone();
    }
    let chain = PermutationGroup::with_base_prefix(degree, group.generators().to_vec(), set.as_slice())
        .expect("set lies within the group degree");
    let depth = set.len();
    let in_set = membership(degree, set);
    let mut gens: Vec<Permutation> = chain
        .levels
        .get(depth)
        .map(|l| l.generators.clone())
        .unwrap_or_default();
    for i in (0..depth).rev() {
        let lv = &chain.levels[i];
        let deeper = gens.clone();
        let mut reach = reach_from(lv.base_point, &gens, degree);
        let mut failed = vec![false; degree];
        let mut candidates = lv.orbit.clone();
        candidates.sort_unstable();
        for gamma in candidates {
            if reach[gamma] || failed[gamma] || !in_set[gamma] {
                continue;
            }
            let u = lv.transversal[gamma].as_ref().expect("orbit point");
            match extend(&chain, i + 1, depth, u, &in_set) {
                Some(g) => {
                    gens.push(g);
                    reach = reach_from(lv.base_point, &gens, degree);
                }
                None => {
                    // Any point in the same orbit of the deeper stabilizer
                    // fails as well.
                    for (p, hit) in reach_from(gamma, &deeper, degree).into_iter().enumerate() {
                        failed[p] |= hit;
                    }
                }
            }
        }
    }
    PermutationGroup::new(degree, gens).expect("found elements share the degree")
}

/// A group element mapping `s` onto `t`, if one exists.
pub fn is_equivalent(
    group: &PermutationGroup,
    s: &FaceIndexSet,
    t: &FaceIndexSet,
) -> Option<Permutation> {
    let degree = group.degree();
    if s.len() != t.len() {
        return None;
    }
    if s == t {
        return Some(Permutation::identity(degree));
    }
    let chain = PermutationGroup::with_base_prefix(degree, group.generators().to_vec(), s.as_slice())
        .expect("set lies within the group degree");
    extend(&chain, 0, s.len(), &Permutation::identity(degree), &membership(degree, t))
}

/// Lexicographically least image of `set` together with an element realizing it.
pub fn canonical_with_transporter(
    group: &PermutationGroup,
    set: &FaceIndexSet,
) -> (FaceIndexSet, Permutation) {
    let degree = group.degree();
    let mut candidates: BTreeMap<FaceIndexSet, Permutation> = BTreeMap::new();
    candidates.insert(set.clone(), Permutation::identity(degree));
    let mut h = group.clone();
    let mut fixed: Vec<usize> = Vec::new();
    let mut is_fixed = vec![false; degree];
    for _ in 0..set.len() {
        if h.is_trivial() {
            break;
        }
        let gens = h.generators().to_vec();
        let orbit_min = orbit_minima(degree, &gens);
        let m = candidates
            .keys()
            .flat_map(|img| img.iter().filter(|&p| !is_fixed[p]).map(|p| orbit_min[p]))
            .min()
            .expect("set has an unfixed point");
        let tree = schreier_tree(m, &gens, degree);
        let mut next: BTreeMap<FaceIndexSet, Permutation> = BTreeMap::new();
        for (img, g) in &candidates {
            for p in img.iter().filter(|&p| !is_fixed[p] && orbit_min[p] == m) {
                let u = tree[p].as_ref().expect("p lies in the orbit of m").inverse();
                let image = u.apply_to_set(img);
                next.entry(image).or_insert_with(|| u.compose(g));
            }
        }
        candidates = next;
        fixed.push(m);
        is_fixed[m] = true;
        h = h.point_stabilizer(m);
    }
    candidates
        .into_iter()
        .next()
        .expect("at least one candidate survives")
}

/// Lexicographically least element of the orbit of `set`.
pub fn canonical_representative(group: &PermutationGroup, set: &FaceIndexSet) -> FaceIndexSet {
    canonical_with_transporter(group, set).0
}

fn orbit_minima(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut min = vec![usize::MAX; degree];
    for p in 0..degree {
        if min[p] != usize::MAX {
            continue;
        }
        for (q, hit) in reach_from(p, gens, degree).into_iter().enumerate() {
            if hit {
                min[q] = p;
            }
        }
    }
    min
}

/// `tree[p] = Some(v)` with `v(root) = p` for every `p` in the orbit of `root`.
fn schreier_tree(root: usize, gens: &[Permutation], degree: usize) -> Vec<Option<Permutation>> {
    let mut tree: Vec<Option<Permutation>> = vec![None; degree];
    tree[root] = Some(Permutation::identity(degree));
    let mut queue = vec![root];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for s in gens {
            let q = s.apply(p);
            if tree[q].is_none() {
                tree[q] = Some(s.compose(tree[p].as_ref().expect("visited")));
                queue.push(q);
            }
        }
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn set(v: &[usize]) -> FaceIndexSet {
        FaceIndexSet::new(v.iter().copied())
    }

    #[test]
    fn s4_stabilizer_of_pair() {
        let g = PermutationGroup::symmetric(4);
        let stab = set_stabilizer(&g, &set(&[0, 1]));
        assert_eq!(stab.order(), BigUint::from(4u32));
        let brute = g
            .elements(100)
            .unwrap()
            .into_iter()
            .filter(|e| e.apply_to_set(&set(&[0, 1])) == set(&[0, 1]))
            .count();
        assert_eq!(brute, 4);
    }

    #[test]
    fn stabilizer_edge_cases() {
        let g = PermutationGroup::symmetric(4);
        assert_eq!(set_stabilizer(&g, &set(&[0, 1, 2, 3])).order(), g.order());
        let t = PermutationGroup::trivial(4);
        assert!(set_stabilizer(&t, &set(&[1])).is_trivial());
    }

    #[test]
    fn s3_canonical_image() {
        let g = PermutationGroup::symmetric(3);
        assert_eq!(canonical_representative(&g, &set(&[1, 2])), set(&[0, 1]));
        let t = PermutationGroup::trivial(3);
        assert_eq!(canonical_representative(&t, &set(&[1, 2])), set(&[1, 2]));
    }

    #[test]
    fn transporter_maps_set() {
        let g = PermutationGroup::new(
            6,
            vec![Permutation::parse_cycles("(1 2 3 4 5 6)", 6).unwrap()],
        )
        .unwrap();
        let s = set(&[0, 2]);
        let t = set(&[3, 5]);
        let w = is_equivalent(&g, &s, &t).unwrap();
        assert_eq!(w.apply_to_set(&s), t);
        assert!(is_equivalent(&g, &s, &set(&[0, 1])).is_none());
        assert!(is_equivalent(&g, &s, &set(&[0])).is_none());
        let (canon, h) = canonical_with_transporter(&g, &t);
        assert_eq!(canon, set(&[0, 2]));
        assert_eq!(h.apply_to_set(&t), canon);
    }
}
