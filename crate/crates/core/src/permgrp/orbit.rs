use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use super::backtrack::{canonical_representative, set_stabilizer};
use super::bsgs::PermutationGroup;
use super::perm::Permutation;
use crate::polycore::FaceIndexSet;

/// Default number of orbit elements materialized before falling back to
/// representative plus size.
pub const DEFAULT_ORBIT_BUDGET: usize = 100_000;

/// Orbit of an index set under the set-wise action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least element.
    pub representative: FaceIndexSet,
    pub size: BigUint,
    /// All elements in ascending order, when the orbit fits the budget.
    pub elements: Option<Vec<FaceIndexSet>>,
    /// `witnesses[i]` maps the original set onto `elements[i]`.
    pub witnesses: Option<Vec<Permutation>>,
}

pub fn orbit_of_set(group: &PermutationGroup, set: &FaceIndexSet) -> Orbit {
    orbit_of_set_with_budget(group, set, DEFAULT_ORBIT_BUDGET)
}

pub fn orbit_of_set_with_budget(group: &PermutationGroup, set: &FaceIndexSet, budget: usize) -> Orbit {
    match expand(group, set, budget) {
        Some(mut found) => {
            found.sort_by(|a, b| a.0.cmp(&b.0));
            let (elements, witnesses): (Vec<_>, Vec<_>) = found.into_iter().unzip();
            Orbit {
                representative: elements[0].clone(),
                size: BigUint::from(elements.len()),
                elements: Some(elements),
                witnesses: Some(witnesses),
            }
        }
        None => {
            let stabilizer = set_stabilizer(group, set);
            Orbit {
                representative: canonical_representative(group, set),
                size: group.order() / stabilizer.order(),
                elements: None,
                witnesses: None,
            }
        }
    }
}

fn expand(
    group: &PermutationGroup,
    set: &FaceIndexSet,
    budget: usize,
) -> Option<Vec<(FaceIndexSet, Permutation)>> {
    let mut index: HashMap<FaceIndexSet, usize> = HashMap::new();
    let mut found = vec![(set.clone(), Permutation::identity(group.degree()))];
    index.insert(set.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in group.generators() {
            let image = g.apply_to_set(&found[i].0);
            if index.contains_key(&image) {
                continue;
            }
            if found.len() == budget {
                return None;
            }
            let witness = g.compose(&found[i].1);
            index.insert(image.clone(), found.len());
            queue.push_back(found.len());
            found.push((image, witness));
        }
    }
    Some(found)
}
