//! Facets of a full-dimensional cone up to a permutation group acting on its
//! generators, by adjacency decomposition, incidence decomposition or plain
//! double description, chosen per recursion depth.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::cone::{
    facet_normal, incidence_of, restrict_group, rotate, seed_facet, span_coordinates, vertex_figure,
};
use super::dd::cone_facets;
use crate::error::Result;
use crate::permgrp::{canonical_representative, set_stabilizer, PermutationGroup};
use crate::polycore::FaceIndexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Incidence,
    Adjacency,
    Plain,
}

/// Method per recursion depth: incidence decomposition below `idm_below`,
/// adjacency decomposition below `adm_below`, plain conversion deeper.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelPolicy {
    pub idm_below: usize,
    pub adm_below: usize,
}

impl LevelPolicy {
    pub fn new(idm_below: usize, adm_below: usize) -> Self {
        LevelPolicy { idm_below, adm_below }
    }

    pub fn method(&self, depth: usize) -> Method {
        if depth < self.idm_below {
            Method::Incidence
        } else if depth < self.adm_below {
            Method::Adjacency
        } else {
            Method::Plain
        }
    }
}

impl Default for LevelPolicy {
    fn default() -> Self {
        LevelPolicy::new(0, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    /// Lexicographically least generator-incidence set in the orbit.
    pub key: FaceIndexSet,
    /// Inward normal of the facet `key`, primitive.
    pub normal: Vec<BigInt>,
    pub size: BigUint,
}

/// Facet orbits in discovery order, keyed canonically.
#[derive(Clone, Debug, Default)]
pub struct OrbitLedger {
    entries: Vec<OrbitEntry>,
    index: HashMap<FaceIndexSet, usize>,
    /// Orbit pairs (by position, smaller first) containing adjacent facets,
    /// when the method produced them.
    pub(crate) edges: Option<BTreeSet<(usize, usize)>>,
}

impl OrbitLedger {
    pub fn entries(&self) -> &[OrbitEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, key: &FaceIndexSet) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Number of facets represented, `Σ` orbit sizes.
    pub fn total(&self) -> BigUint {
        self.entries.iter().map(|e| &e.size).sum()
    }

    /// Canonical keys in ascending order, for schedule-independent comparison.
    pub fn sorted_keys(&self) -> Vec<(FaceIndexSet, BigUint)> {
        let mut keys: Vec<_> = self.entries.iter().map(|e| (e.key.clone(), e.size.clone())).collect();
        keys.sort();
        keys
    }

    fn insert(&mut self, key: FaceIndexSet, normal: Vec<BigInt>, size: BigUint) -> (usize, bool) {
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.entries.len();
        self.index.insert(key.clone(), i);
        self.entries.push(OrbitEntry { key, normal, size });
        (i, true)
    }
}

fn orbit_size(group: &PermutationGroup, stabilizer: &PermutationGroup) -> BigUint {
    group.order() / stabilizer.order()
}

/// Facet orbits of the cone generated by `gens` (which span their space).
pub(crate) fn facet_orbits(
    gens: &[Vec<BigInt>],
    group: &PermutationGroup,
    policy: LevelPolicy,
    depth: usize,
) -> Result<OrbitLedger> {
    let tiny = gens.first().map_or(0, Vec::len) <= 2;
    let method = if tiny || (depth > 0 && group.is_trivial()) {
        Method::Plain
    } else {
        policy.method(depth)
    };
    match method {
        Method::Plain => plain(gens, group),
        Method::Adjacency => adjacency(gens, group, policy, depth),
        Method::Incidence => incidence(gens, group, policy, depth),
    }
}

fn plain(gens: &[Vec<BigInt>], group: &PermutationGroup) -> Result<OrbitLedger> {
    let facets = cone_facets(gens)?;
    let mut ledger = OrbitLedger::default();
    if group.is_trivial() {
        for f in facets {
            ledger.insert(f.zero_set, f.vector, BigUint::one());
        }
        return Ok(ledger);
    }
    for f in facets {
        let key = canonical_representative(group, &f.zero_set);
        if ledger.position(&key).is_some() {
            continue;
        }
        let size = orbit_size(group, &set_stabilizer(group, &key));
        let normal = facet_normal(gens, &key);
        ledger.insert(key, normal, size);
    }
    Ok(ledger)
}

/// Neighbouring facet orbits of one facet, one per ridge orbit of its
/// stabilizer, plus the facet's orbit size.
pub(crate) fn neighbours(
    gens: &[Vec<BigInt>],
    group: &PermutationGroup,
    facet: &FaceIndexSet,
    normal: &[BigInt],
    policy: LevelPolicy,
    depth: usize,
) -> Result<(BigUint, Vec<FaceIndexSet>)> {
    let stabilizer = set_stabilizer(group, facet);
    let size = orbit_size(group, &stabilizer);
    let members: Vec<usize> = facet.iter().collect();
    let sub_gens = span_coordinates(&members.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>());
    let sub_group = restrict_group(&stabilizer, &members);
    let ridges = facet_orbits(&sub_gens, &sub_group, policy, depth + 1)?;
    let mut out = Vec::with_capacity(ridges.len());
    for r in ridges.entries() {
        let ridge = FaceIndexSet::from_sorted_unchecked(r.key.iter().map(|a| members[a]).collect());
        let next = rotate(gens, facet, normal, &ridge);
        out.push(canonical_representative(group, &incidence_of(gens, &next)));
    }
    Ok((size, out))
}

pub(crate) fn adjacency(
    gens: &[Vec<BigInt>],
    group: &PermutationGroup,
    policy: LevelPolicy,
    depth: usize,
) -> Result<OrbitLedger> {
    let mut ledger = OrbitLedger::default();
    let seed = seed_facet(gens);
    let key = canonical_representative(group, &incidence_of(gens, &seed));
    let normal = facet_normal(gens, &key);
    ledger.insert(key, normal, BigUint::zero());
    let mut edges = BTreeSet::new();
    let mut done = 0;
    while done < ledger.len() {
        let batch: Vec<usize> = (done..ledger.len()).collect();
        let results: Vec<Result<(BigUint, Vec<FaceIndexSet>)>> = batch
            .par_iter()
            .map(|&i| {
                let e = &ledger.entries[i];
                neighbours(gens, group, &e.key, &e.normal, policy, depth)
            })
            .collect();
        done = ledger.len();
        for (i, res) in batch.into_iter().zip(results) {
            let (size, found) = res?;
            ledger.entries[i].size = size;
            for key in found {
                let j = match ledger.position(&key) {
                    Some(j) => j,
                    None => {
                        let normal = facet_normal(gens, &key);
                        ledger.insert(key, normal, BigUint::zero()).0
                    }
                };
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    ledger.edges = Some(edges);
    Ok(ledger)
}

pub(crate) fn incidence(
    gens: &[Vec<BigInt>],
    group: &PermutationGroup,
    policy: LevelPolicy,
    depth: usize,
) -> Result<OrbitLedger> {
    let apexes: Vec<usize> = group.orbits().into_iter().map(|o| o[0]).collect();
    let found: Vec<Result<Vec<FaceIndexSet>>> = apexes
        .par_iter()
        .map(|&apex| {
            let (figure, others) = vertex_figure(gens, apex);
            let sub_group = restrict_group(&group.point_stabilizer(apex), &others);
            let sub = facet_orbits(&span_coordinates(&figure), &sub_group, policy, depth + 1)?;
            Ok(sub
                .entries()
                .iter()
                .map(|e| {
                    let incidence = FaceIndexSet::new(e.key.iter().map(|a| others[a]).chain([apex]));
                    canonical_representative(group, &incidence)
                })
                .collect())
        })
        .collect();
    let mut ledger = OrbitLedger::default();
    for keys in found {
        for key in keys? {
            if ledger.position(&key).is_none() {
                let size = orbit_size(group, &set_stabilizer(group, &key));
                let normal = facet_normal(gens, &key);
                ledger.insert(key, normal, size);
            }
        }
    }
    Ok(ledger)
}
