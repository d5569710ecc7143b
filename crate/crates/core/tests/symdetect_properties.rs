use std::collections::HashSet;

use num_bigint::BigUint;
use polysym::permgrp::{Permutation, PermutationGroup};
use polysym::polycore::{rat, rat_vec, Rational, VPolyhedron};
use polysym::symdetect::{affine_symmetry_group, colored_automorphisms, restricted_symmetries_h};
use polysym::polycore::HPolyhedron;
use proptest::prelude::*;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn symmetric_colors(k: usize, palette: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(0..palette, k * (k + 1) / 2).prop_map(move |flat| {
        let mut m = vec![vec![0u32; k]; k];
        let mut it = flat.into_iter();
        for i in 0..k {
            for j in i..k {
                let c = it.next().unwrap();
                m[i][j] = c;
                m[j][i] = c;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn automorphisms_match_brute_force(colors in (1usize..=7, 1u32..=3).prop_flat_map(|(k, p)| symmetric_colors(k, p))) {
        let k = colors.len();
        let brute: HashSet<Vec<usize>> = permutations(k)
            .into_iter()
            .filter(|g| (0..k).all(|i| (0..k).all(|j| colors[g[i]][g[j]] == colors[i][j])))
            .collect();
        let gens = colored_automorphisms(&colors);
        for g in &gens {
            prop_assert!(brute.contains(g.images()));
        }
        let group = PermutationGroup::new(k, gens).unwrap();
        prop_assert_eq!(group.order(), BigUint::from(brute.len()));
    }

    #[test]
    fn order_is_affine_invariant(seed in prop::collection::vec(-3i64..=3, 9), shift in prop::collection::vec(-5i64..=5, 3)) {
        let m: Vec<Vec<Rational>> = seed.chunks(3).map(rat_vec).collect();
        prop_assume!(polysym::polycore::linalg::determinant(&m) != rat(0));
        let cube: Vec<Vec<Rational>> = (0..8usize)
            .map(|v| (0..3).map(|i| if v >> i & 1 == 1 { rat(1) } else { rat(-1) }).collect())
            .collect();
        let t = rat_vec(&shift);
        let moved: Vec<Vec<Rational>> = cube
            .iter()
            .map(|x| polysym::polycore::linalg::add_vec(&polysym::polycore::linalg::mat_vec(&m, x), &t))
            .collect();
        let g = affine_symmetry_group(&VPolyhedron::polytope(moved.clone()).unwrap()).unwrap();
        prop_assert_eq!(g.group.order(), BigUint::from(48u32));
        prop_assert_eq!(g.discarded, 0);
        for (sigma, map) in &g.realizations {
            for (i, x) in moved.iter().enumerate() {
                prop_assert_eq!(&map.apply(x), &moved[sigma.apply(i)]);
            }
        }
    }
}

#[test]
fn asymmetric_triangle_is_rigid() {
    let v = VPolyhedron::polytope(vec![rat_vec(&[0, 0]), rat_vec(&[3, 0]), rat_vec(&[0, 1])]).unwrap();
    // With only three vertices every permutation is affine; an asymmetric
    // triangle still has the full S3 as affine symmetry group.
    assert_eq!(affine_symmetry_group(&v).unwrap().group.order(), BigUint::from(6u32));
    // Adding a fourth point breaks all of it.
    let v = VPolyhedron::polytope(vec![
        rat_vec(&[0, 0]),
        rat_vec(&[3, 0]),
        rat_vec(&[0, 1]),
        rat_vec(&[2, 2]),
    ])
    .unwrap();
    assert_eq!(affine_symmetry_group(&v).unwrap().group.order(), BigUint::from(1u32));
}

#[test]
fn triangle_rows_brute_force() {
    // x ≥ 0, y ≥ 0, 2x + 3y ≤ 6
    let h = HPolyhedron::from_rows(
        vec![(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[0, -1]), rat(0)), (rat_vec(&[2, 3]), rat(6))],
        2,
    )
    .unwrap();
    let g = restricted_symmetries_h(&h).unwrap();
    let rows = polysym::symdetect::normalized_rows(&h);
    let brute = permutations(3)
        .into_iter()
        .filter(|p| {
            let sigma = Permutation::from_images(p.clone()).unwrap();
            polysym::symdetect::realize(&rows, &sigma, false).is_some()
        })
        .count();
    assert_eq!(g.group.order(), BigUint::from(brute));
}

#[test]
fn simplex_facets_match_vertex_side() {
    // Standard simplex: rows x_i ≥ 0 and Σx ≤ 1.
    let n = 3;
    let mut rows: Vec<(Vec<Rational>, Rational)> = (0..n)
        .map(|i| ((0..n).map(|j| if i == j { rat(-1) } else { rat(0) }).collect(), rat(0)))
        .collect();
    rows.push((vec![rat(1); n], rat(1)));
    let h = HPolyhedron::from_rows(rows, n).unwrap();
    let rows_group = restricted_symmetries_h(&h).unwrap();
    let mut verts = vec![vec![rat(0); n]];
    for i in 0..n {
        verts.push((0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect());
    }
    let vert_group = affine_symmetry_group(&VPolyhedron::polytope(verts).unwrap()).unwrap();
    assert_eq!(rows_group.group.order(), vert_group.group.order());
    assert_eq!(rows_group.group.orbits().len(), vert_group.group.orbits().len());
}
