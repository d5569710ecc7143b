#![allow(dead_code)]

use polysym::polycore::{rat, Rational};

/// All sign variants of the non-zero entries of `pattern`.
fn signed(pattern: [i64; 4]) -> Vec<[i64; 4]> {
    let nz: Vec<usize> = (0..4).filter(|&i| pattern[i] != 0).collect();
    (0..1u32 << nz.len())
        .map(|mask| {
            let mut v = pattern;
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v[i] = -v[i];
                }
            }
            v
        })
        .collect()
}

/// The 48 vertices of Santos' 5-prismatoid: 24 on `x5 = 1`, then 24 on `x5 = −1`.
pub fn santos_prismatoid() -> Vec<Vec<Rational>> {
    let top: [[i64; 4]; 8] = [
        [18, 0, 0, 0],
        [0, 18, 0, 0],
        [0, 0, 45, 0],
        [0, 0, 0, 45],
        [15, 15, 0, 0],
        [0, 0, 30, 30],
        [0, 10, 40, 0],
        [10, 0, 0, 40],
    ];
    let bottom: [[i64; 4]; 8] = [
        [0, 0, 0, 18],
        [0, 0, 18, 0],
        [45, 0, 0, 0],
        [0, 45, 0, 0],
        [0, 0, 15, 15],
        [30, 30, 0, 0],
        [40, 0, 10, 0],
        [0, 40, 0, 10],
    ];
    let mut out = Vec::new();
    for (patterns, h) in [(top, 1), (bottom, -1)] {
        for p in patterns {
            for v in signed(p) {
                let mut x: Vec<Rational> = v.iter().map(|&c| rat(c)).collect();
                x.push(rat(h));
                out.push(x);
            }
        }
    }
    out
}

pub fn cube_vertices(n: usize) -> Vec<Vec<Rational>> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { rat(1) } else { rat(-1) }).collect())
        .collect()
}

pub fn cross_polytope_vertices(n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut x = vec![rat(0); n];
            x[i] = rat(s);
            out.push(x);
        }
    }
    out
}
