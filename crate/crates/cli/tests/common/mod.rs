#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn polysym(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_polysym"))
        .args(args)
        .env_remove("POLYSYM_JOBS")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Undirected edges of a DOT graph written by `convert --adjacencies`,
/// as 0-based node pairs.
pub fn dot_edges(dot: &str) -> Vec<(usize, usize)> {
    dot.lines()
        .filter_map(|l| {
            let (a, b) = l.trim().trim_end_matches(';').split_once(" -- ")?;
            let node = |s: &str| s.trim().strip_prefix('o')?.parse::<usize>().ok().map(|i| i - 1);
            Some((node(a)?, node(b)?))
        })
        .collect()
}

pub fn bfs_distance(nodes: usize, edges: &[(usize, usize)], from: usize, to: usize) -> Option<usize> {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![usize::MAX; nodes];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    (dist[to] != usize::MAX).then_some(dist[to])
}
