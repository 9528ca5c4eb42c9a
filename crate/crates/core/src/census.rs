//! Exhaustive enumeration of small simple graphs up to isomorphism.
//!
//! Graphs on `n` vertices are grown from the isomorphism classes on `n - 1`
//! vertices by attaching a new vertex to every possible neighbour subset;
//! each candidate is reduced to the lexicographically smallest adjacency
//! bitmask over all vertex permutations.

use std::collections::BTreeSet;

use crate::graph::SimpleGraph;

/// Largest vertex count supported; the canonical labelling tries all `n!`
/// permutations.
pub const MAX_VERTICES: usize = 8;

fn pair_bit(n: usize, u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    // Row-major index into the strict upper triangle.
    let idx = u * (2 * n - u - 1) / 2 + (v - u - 1);
    1u64 << idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn canonical_mask(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| edges.iter().fold(0u64, |m, &(u, v)| m | pair_bit(n, p[u], p[v])))
        .min()
        .unwrap_or(0)
}

fn mask_edges(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask & pair_bit(n, u, v) != 0 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Canonical edge lists of all graphs on `n` vertices, one per isomorphism
/// class.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n <= MAX_VERTICES, "census limited to {MAX_VERTICES} vertices");
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 2..=n {
        let perms = permutations(k);
        let mut next = BTreeSet::new();
        for &mask in &classes {
            let base = mask_edges(k - 1, mask);
            for nbrs in 0u32..(1 << (k - 1)) {
                let mut edges = base.clone();
                edges.extend((0..k - 1).filter(|i| nbrs & (1 << i) != 0).map(|i| (i, k - 1)));
                next.insert(canonical_mask(k, &edges, &perms));
            }
        }
        classes = next;
    }
    classes.into_iter().map(|m| mask_edges(n, m)).collect()
}

/// Connected graphs on `n` vertices up to isomorphism, with vertices named
/// `v0, v1, ...`.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    all_graphs_up_to_iso(n)
        .into_iter()
        .map(|edges| SimpleGraph::from_indices(&names, &edges).expect("census graphs are simple"))
        .filter(SimpleGraph::is_connected)
        .collect()
}
