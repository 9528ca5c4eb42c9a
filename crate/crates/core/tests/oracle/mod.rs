//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the library's reduction or tree-distance code paths.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;

use arboreal_core::format::parse_presentation;
use arboreal_core::tree::TreeBall;
use arboreal_core::{Order, PresentationGraph, SimpleGraph};
use rand::rngs::StdRng;
use rand::Rng;

pub fn fixture(name: &str) -> PresentationGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_presentation(&text).unwrap()
}

pub fn path_graph(n: usize) -> SimpleGraph {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    SimpleGraph::from_indices(&names, &edges).unwrap()
}

/// Plain `(vertex, exponent)` words with machine integers.
pub type RawWord = Vec<(usize, i64)>;

fn normalize(order: Order, e: i64) -> i64 {
    match order {
        Order::Finite(n) => e.rem_euclid(n as i64),
        Order::Infinite => e,
    }
}

/// Reduction straight from the definition: delete any trivial syllable, or
/// join any two same-vertex syllables whose intermediates all lie in the
/// closed neighbourhood of that vertex; repeat until nothing applies.
pub fn naive_reduce(pres: &PresentationGraph, w: &RawWord) -> RawWord {
    let g = pres.graph();
    let mut w: RawWord = w.iter().map(|&(v, e)| (v, normalize(pres.order(v), e))).collect();
    'again: loop {
        if let Some(i) = w.iter().position(|&(_, e)| e == 0) {
            w.remove(i);
            continue 'again;
        }
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let v = w[i].0;
                if w[j].0 != v {
                    continue;
                }
                if w[i + 1..j].iter().all(|&(u, _)| u == v || g.adjacent(u, v)) {
                    w[i].1 = normalize(pres.order(v), w[i].1 + w[j].1);
                    w.remove(j);
                    continue 'again;
                }
            }
        }
        return w;
    }
}

/// Every word reachable by swapping adjacent syllables on adjacent vertices.
pub fn shuffle_closure(pres: &PresentationGraph, w: &RawWord) -> BTreeSet<RawWord> {
    let g = pres.graph();
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if g.adjacent(cur[i].0, cur[i + 1].0) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Lexicographic minimum of the shuffle closure of the naive reduction.
pub fn oracle_canonical(pres: &PresentationGraph, w: &RawWord) -> RawWord {
    let reduced = naive_reduce(pres, w);
    shuffle_closure(pres, &reduced).into_iter().next().unwrap()
}

pub fn random_presentation(rng: &mut StdRng, max_vertices: usize) -> PresentationGraph {
    let n = rng.gen_range(2..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let graph = SimpleGraph::from_indices(&names, &edges).unwrap();
    let orders = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => Order::Finite(2),
            1 => Order::Finite(3),
            _ => Order::Infinite,
        })
        .collect();
    PresentationGraph::new(graph, orders).unwrap()
}

pub fn random_word(rng: &mut StdRng, pres: &PresentationGraph, max_len: usize) -> RawWord {
    let n = pres.graph().len();
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let e = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (rng.gen_range(0..n), e)
        })
        .collect()
}

/// All-pairs BFS distances inside an explicit tree ball.
pub fn ball_bfs(ball: &TreeBall) -> Vec<Vec<Option<usize>>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in &ball.edges {
        adj.entry(e.from).or_default().push(e.to);
        adj.entry(e.to).or_default().push(e.from);
    }
    let n = ball.vertices.len();
    (0..n)
        .map(|s| {
            let mut dist = vec![None; n];
            dist[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                    if dist[v].is_none() {
                        dist[v] = Some(dist[u].unwrap() + 1);
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}
