//! The Bass-Serre tree of a splitting `G = G_A *_{G_C} G_B`.
//!
//! Vertices are the cosets `gG_A` and `gG_B`, edges the cosets `gG_C`; the
//! edge `gG_C` joins `gG_A` to `gG_B`. Every coset is stored as its unique
//! shortest representative, obtained by stripping from the right any
//! syllable of the subgroup that can be shuffled to the end.
//!
//! The tree is infinite. Everything that explores it takes explicit bounds
//! and reports when the bound truncated the exploration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::classify::SplittingSpec;
use crate::error::{Error, Result};
use crate::format::format_normal_form;
use crate::graph::VertexSet;
use crate::word::{BallPolicy, GroupOrder, NormalForm, PresentationGraph, Word};

/// Which vertex group a tree vertex is a coset of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A coset `rep·G_side`, with `rep` the shortest representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    side: Side,
    rep: NormalForm,
}

impl TreeVertex {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rep(&self) -> &NormalForm {
        &self.rep
    }
}

/// A coset `rep·G_C`, with `rep` the shortest representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeEdge {
    rep: NormalForm,
}

impl TreeEdge {
    pub fn rep(&self) -> &NormalForm {
        &self.rep
    }
}

/// An edge path given by its starting vertex and successive edges. A path
/// with no edges is a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub start: TreeVertex,
    pub edges: Vec<TreeEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElementAction {
    Elliptic,
    Loxodromic { translation_length: usize },
}

/// Shortest representative of the coset `gG_S`.
pub fn coset_canonical(pres: &PresentationGraph, g: &NormalForm, subset: &VertexSet) -> NormalForm {
    let graph = pres.graph();
    let mut syllables = g.syllables().to_vec();
    while let Some(i) = (0..syllables.len()).rev().find(|&i| {
        let v = syllables[i].vertex();
        subset.contains(&v) && syllables[i + 1..].iter().all(|p| graph.adjacent(p.vertex(), v))
    }) {
        syllables.remove(i);
    }
    pres.canonical_form(&Word::new(syllables))
        .expect("syllables of a normal form are valid")
}

/// Edges found around one vertex.
#[derive(Debug, Clone)]
pub struct Neighbors {
    pub entries: Vec<(TreeEdge, TreeVertex)>,
    /// Set when the vertex has edges the local search did not reach.
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub edge: TreeEdge,
}

/// An explicitly constructed ball around the base vertex `G_A`.
///
/// It is a subtree: each vertex past the centre was discovered through
/// exactly one edge from its parent.
#[derive(Debug, Clone)]
pub struct TreeBall {
    pub vertices: Vec<TreeVertex>,
    pub depth: Vec<usize>,
    pub edges: Vec<BallEdge>,
    pub truncated: bool,
    index: HashMap<TreeVertex, usize>,
}

impl TreeBall {
    pub fn index_of(&self, v: &TreeVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `(neighbour, edge index)` lists.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push((e.to, i));
            adj[e.to].push((e.from, i));
        }
        adj
    }
}

/// Bounds for [`BassSerreTree::audit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditConfig {
    pub k: usize,
    pub tree_radius: usize,
    pub element_radius: usize,
    /// Generator radius inside a vertex group when listing incident edges.
    pub local_radius: usize,
    pub policy: BallPolicy,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            k: 3,
            tree_radius: 5,
            element_radius: 6,
            local_radius: 2,
            policy: BallPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub start: String,
    pub edges: Vec<String>,
    pub stabilizer_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub splitting: SplittingSpec,
    pub k: usize,
    pub tree_radius: usize,
    pub element_radius: usize,
    pub local_radius: usize,
    pub exp_bound: u64,
    pub tree_vertices: usize,
    pub tree_edges: usize,
    pub tree_truncated: bool,
    pub group_ball_size: usize,
    pub paths_checked: usize,
    pub max_stabilizer_size: usize,
    pub bound: u128,
    /// Paths shorter than the acylindricity constant are reported but not
    /// held to the bound.
    pub bound_applies: bool,
    pub evidence: &'static str,
    pub violations: Vec<Violation>,
}

/// Bitset over a fixed list of group elements.
#[derive(Clone)]
struct ElementSet(Vec<u64>);

impl ElementSet {
    fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            if f(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        ElementSet(words)
    }

    fn intersect(&mut self, other: &ElementSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// The action of a graph product on the Bass-Serre tree of a splitting.
#[derive(Debug, Clone)]
pub struct BassSerreTree {
    pres: PresentationGraph,
    splitting: SplittingSpec,
}

impl BassSerreTree {
    pub fn new(pres: &PresentationGraph, splitting: &SplittingSpec) -> Result<Self> {
        let fresh = SplittingSpec::from_pair(pres, splitting.a, splitting.b)?;
        if &fresh != splitting {
            return Err(Error::input("splitting does not belong to this presentation"));
        }
        Ok(BassSerreTree {
            pres: pres.clone(),
            splitting: fresh,
        })
    }

    pub fn from_pair(pres: &PresentationGraph, a: usize, b: usize) -> Result<Self> {
        Ok(BassSerreTree {
            pres: pres.clone(),
            splitting: SplittingSpec::from_pair(pres, a, b)?,
        })
    }

    pub fn presentation(&self) -> &PresentationGraph {
        &self.pres
    }

    pub fn splitting(&self) -> &SplittingSpec {
        &self.splitting
    }

    pub fn side_set(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.splitting.side_a,
            Side::B => &self.splitting.side_b,
        }
    }

    pub fn core_set(&self) -> &VertexSet {
        &self.splitting.core
    }

    /// The vertex `gG_side`.
    pub fn vertex(&self, side: Side, g: &NormalForm) -> TreeVertex {
        TreeVertex {
            side,
            rep: coset_canonical(&self.pres, g, self.side_set(side)),
        }
    }

    /// The edge `gG_C`.
    pub fn edge(&self, g: &NormalForm) -> TreeEdge {
        TreeEdge {
            rep: coset_canonical(&self.pres, g, self.core_set()),
        }
    }

    pub fn base_vertex(&self, side: Side) -> TreeVertex {
        TreeVertex {
            side,
            rep: self.pres.identity(),
        }
    }

    pub fn base_edge(&self) -> TreeEdge {
        TreeEdge {
            rep: self.pres.identity(),
        }
    }

    /// `[gG_A, gG_B]` for the edge `gG_C`.
    pub fn endpoints(&self, e: &TreeEdge) -> [TreeVertex; 2] {
        [self.vertex(Side::A, &e.rep), self.vertex(Side::B, &e.rep)]
    }

    fn mul(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        self.pres
            .canonical_form(&g.to_word().concat(&h.to_word()))
            .expect("normal forms of one presentation multiply")
    }

    /// Left action `g·v`.
    pub fn translate_vertex(&self, g: &NormalForm, v: &TreeVertex) -> TreeVertex {
        self.vertex(v.side, &self.mul(g, &v.rep))
    }

    pub fn translate_edge(&self, g: &NormalForm, e: &TreeEdge) -> TreeEdge {
        self.edge(&self.mul(g, &e.rep))
    }

    pub fn fixes_vertex(&self, s: &NormalForm, v: &TreeVertex) -> bool {
        self.translate_vertex(s, v) == *v
    }

    pub fn fixes_edge(&self, s: &NormalForm, e: &TreeEdge) -> bool {
        self.translate_edge(s, e) == *e
    }

    /// Whether the vertex group at `side` has edges beyond what a search of
    /// the given radius reaches. `[G_X : G_C]` is finite exactly when the
    /// extra vertex of `X` is joined to all of `C` and has finite order.
    fn side_truncated(&self, side: Side, local_radius: usize) -> bool {
        let extra = match side {
            Side::A => self.splitting.a,
            Side::B => self.splitting.b,
        };
        let g = self.pres.graph();
        let finite_index =
            self.pres.order(extra).is_finite() && self.splitting.core.iter().all(|&c| g.adjacent(c, extra));
        !(finite_index && local_radius >= 1)
    }

    fn neighbors_with(
        &self,
        v: &TreeVertex,
        local_ball: &BTreeSet<NormalForm>,
    ) -> Vec<(TreeEdge, TreeVertex)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in local_ball {
            let gx = self.mul(&v.rep, x);
            let e = self.edge(&gx);
            if seen.insert(e.clone()) {
                let w = self.vertex(v.side.other(), &gx);
                out.push((e, w));
            }
        }
        out
    }

    /// Edges at `v` of the form `v.rep·x·G_C` with `x` in the radius
    /// `local_radius` ball of the vertex group.
    pub fn neighbors(&self, v: &TreeVertex, local_radius: usize, policy: &BallPolicy) -> Result<Neighbors> {
        let local_ball = self
            .pres
            .enumerate_ball_in(self.side_set(v.side), local_radius, policy)?;
        Ok(Neighbors {
            entries: self.neighbors_with(v, &local_ball),
            truncated: self.side_truncated(v.side, local_radius),
        })
    }

    /// Edge distance from `G_X` to `hG_Y`, with `h` already shortest for `Y`.
    ///
    /// Walks back to the base edge: `hG_Y` meets `hG_{Y'}` along `hG_C`, and
    /// the shortest representative of `hG_{Y'}` is strictly shorter because
    /// `h` can only end in the vertex `Y` omits, which lies in `Y'`.
    fn distance_from_base(&self, base: Side, target: &TreeVertex) -> usize {
        let mut side = target.side;
        let mut rep = target.rep.clone();
        let mut steps = 0;
        while !rep.is_identity() {
            side = side.other();
            let next = coset_canonical(&self.pres, &rep, self.side_set(side));
            debug_assert!(
                next.len() < rep.len(),
                "coset walk must shorten the representative"
            );
            rep = next;
            steps += 1;
        }
        steps + usize::from(side != base)
    }

    /// Length of the unique edge path between two vertices.
    pub fn distance(&self, v1: &TreeVertex, v2: &TreeVertex) -> usize {
        let rel = self.mul(&self.pres.inverse(&v1.rep), &v2.rep);
        let target = self.vertex(v2.side, &rel);
        self.distance_from_base(v1.side, &target)
    }

    /// Elliptic or loxodromic, from `D1 = d(x, gx)` and `D2 = d(x, g²x)` at
    /// `x = G_A`. Bass-Serre trees have no inversions, so `D2 - D1` is the
    /// translation length when positive and `D2 <= D1` otherwise.
    pub fn element_action(&self, g: &NormalForm) -> ElementAction {
        let x = self.base_vertex(Side::A);
        let d1 = self.distance(&x, &self.translate_vertex(g, &x));
        let g2 = self.mul(g, g);
        let d2 = self.distance(&x, &self.translate_vertex(&g2, &x));
        if d2 > d1 {
            ElementAction::Loxodromic {
                translation_length: d2 - d1,
            }
        } else {
            ElementAction::Elliptic
        }
    }

    /// True iff every generator and every pairwise product acts elliptically.
    pub fn elliptic_generation_check(&self, generators: &[NormalForm]) -> bool {
        let elliptic = |g: &NormalForm| self.element_action(g) == ElementAction::Elliptic;
        generators.iter().all(elliptic)
            && generators.iter().enumerate().all(|(i, s)| {
                generators
                    .iter()
                    .enumerate()
                    .all(|(j, t)| i == j || elliptic(&self.mul(s, t)))
            })
    }

    /// First loxodromic product of at most `max_len` vertex generators, in
    /// length-then-lexicographic order.
    pub fn find_loxodromic(&self, max_len: usize) -> Option<NormalForm> {
        let n = self.pres.graph().len();
        let gens: Vec<NormalForm> = (0..n)
            .map(|v| self.pres.syllable_element(v, 1).expect("vertex generator"))
            .collect();
        let mut layer = vec![self.pres.identity()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * n);
            for g in &layer {
                for s in &gens {
                    let h = self.mul(g, s);
                    if let ElementAction::Loxodromic { .. } = self.element_action(&h) {
                        return Some(h);
                    }
                    next.push(h);
                }
            }
            layer = next;
        }
        None
    }

    /// Breadth-first ball of the given radius around `G_A`.
    pub fn ball(&self, radius: usize, local_radius: usize, policy: &BallPolicy) -> Result<TreeBall> {
        let local = [Side::A, Side::B].map(|side| {
            self.pres
                .enumerate_ball_in(self.side_set(side), local_radius, policy)
        });
        let [local_a, local_b] = local;
        let (local_a, local_b) = (local_a?, local_b?);
        let centre = self.base_vertex(Side::A);
        let mut ball = TreeBall {
            vertices: vec![centre.clone()],
            depth: vec![0],
            edges: Vec::new(),
            truncated: false,
            index: HashMap::from([(centre, 0)]),
        };
        let mut cursor = 0;
        while cursor < ball.vertices.len() {
            let v = ball.vertices[cursor].clone();
            let depth = ball.depth[cursor];
            if depth < radius {
                ball.truncated |= self.side_truncated(v.side, local_radius);
                let local = match v.side {
                    Side::A => &local_a,
                    Side::B => &local_b,
                };
                for (e, w) in self.neighbors_with(&v, local) {
                    if ball.index.contains_key(&w) {
                        continue;
                    }
                    let idx = ball.vertices.len();
                    if idx >= policy.cap {
                        return Err(Error::Resource {
                            what: "tree ball".into(),
                            cap: policy.cap,
                        });
                    }
                    ball.index.insert(w.clone(), idx);
                    ball.vertices.push(w);
                    ball.depth.push(depth + 1);
                    ball.edges.push(BallEdge {
                        from: cursor,
                        to: idx,
                        edge: e,
                    });
                }
            }
            cursor += 1;
        }
        Ok(ball)
    }

    fn check_path(&self, path: &TreePath) -> Result<()> {
        let mut at = path.start.clone();
        for e in &path.edges {
            let [ea, eb] = self.endpoints(e);
            at = if at == ea {
                eb
            } else if at == eb {
                ea
            } else {
                return Err(Error::input("edges of the path are not consecutive"));
            };
        }
        Ok(())
    }

    /// Elements of the radius `element_radius` ball fixing every vertex and
    /// edge of the path: a certified subset of the pointwise stabiliser.
    pub fn path_stabilizer(
        &self,
        path: &TreePath,
        element_radius: usize,
        policy: &BallPolicy,
    ) -> Result<BTreeSet<NormalForm>> {
        self.check_path(path)?;
        let ball = self.pres.enumerate_ball(element_radius, policy)?;
        Ok(ball
            .into_iter()
            .filter(|s| self.fixes_vertex(s, &path.start) && path.edges.iter().all(|e| self.fixes_edge(s, e)))
            .collect())
    }

    /// Checks the `(k, |G_N|)` bound on every `k`-edge path of an explicit
    /// tree ball, against stabilisers searched inside a group ball.
    pub fn audit(&self, config: &AuditConfig) -> Result<AuditReport> {
        let GroupOrder::Finite(bound) = self.splitting.acyl_c else {
            return Err(Error::input(format!(
                "`{}` and `{}` are not separated: the common link generates an infinite group",
                self.splitting.pair[0], self.splitting.pair[1]
            )));
        };
        let tree = self.ball(config.tree_radius, config.local_radius, &config.policy)?;
        let elements: Vec<NormalForm> = self
            .pres
            .enumerate_ball(config.element_radius, &config.policy)?
            .into_iter()
            .collect();
        let n = elements.len();
        let edge_fixers: Vec<ElementSet> = tree
            .edges
            .iter()
            .map(|e| ElementSet::from_fn(n, |i| self.fixes_edge(&elements[i], &e.edge)))
            .collect();

        let adj = tree.adjacency();
        let bound_applies = config.k >= self.splitting.acyl_k;
        let graph = self.pres.graph();
        let mut paths_checked = 0;
        let mut max_size = 0;
        let mut violations = Vec::new();
        let mut record = |start: usize, edge_ids: &[usize], fixers: &ElementSet| {
            paths_checked += 1;
            let size = fixers.count();
            max_size = max_size.max(size);
            if bound_applies && size as u128 > bound {
                let v = &tree.vertices[start];
                violations.push(Violation {
                    start: format!("{}:{}", v.side, format_normal_form(graph, &v.rep)),
                    edges: edge_ids
                        .iter()
                        .map(|&i| format_normal_form(graph, &tree.edges[i].edge.rep))
                        .collect(),
                    stabilizer_size: size,
                });
            }
        };

        if config.k == 0 {
            for (i, v) in tree.vertices.iter().enumerate() {
                let fixers = ElementSet::from_fn(n, |j| self.fixes_vertex(&elements[j], v));
                record(i, &[], &fixers);
            }
        } else {
            for start in 0..tree.vertices.len() {
                // (vertex, previous vertex, edges so far)
                let mut stack: Vec<(usize, Option<usize>, Vec<usize>)> = vec![(start, None, Vec::new())];
                while let Some((at, prev, edges)) = stack.pop() {
                    if edges.len() == config.k {
                        // Each path is found from both ends; keep one.
                        if at > start {
                            let mut fixers = edge_fixers[edges[0]].clone();
                            for &e in &edges[1..] {
                                fixers.intersect(&edge_fixers[e]);
                            }
                            record(start, &edges, &fixers);
                        }
                        continue;
                    }
                    for &(next, e) in &adj[at] {
                        if Some(next) == prev {
                            continue;
                        }
                        let mut more = edges.clone();
                        more.push(e);
                        stack.push((next, Some(at), more));
                    }
                }
            }
        }

        let finite_only = self.pres.orders().iter().all(|o| o.is_finite());
        Ok(AuditReport {
            splitting: self.splitting.clone(),
            k: config.k,
            tree_radius: config.tree_radius,
            element_radius: config.element_radius,
            local_radius: config.local_radius,
            exp_bound: config.policy.exp_bound,
            tree_vertices: tree.vertices.len(),
            tree_edges: tree.edges.len(),
            tree_truncated: tree.truncated,
            group_ball_size: n,
            paths_checked,
            max_stabilizer_size: max_size,
            bound,
            bound_applies,
            evidence: if finite_only {
                "exhaustive within the stated radii"
            } else {
                "bounded evidence only"
            },
            violations,
        })
    }
}
