//! The algebra of a graph product of cyclic groups.
//!
//! An element is a word of syllables `(vertex, exponent)`. Reduction deletes
//! trivial syllables and joins two syllables on the same vertex whenever every
//! syllable between them lies in that vertex's link. Reduced words for one
//! element differ only by syllable shuffling, so each element has a unique
//! canonical representative: the shuffle that repeatedly moves the smallest
//! available vertex to the front.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

/// Order of a vertex group: `Z_n` for `n >= 2`, or `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Order of a subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(u128),
    Infinite,
}

impl GroupOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, GroupOrder::Finite(_))
    }

    pub fn finite(self) -> Option<u128> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupOrder::Finite(n) => s.serialize_u128(*n),
            GroupOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

/// One letter of a word: a nonzero power of a vertex generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    vertex: usize,
    exponent: BigInt,
}

impl Syllable {
    pub fn new(vertex: usize, exponent: impl Into<BigInt>) -> Result<Self> {
        let exponent = exponent.into();
        if exponent.is_zero() {
            return Err(Error::input("syllable exponent must be nonzero"));
        }
        Ok(Syllable { vertex, exponent })
    }

    pub fn vertex(&self) -> usize {
        self.vertex
    }

    pub fn exponent(&self) -> &BigInt {
        &self.exponent
    }
}

/// A finite sequence of syllables; not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    /// Convenience constructor from `(vertex, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(v, e)| Syllable::new(v, e))
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        Word { syllables }
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }
}

/// The canonical reduced representative of a group element.
///
/// Only [`PresentationGraph`] constructs these, so equality of normal forms
/// is equality of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syllable length `|g|`; the identity has length 0, see `is_identity`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::new(self.syllables.clone())
    }

    /// Vertices carrying a syllable.
    pub fn support(&self) -> VertexSet {
        self.syllables.iter().map(|s| s.vertex).collect()
    }
}

/// Generator set used when enumerating balls in the Cayley graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallPolicy {
    /// Largest `|exponent|` used for infinite-order vertices.
    pub exp_bound: u64,
    /// Maximum number of elements a ball may contain.
    pub cap: usize,
}

impl Default for BallPolicy {
    fn default() -> Self {
        BallPolicy {
            exp_bound: 1,
            cap: 1_000_000,
        }
    }
}

/// A finite simple graph with a cyclic group attached to each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationGraph {
    graph: SimpleGraph,
    orders: Vec<Order>,
}

impl PresentationGraph {
    /// Rejects degenerate products: fewer than two vertices, or a vertex of
    /// order below 2.
    pub fn new(graph: SimpleGraph, orders: Vec<Order>) -> Result<Self> {
        if orders.len() != graph.len() {
            return Err(Error::input(format!(
                "{} orders given for {} vertices",
                orders.len(),
                graph.len()
            )));
        }
        if graph.len() < 2 {
            return Err(Error::Degenerate(
                "a graph product needs at least two vertices".into(),
            ));
        }
        for (v, o) in orders.iter().enumerate() {
            if let Order::Finite(n) = o {
                if *n < 2 {
                    return Err(Error::Degenerate(format!(
                        "vertex `{}` has order {n}; vertex groups must be nontrivial",
                        graph.name(v)
                    )));
                }
            }
        }
        Ok(PresentationGraph { graph, orders })
    }

    /// Every vertex group `Z_2`.
    pub fn racg(graph: SimpleGraph) -> Result<Self> {
        let orders = vec![Order::Finite(2); graph.len()];
        Self::new(graph, orders)
    }

    /// Every vertex group `Z`.
    pub fn raag(graph: SimpleGraph) -> Result<Self> {
        let orders = vec![Order::Infinite; graph.len()];
        Self::new(graph, orders)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn order(&self, v: usize) -> Order {
        self.orders[v]
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    /// Sub-graph product on `subset` with inherited orders.
    pub fn induced(&self, subset: &VertexSet) -> Result<PresentationGraph> {
        let graph = self.graph.induced_subgraph(subset)?;
        let orders = subset.iter().map(|&v| self.orders[v]).collect();
        PresentationGraph::new(graph, orders)
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm::default()
    }

    /// Canonical exponent of `v^e`, or `None` when it is trivial.
    fn normalize_exponent(&self, v: usize, e: &BigInt) -> Option<BigInt> {
        let e = match self.orders[v] {
            Order::Finite(n) => e.mod_floor(&BigInt::from(n)),
            Order::Infinite => e.clone(),
        };
        (!e.is_zero()).then_some(e)
    }

    fn check_vertices<'a>(&self, syllables: impl IntoIterator<Item = &'a Syllable>) -> Result<()> {
        for s in syllables {
            if s.vertex >= self.graph.len() {
                return Err(Error::UnknownVertex(format!("#{}", s.vertex)));
            }
        }
        Ok(())
    }

    /// Rejects normal forms that cannot belong to this presentation.
    pub fn check(&self, g: &NormalForm) -> Result<()> {
        self.check_vertices(&g.syllables)?;
        for s in &g.syllables {
            if self.normalize_exponent(s.vertex, &s.exponent).as_ref() != Some(&s.exponent) {
                return Err(Error::input(format!(
                    "exponent {} is not canonical for vertex `{}`",
                    s.exponent,
                    self.graph.name(s.vertex)
                )));
            }
        }
        if self.canonical_order(g.syllables.clone()) != g.syllables {
            return Err(Error::input(
                "element is not in canonical form for this presentation",
            ));
        }
        Ok(())
    }

    /// Green reduction: the result is reduced and represents the same
    /// element. Syllables are processed left to right against an already
    /// reduced prefix, so one backwards scan per syllable suffices.
    pub fn reduce(&self, w: &Word) -> Result<Word> {
        self.check_vertices(&w.syllables)?;
        let mut out: Vec<Syllable> = Vec::with_capacity(w.len());
        'next: for s in &w.syllables {
            let Some(exp) = self.normalize_exponent(s.vertex, &s.exponent) else {
                continue;
            };
            for i in (0..out.len()).rev() {
                let u = out[i].vertex;
                if u == s.vertex {
                    match self.normalize_exponent(u, &(&out[i].exponent + &exp)) {
                        Some(e) => out[i].exponent = e,
                        None => {
                            out.remove(i);
                        }
                    }
                    continue 'next;
                }
                if !self.graph.adjacent(u, s.vertex) {
                    break;
                }
            }
            out.push(Syllable {
                vertex: s.vertex,
                exponent: exp,
            });
        }
        Ok(Word::new(out))
    }

    /// Shuffles a reduced word into canonical order: repeatedly take, among
    /// the syllables that commute past everything before them, the one on
    /// the smallest vertex.
    fn canonical_order(&self, mut rest: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best = 0;
            for i in 1..rest.len() {
                let v = rest[i].vertex;
                if v < rest[best].vertex && rest[..i].iter().all(|p| self.graph.adjacent(p.vertex, v)) {
                    best = i;
                }
            }
            out.push(rest.remove(best));
        }
        out
    }

    pub fn canonical_form(&self, w: &Word) -> Result<NormalForm> {
        let reduced = self.reduce(w)?;
        Ok(NormalForm {
            syllables: self.canonical_order(reduced.into_syllables()),
        })
    }

    pub fn multiply(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm> {
        self.check(g)?;
        self.check(h)?;
        self.canonical_form(&g.to_word().concat(&h.to_word()))
    }

    pub fn inverse(&self, g: &NormalForm) -> NormalForm {
        let syllables = g
            .syllables
            .iter()
            .rev()
            .filter_map(|s| {
                self.normalize_exponent(s.vertex, &-&s.exponent)
                    .map(|exponent| Syllable {
                        vertex: s.vertex,
                        exponent,
                    })
            })
            .collect();
        NormalForm {
            syllables: self.canonical_order(syllables),
        }
    }

    pub fn pow(&self, g: &NormalForm, n: u32) -> NormalForm {
        let mut w = Word::default();
        for _ in 0..n {
            w = w.concat(&g.to_word());
        }
        self.canonical_form(&w)
            .expect("vertices of a normal form are valid")
    }

    /// The single-syllable element `v^e`.
    pub fn syllable_element(&self, v: usize, e: i64) -> Result<NormalForm> {
        self.canonical_form(&Word::from_pairs(&[(v, e)])?)
    }

    /// `f_V(g)`: vertices whose syllable can be shuffled to the front.
    pub fn first_vertices(&self, g: &NormalForm) -> VertexSet {
        let s = &g.syllables;
        let mut out = VertexSet::new();
        for i in 0..s.len() {
            let v = s[i].vertex;
            if out.contains(&v) {
                continue;
            }
            if s[..i].iter().all(|p| self.graph.adjacent(p.vertex, v)) {
                out.insert(v);
            }
        }
        out
    }

    /// `l_V(g)`: vertices whose syllable can be shuffled to the end.
    pub fn last_vertices(&self, g: &NormalForm) -> VertexSet {
        let s = &g.syllables;
        let mut out = VertexSet::new();
        for i in (0..s.len()).rev() {
            let v = s[i].vertex;
            if out.contains(&v) {
                continue;
            }
            if s[i + 1..].iter().all(|p| self.graph.adjacent(p.vertex, v)) {
                out.insert(v);
            }
        }
        out
    }

    pub fn support(&self, g: &NormalForm) -> VertexSet {
        g.support()
    }

    /// Membership in the full subgroup `G_S`.
    pub fn in_full_subgroup(&self, g: &NormalForm, subset: &VertexSet) -> bool {
        g.syllables.iter().all(|s| subset.contains(&s.vertex))
    }

    /// `|G_S|`: finite exactly when `S` spans a clique of finite-order
    /// vertices, in which case `G_S` is their direct product. `|G_∅| = 1`.
    pub fn full_subgroup_order(&self, subset: &VertexSet) -> Result<GroupOrder> {
        if let Some(&v) = subset.iter().find(|&&v| v >= self.graph.len()) {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let clique = subset
            .iter()
            .all(|&u| subset.iter().all(|&v| u == v || self.graph.adjacent(u, v)));
        if !clique {
            return Ok(GroupOrder::Infinite);
        }
        let mut total: u128 = 1;
        for &v in subset {
            match self.orders[v] {
                Order::Infinite => return Ok(GroupOrder::Infinite),
                Order::Finite(n) => {
                    total = total.checked_mul(u128::from(n)).ok_or_else(|| Error::Resource {
                        what: "full subgroup order overflows u128".into(),
                        cap: usize::MAX,
                    })?;
                }
            }
        }
        Ok(GroupOrder::Finite(total))
    }

    /// Single-syllable generators of `G_S` under `policy`.
    pub fn generators(&self, subset: &VertexSet, policy: &BallPolicy) -> Vec<NormalForm> {
        let mut out = Vec::new();
        for &v in subset {
            let exps: Vec<BigInt> = match self.orders[v] {
                Order::Finite(n) => (1..n).map(BigInt::from).collect(),
                Order::Infinite => (1..=policy.exp_bound)
                    .flat_map(|e| [BigInt::from(e), -BigInt::from(e)])
                    .collect(),
            };
            out.extend(exps.into_iter().map(|exponent| NormalForm {
                syllables: vec![Syllable { vertex: v, exponent }],
            }));
        }
        out
    }

    /// All elements of `G` within `radius` generator steps of the identity.
    pub fn enumerate_ball(&self, radius: usize, policy: &BallPolicy) -> Result<BTreeSet<NormalForm>> {
        self.enumerate_ball_in(&self.graph.all_vertices(), radius, policy)
    }

    /// Ball of the given radius inside the full subgroup `G_S`.
    pub fn enumerate_ball_in(
        &self,
        subset: &VertexSet,
        radius: usize,
        policy: &BallPolicy,
    ) -> Result<BTreeSet<NormalForm>> {
        let gens = self.generators(subset, policy);
        let mut seen = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = self.canonical_form(&g.to_word().concat(&s.to_word()))?;
                    if seen.insert(h.clone()) {
                        if seen.len() > policy.cap {
                            return Err(Error::Resource {
                                what: "group ball".into(),
                                cap: policy.cap,
                            });
                        }
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen)
    }
}
