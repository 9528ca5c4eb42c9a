//! Decision procedures for graph products of cyclic groups.
//!
//! With `diam(Γ) >= 2`, the product is acylindrically arboreal exactly when
//! it is not virtually cyclic and some pair of vertices is *separated*: at
//! edge distance at least 2, with a common link generating a finite full
//! subgroup. The witnessing action is on the Bass-Serre tree of
//! `G_{V-b} *_{G_{V-a-b}} G_{V-a}`, which is `(3, |G_N|)`-acylindrical for
//! `N = link({a, b})`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distance, VertexSet};
use crate::word::{GroupOrder, Order, PresentationGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Arboreality {
    AcylArboreal,
    NotAcylArboreal,
    /// Not produced for cyclic vertex groups; part of the report schema.
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VirtuallyCyclic {
    Yes,
    No,
    /// Not produced for cyclic vertex groups; part of the report schema.
    NotCovered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AhCriterion {
    AHByIrreducibility,
    VirtuallyCyclic,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubgroupCheck {
    AAorVC,
    Unknown,
}

/// A separated pair with the data needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatedPair {
    #[serde(skip)]
    pub a: usize,
    #[serde(skip)]
    pub b: usize,
    #[serde(skip)]
    pub link: VertexSet,
    #[serde(rename = "a")]
    pub a_name: String,
    #[serde(rename = "b")]
    pub b_name: String,
    #[serde(rename = "link")]
    pub link_names: Vec<String>,
    pub link_order: u128,
    pub distance: Distance,
}

impl SeparatedPair {
    /// Independent re-check against the graph and the order rule.
    pub fn revalidate(&self, pres: &PresentationGraph) -> bool {
        let g = pres.graph();
        let link = g.link(&VertexSet::from([self.a, self.b]));
        self.a != self.b
            && g.distance(self.a, self.b).at_least(2)
            && g.distance(self.a, self.b) == self.distance
            && link.as_ref() == Ok(&self.link)
            && pres.full_subgroup_order(&self.link) == Ok(GroupOrder::Finite(self.link_order))
    }
}

/// The amalgam `G_A *_{G_C} G_B` with `A = V - b`, `B = V - a`,
/// `C = A ∩ B`, and its acylindricity constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingSpec {
    pub pair: [String; 2],
    #[serde(rename = "A")]
    pub side_a_names: Vec<String>,
    #[serde(rename = "B")]
    pub side_b_names: Vec<String>,
    #[serde(rename = "C")]
    pub core_names: Vec<String>,
    #[serde(rename = "N")]
    pub link_names: Vec<String>,
    pub acyl_k: usize,
    pub acyl_c: GroupOrder,
    #[serde(skip)]
    pub a: usize,
    #[serde(skip)]
    pub b: usize,
    #[serde(skip)]
    pub side_a: VertexSet,
    #[serde(skip)]
    pub side_b: VertexSet,
    #[serde(skip)]
    pub core: VertexSet,
    #[serde(skip)]
    pub link: VertexSet,
}

impl SplittingSpec {
    /// Any two distinct non-adjacent vertices split the product; the
    /// constant `acyl_c` is finite exactly when the pair is separated.
    pub fn from_pair(pres: &PresentationGraph, a: usize, b: usize) -> Result<Self> {
        let g = pres.graph();
        if a >= g.len() || b >= g.len() {
            return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
        }
        if a == b || g.adjacent(a, b) {
            return Err(Error::input(format!(
                "`{}` and `{}` must be distinct and non-adjacent to split",
                g.name(a),
                g.name(b)
            )));
        }
        let all = g.all_vertices();
        let side_a: VertexSet = all.iter().copied().filter(|&v| v != b).collect();
        let side_b: VertexSet = all.iter().copied().filter(|&v| v != a).collect();
        let core: VertexSet = side_a.intersection(&side_b).copied().collect();
        let link = g.link(&VertexSet::from([a, b]))?;
        Ok(SplittingSpec {
            pair: [g.name(a).to_string(), g.name(b).to_string()],
            side_a_names: g.set_names(&side_a),
            side_b_names: g.set_names(&side_b),
            core_names: g.set_names(&core),
            link_names: g.set_names(&link),
            acyl_k: 3,
            acyl_c: pres.full_subgroup_order(&link)?,
            a,
            b,
            side_a,
            side_b,
            core,
            link,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CertificateKind {
    SeparatedPair(SeparatedPair),
    NoSeparatedPair { checked_pairs: usize },
    VirtuallyCyclicWitness { missing_edge: Option<[String; 2]> },
    CompleteGraphCase { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub splitting: Option<SplittingSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub arboreality: Arboreality,
    pub virtually_cyclic: VirtuallyCyclic,
    pub ah_criterion: AhCriterion,
    pub diameter: Distance,
    pub certificate: Certificate,
}

/// All separated pairs `(a, b)`, `a < b` in vertex order.
pub fn separated_pairs(pres: &PresentationGraph) -> Result<Vec<SeparatedPair>> {
    let g = pres.graph();
    let mut out = Vec::new();
    for a in 0..g.len() {
        let dist = g.bfs(a);
        for (b, d) in dist.iter().enumerate().skip(a + 1) {
            let distance = match *d {
                Some(d) => Distance::Finite(d),
                None => Distance::Infinite,
            };
            if !distance.at_least(2) {
                continue;
            }
            let link = g.link(&VertexSet::from([a, b]))?;
            if let GroupOrder::Finite(order) = pres.full_subgroup_order(&link)? {
                out.push(SeparatedPair {
                    a,
                    b,
                    a_name: g.name(a).to_string(),
                    b_name: g.name(b).to_string(),
                    link_names: g.set_names(&link),
                    link,
                    link_order: order,
                    distance,
                });
            }
        }
    }
    Ok(out)
}

/// The unique non-edge of a complete graph minus one edge, if that is
/// what `Γ` is.
fn single_missing_edge(pres: &PresentationGraph) -> Option<(usize, usize)> {
    let g = pres.graph();
    let mut missing = None;
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            if !g.adjacent(u, v) {
                if missing.is_some() {
                    return None;
                }
                missing = Some((u, v));
            }
        }
    }
    missing
}

fn infinite_vertices(pres: &PresentationGraph) -> usize {
    pres.orders().iter().filter(|o| !o.is_finite()).count()
}

/// For `diam >= 2`: virtually cyclic iff `Γ` is complete minus one edge, all
/// orders are finite, and both ends of the missing edge have order 2. For a
/// complete graph the product is `Z^k × finite`, virtually cyclic iff
/// `k <= 1`.
pub fn is_virtually_cyclic(pres: &PresentationGraph) -> Result<VirtuallyCyclic> {
    let g = pres.graph();
    if !g.diameter()?.at_least(2) {
        return Ok(if infinite_vertices(pres) <= 1 {
            VirtuallyCyclic::Yes
        } else {
            VirtuallyCyclic::No
        });
    }
    let yes = match single_missing_edge(pres) {
        Some((u, v)) => {
            pres.orders().iter().all(|o| o.is_finite())
                && pres.order(u) == Order::Finite(2)
                && pres.order(v) == Order::Finite(2)
        }
        None => false,
    };
    Ok(if yes {
        VirtuallyCyclic::Yes
    } else {
        VirtuallyCyclic::No
    })
}

pub fn ah_criterion(pres: &PresentationGraph) -> Result<AhCriterion> {
    if is_virtually_cyclic(pres)? == VirtuallyCyclic::Yes {
        return Ok(AhCriterion::VirtuallyCyclic);
    }
    Ok(if pres.graph().is_irreducible()? {
        AhCriterion::AHByIrreducibility
    } else {
        AhCriterion::Inconclusive
    })
}

fn complete_graph_reason(pres: &PresentationGraph) -> String {
    match infinite_vertices(pres) {
        0 => "complete graph with finite vertex groups: the product is finite".into(),
        1 => "complete graph with one infinite vertex group: the product is Z x finite, \
              virtually cyclic"
            .into(),
        k => format!(
            "complete graph with {k} infinite vertex groups: the product is a direct product \
             of two infinite groups, which acts elliptically on every tree"
        ),
    }
}

/// The acylindrical-arboreality verdict with its certificate.
///
/// The witness is the separated pair with the smallest `|G_N|`, first in
/// vertex order among those.
pub fn classify(pres: &PresentationGraph) -> Result<Verdict> {
    let g = pres.graph();
    let diameter = g.diameter()?;
    let virtually_cyclic = is_virtually_cyclic(pres)?;
    let ah = ah_criterion(pres)?;
    let not_aa = |kind| Verdict {
        arboreality: Arboreality::NotAcylArboreal,
        virtually_cyclic,
        ah_criterion: ah,
        diameter,
        certificate: Certificate {
            kind,
            splitting: None,
        },
    };

    if !diameter.at_least(2) {
        return Ok(not_aa(CertificateKind::CompleteGraphCase {
            reason: complete_graph_reason(pres),
        }));
    }
    if virtually_cyclic == VirtuallyCyclic::Yes {
        let missing_edge =
            single_missing_edge(pres).map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()]);
        return Ok(not_aa(CertificateKind::VirtuallyCyclicWitness { missing_edge }));
    }
    let pairs = separated_pairs(pres)?;
    // Smallest |G_N| gives the sharpest constant; ties go to vertex order.
    let Some(first) = pairs.into_iter().min_by_key(|p| p.link_order) else {
        let n = g.len();
        return Ok(not_aa(CertificateKind::NoSeparatedPair {
            checked_pairs: n * (n - 1) / 2 - g.edge_count(),
        }));
    };
    let splitting = SplittingSpec::from_pair(pres, first.a, first.b)?;
    Ok(Verdict {
        arboreality: Arboreality::AcylArboreal,
        virtually_cyclic,
        ah_criterion: ah,
        diameter,
        certificate: Certificate {
            kind: CertificateKind::SeparatedPair(first),
            splitting: Some(splitting),
        },
    })
}

/// Sufficient condition for a full subgroup `G_S`: if the induced product
/// has a separated pair, `G_S` is acylindrically arboreal or virtually
/// cyclic. The converse fails, so a negative answer is `Unknown`.
pub fn full_subgroup_check(pres: &PresentationGraph, subset: &VertexSet) -> Result<SubgroupCheck> {
    if subset.len() <= 1 {
        return Err(Error::Degenerate(
            "a full subgroup on at most one vertex is a degenerate product".into(),
        ));
    }
    let induced = pres.induced(subset)?;
    Ok(if separated_pairs(&induced)?.is_empty() {
        SubgroupCheck::Unknown
    } else {
        SubgroupCheck::AAorVC
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn path(n: usize) -> SimpleGraph {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_indices(&names, &edges).unwrap()
    }

    fn o2(orders: [Order; 2]) -> PresentationGraph {
        PresentationGraph::new(
            SimpleGraph::from_indices(&["a", "b"], &[]).unwrap(),
            orders.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn p4_racg_has_distance_three_pair() {
        let p4 = PresentationGraph::racg(path(4)).unwrap();
        let pairs = separated_pairs(&p4).unwrap();
        let ad = pairs.iter().find(|p| p.a == 0 && p.b == 3).unwrap();
        assert!(ad.link.is_empty());
        assert_eq!(ad.link_order, 1);
        assert!(pairs.iter().all(|p| p.revalidate(&p4)));
    }

    #[test]
    fn p3_raag_has_no_separated_pair() {
        let p3 = PresentationGraph::raag(path(3)).unwrap();
        assert!(separated_pairs(&p3).unwrap().is_empty());
        let v = classify(&p3).unwrap();
        assert_eq!(v.arboreality, Arboreality::NotAcylArboreal);
        assert_eq!(
            v.certificate.kind,
            CertificateKind::NoSeparatedPair { checked_pairs: 1 }
        );
        assert_eq!(ah_criterion(&p3).unwrap(), AhCriterion::Inconclusive);
    }

    #[test]
    fn virtual_cyclicity_examples() {
        assert_eq!(
            is_virtually_cyclic(&o2([Order::Finite(2), Order::Finite(2)])).unwrap(),
            VirtuallyCyclic::Yes
        );
        assert_eq!(
            is_virtually_cyclic(&o2([Order::Finite(2), Order::Finite(3)])).unwrap(),
            VirtuallyCyclic::No
        );
        assert_eq!(
            is_virtually_cyclic(&PresentationGraph::racg(path(4)).unwrap()).unwrap(),
            VirtuallyCyclic::No
        );
        // K3 minus an edge with Z2 endpoints and a Z3 middle: Z3 × D∞.
        let k3e = PresentationGraph::new(
            path(3),
            vec![Order::Finite(2), Order::Finite(3), Order::Finite(2)],
        )
        .unwrap();
        assert_eq!(is_virtually_cyclic(&k3e).unwrap(), VirtuallyCyclic::Yes);
    }

    #[test]
    fn complete_graph_virtual_cyclicity() {
        let k2 = |a, b| PresentationGraph::new(path(2), vec![a, b]).unwrap();
        assert_eq!(
            is_virtually_cyclic(&k2(Order::Infinite, Order::Finite(3))).unwrap(),
            VirtuallyCyclic::Yes
        );
        assert_eq!(
            is_virtually_cyclic(&k2(Order::Infinite, Order::Infinite)).unwrap(),
            VirtuallyCyclic::No
        );
        assert_eq!(
            is_virtually_cyclic(&k2(Order::Finite(2), Order::Finite(5))).unwrap(),
            VirtuallyCyclic::Yes
        );
        let v = classify(&k2(Order::Infinite, Order::Infinite)).unwrap();
        assert_eq!(v.arboreality, Arboreality::NotAcylArboreal);
        assert!(matches!(
            v.certificate.kind,
            CertificateKind::CompleteGraphCase { .. }
        ));
    }

    #[test]
    fn classify_examples() {
        let p4 = PresentationGraph::racg(path(4)).unwrap();
        let v = classify(&p4).unwrap();
        assert_eq!(v.arboreality, Arboreality::AcylArboreal);
        assert_eq!(v.virtually_cyclic, VirtuallyCyclic::No);
        let CertificateKind::SeparatedPair(pair) = &v.certificate.kind else {
            panic!("expected a separated pair");
        };
        assert_eq!((pair.a, pair.b), (0, 3));
        let split = v.certificate.splitting.as_ref().unwrap();
        assert_eq!(split.acyl_k, 3);
        assert_eq!(split.acyl_c, GroupOrder::Finite(1));
        assert_eq!(split.side_a, VertexSet::from([0, 1, 2]));
        assert_eq!(split.side_b, VertexSet::from([1, 2, 3]));
        assert_eq!(split.core, VertexSet::from([1, 2]));

        let d_inf = classify(&o2([Order::Finite(2), Order::Finite(2)])).unwrap();
        assert_eq!(d_inf.arboreality, Arboreality::NotAcylArboreal);
        assert!(matches!(
            d_inf.certificate.kind,
            CertificateKind::VirtuallyCyclicWitness { .. }
        ));
        assert_eq!(
            ah_criterion(&o2([Order::Finite(2), Order::Finite(2)])).unwrap(),
            AhCriterion::VirtuallyCyclic
        );

        let z2_z3 = classify(&o2([Order::Finite(2), Order::Finite(3)])).unwrap();
        assert_eq!(z2_z3.arboreality, Arboreality::AcylArboreal);
    }

    #[test]
    fn full_subgroup_check_examples() {
        let p4 = PresentationGraph::racg(path(4)).unwrap();
        assert_eq!(
            full_subgroup_check(&p4, &p4.graph().all_vertices()).unwrap(),
            SubgroupCheck::AAorVC
        );
        let p3 = PresentationGraph::raag(path(3)).unwrap();
        assert_eq!(
            full_subgroup_check(&p3, &p3.graph().all_vertices()).unwrap(),
            SubgroupCheck::Unknown
        );
        assert!(matches!(
            full_subgroup_check(&p3, &VertexSet::from([0])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn splitting_requires_non_adjacent_pair() {
        let p4 = PresentationGraph::racg(path(4)).unwrap();
        assert!(SplittingSpec::from_pair(&p4, 0, 1).is_err());
        assert!(SplittingSpec::from_pair(&p4, 2, 2).is_err());
        let split = SplittingSpec::from_pair(&p4, 0, 2).unwrap();
        assert_eq!(split.acyl_c, GroupOrder::Finite(2));
    }

    #[test]
    fn verdict_serializes_with_names() {
        let p4 = PresentationGraph::racg(path(4)).unwrap();
        let json = serde_json::to_value(classify(&p4).unwrap()).unwrap();
        assert_eq!(json["arboreality"], "AcylArboreal");
        assert_eq!(json["certificate"]["kind"], "SeparatedPair");
        assert_eq!(json["certificate"]["a"], "a");
        assert_eq!(json["certificate"]["b"], "d");
        assert_eq!(json["certificate"]["splitting"]["acyl_c"], 1);
        assert_eq!(
            json["certificate"]["splitting"]["C"],
            serde_json::json!(["b", "c"])
        );
    }
}
