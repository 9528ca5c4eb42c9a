//! Graph products of cyclic groups and their actions on trees.
//!
//! The crate decides when a graph product of cyclic groups admits a
//! non-elementary acylindrical action on a simplicial tree, produces the
//! witnessing amalgam splitting, and simulates the action on the associated
//! Bass-Serre tree so the acylindricity constants can be audited directly.
//!
//! Layout:
//!
//! - [`graph`]: finite simple graphs, links, diameter, complements.
//! - [`census`]: exhaustive enumeration of small graphs up to isomorphism.
//! - [`word`]: syllables, Green reduction, canonical normal forms, balls.
//! - [`classify`]: separated pairs, virtual cyclicity, verdicts.
//! - [`tree`]: Bass-Serre tree of a splitting, dynamics and audits.
//! - [`format`]: presentation files and the compact word syntax.
//! - [`dot`]: Graphviz export.

pub mod census;
pub mod classify;
pub mod dot;
pub mod error;
pub mod format;
pub mod graph;
pub mod tree;
pub mod word;

pub use classify::{
    ah_criterion, classify, full_subgroup_check, is_virtually_cyclic, separated_pairs, AhCriterion,
    Arboreality, Certificate, CertificateKind, SeparatedPair, SplittingSpec, SubgroupCheck, Verdict,
    VirtuallyCyclic,
};
pub use error::{Error, Result};
pub use graph::{Distance, SimpleGraph, VertexSet};
pub use tree::{AuditReport, BassSerreTree, ElementAction, Side, TreeEdge, TreePath, TreeVertex};
pub use word::{BallPolicy, GroupOrder, NormalForm, Order, PresentationGraph, Syllable, Word};
