//! Edge-coloured graphs of discretized volumes: isomorphism, canonical
//! forms, enumeration of realizable volumes and classification features.

mod candidates;
mod canonical;
mod colored;
mod enumerate;
mod notation;

pub use candidates::{auxiliary_of_graph, equispectral_candidates, CandidatePair};
pub use canonical::{canonical_form, canonical_form_modulo, colored_isomorphic, MAX_CANONICAL_VERTICES};
pub use colored::{ColoredGraph, Edge};
pub use enumerate::{enumerate_dv_graphs, ColorMode, EnumeratedVolume, Enumeration, MAX_ENUMERATION_N};
pub use notation::{parse_walk, walk_notation};

use serde::{Deserialize, Serialize};

use crate::geometry::DiscretizedVolume;
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge from vertex {0} to itself")]
    SelfLoop(usize),
    #[error("vertex {vertex} already has an edge coloured {color}")]
    ColorConflict { vertex: usize, color: Label },
    #[error("graph with {0} vertices exceeds the canonical-form limit")]
    GraphTooLarge(usize),
    #[error("number of copies {0} outside the supported range 1..=9")]
    NOutOfRange(usize),
    #[error("cannot parse walk notation: {0}")]
    Parse(String),
}

/// Classification features of a volume graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphFeatures {
    /// vertices of degree three
    pub n3: usize,
    /// internal sides per label (alpha, beta, gamma)
    pub nisb: [usize; 3],
    pub group_order: u128,
}

/// One vertex per copy, one coloured edge per internal side.
pub fn graph_from_dv(dv: &DiscretizedVolume) -> ColoredGraph {
    let mut g = ColoredGraph::new(dv.n_copies());
    for s in dv.internal_sides() {
        g.add_edge(s.a, s.b, s.label).expect("a volume glues each side at most once");
    }
    g
}

pub fn features(g: &ColoredGraph, group_order: u128) -> GraphFeatures {
    let n3 = (0..g.n_vertices()).filter(|&v| g.degree(v) == 3).count();
    GraphFeatures { n3, nisb: g.color_counts(), group_order }
}
