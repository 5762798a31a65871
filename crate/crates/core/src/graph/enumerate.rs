//! Enumeration of realizable volumes by growth.
//!
//! Level `k + 1` is obtained from every volume at level `k` by reflecting
//! one copy through one of its boundary sides. A new copy whose other sides
//! land on existing sides of the same label (as mirror images) is glued there as well, so every
//! volume is saturated; coincident sides with different labels stay as slits.
//! Every connected volume has a copy whose removal keeps it connected, so
//! growth reaches all of them.

use std::collections::HashMap;

use rayon::prelude::*;

use super::canonical::canonical_form_modulo;
use super::colored::ColoredGraph;
use super::{features, graph_from_dv, GraphError, GraphFeatures};
use crate::geometry::exact::{interiors_overlap, SurdPoint};
use crate::geometry::{build_dv_with_copies, DiscretizedVolume, Gluing, Tile};
use crate::group::group_from_dv;
use crate::label::{Label, LabelMap};

pub const MAX_ENUMERATION_N: usize = 9;

/// How coloured graphs are identified during deduplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorMode {
    /// Colours must match exactly.
    Strict,
    /// Colours may be permuted by a symmetry of the tile, i.e. volumes are
    /// identified up to plane isometry.
    TileSymmetry,
}

#[derive(Debug, Clone)]
pub struct EnumeratedVolume {
    pub graph: ColoredGraph,
    pub features: GraphFeatures,
    pub dv: DiscretizedVolume,
    /// coincident sides left unglued (labels or corners do not match)
    pub slits: usize,
    pub key: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub n: usize,
    pub volumes: Vec<EnumeratedVolume>,
    /// growth steps rejected because the new copy overlapped
    pub overlap_rejections: usize,
}

fn same_segment(a: (&SurdPoint, &SurdPoint), b: (&SurdPoint, &SurdPoint)) -> bool {
    (a.0 == b.0 && a.1 == b.1) || (a.0 == b.1 && a.1 == b.0)
}

/// Extends `dv` by reflecting `copy` through side `l`. Returns `None` when the
/// new copy overlaps; otherwise the saturated gluing and the slit count.
fn grow(dv: &DiscretizedVolume, copy: usize, l: Label) -> Option<(Vec<Gluing>, usize)> {
    let tile = dv.tile();
    let k = dv.n_copies();
    let new = dv.placements()[copy].reflected(l, tile, k);
    if dv.placements().iter().any(|p| interiors_overlap(&p.vertices, &new.vertices)) {
        return None;
    }
    let mut gluing = dv.internal_sides().to_vec();
    let mut slits = 0;
    for m in Label::ALL {
        let side = new.side(m);
        for p in dv.placements() {
            for q in Label::ALL {
                if same_segment(side, p.side(q)) {
                    // a genuine gluing is a mirror pair across the shared side
                    if q == m && p.reflected(m, tile, k).vertices == new.vertices {
                        gluing.push(Gluing::new(p.copy_index, k, m));
                    } else {
                        slits += 1;
                    }
                }
            }
        }
    }
    Some((gluing, slits))
}

/// All connected volumes of `n` copies of `tile` up to the chosen identification,
/// each with its graph features and group order. Results are sorted by the
/// number of degree-3 vertices, then by canonical key.
pub fn enumerate_dv_graphs(tile: &Tile, n: usize, mode: ColorMode) -> Result<Enumeration, GraphError> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(GraphError::NOutOfRange(n));
    }
    let maps: Vec<LabelMap> = match mode {
        ColorMode::Strict => vec![LabelMap::IDENTITY],
        ColorMode::TileSymmetry => tile.automorphisms(),
    };
    let key_of = |g: &ColoredGraph| canonical_form_modulo(g, &maps).map(|(k, _)| k);
    let first = build_dv_with_copies(tile, &[], 1).expect("single copy");
    let mut level: Vec<(DiscretizedVolume, usize, Vec<u8>)> = vec![(first.clone(), 0, key_of(&graph_from_dv(&first))?)];
    let mut overlap_rejections = 0;
    for _ in 1..n {
        let grown: Vec<(Option<(DiscretizedVolume, usize)>, usize)> = level
            .par_iter()
            .flat_map_iter(|(dv, _, _)| {
                dv.boundary_sides().iter().map(move |&(c, l)| match grow(dv, c, l) {
                    None => (None, 1),
                    Some((gluing, slits)) => {
                        let next = build_dv_with_copies(dv.tile(), &gluing, dv.n_copies() + 1)
                            .expect("saturated growth is consistent");
                        (Some((next, slits)), 0)
                    }
                })
            })
            .collect();
        let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
        let mut next = Vec::new();
        for (item, rejected) in grown {
            overlap_rejections += rejected;
            if let Some((dv, slits)) = item {
                let key = key_of(&graph_from_dv(&dv))?;
                if seen.insert(key.clone(), ()).is_none() {
                    next.push((dv, slits, key));
                }
            }
        }
        level = next;
    }
    let mut volumes: Vec<EnumeratedVolume> = level
        .into_par_iter()
        .map(|(dv, slits, key)| {
            let graph = graph_from_dv(&dv);
            let order = group_from_dv(&dv).order();
            EnumeratedVolume { features: features(&graph, order), graph, dv, slits, key }
        })
        .collect();
    volumes.sort_by(|a, b| (a.features.n3, a.key.clone()).cmp(&(b.features.n3, b.key.clone())));
    Ok(Enumeration { n, volumes, overlap_rejections })
}
