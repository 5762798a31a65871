//! Search for isospectral pairs among the volumes of `n` copies: enumerate,
//! filter by graph features and auxiliary spectra, look for a Sunada triple
//! inside the first volume's group, then build both transplantations.

use serde::Serialize;

use crate::algebra::{find_intertwiner, find_transplantation_for};
use crate::geometry::{are_equivalent, Tile};
use crate::graph::{
    enumerate_dv_graphs, equispectral_candidates, walk_notation, ColorMode, EnumeratedVolume,
    Enumeration, GraphError, GraphFeatures,
};
use crate::group::{action_subgroup, group_from_dv, is_sunada_triple, point_stabilizer, GroupError};

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeSummary {
    /// position in the enumeration, 1-based
    pub index: usize,
    pub walk: String,
    pub features: GraphFeatures,
}

#[derive(Debug, Clone, Serialize)]
pub struct SunadaCheck {
    pub group_order: u128,
    /// orders of the stabilizer of copy 1 and of the subgroup whose coset
    /// graph is the second volume
    pub subgroup_orders: Option<(u128, u128)>,
    pub is_sunada_triple: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransplantSummary {
    pub orthogonality_defect: f64,
    pub residual_similarity: f64,
    pub residual_qo: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub first: VolumeSummary,
    pub second: VolumeSummary,
    /// largest difference of the sorted auxiliary spectra
    pub spectral_gap: f64,
    pub sunada: SunadaCheck,
    /// congruent up to plane isometry
    pub equivalent: bool,
    pub flag: Option<String>,
    pub transplantation: Option<TransplantSummary>,
    pub transplantation_error: Option<String>,
    /// whether a copy permutation-and-sign map intertwines the gluing operators
    pub intertwiner: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub tile: [f64; 3],
    pub volumes: usize,
    pub pairs: Vec<PairReport>,
}

fn summary(i: usize, v: &EnumeratedVolume) -> VolumeSummary {
    VolumeSummary { index: i + 1, walk: walk_notation(&v.graph), features: v.features }
}

/// Whether the second volume's graph is the coset graph of an index-`n`
/// subgroup of the first volume's group under the same generators, and
/// whether that subgroup forms a Sunada triple with a point stabilizer.
pub fn sunada_check(a: &EnumeratedVolume, b: &EnumeratedVolume) -> Result<SunadaCheck, SearchError> {
    let g = group_from_dv(&a.dv);
    let h1 = point_stabilizer(&g, 0)?;
    let table: Vec<Vec<usize>> = group_from_dv(&b.dv).generators().iter().map(|p| p.images()).collect();
    Ok(match action_subgroup(&g, &table) {
        Some(h2) => SunadaCheck {
            group_order: g.order(),
            subgroup_orders: Some((h1.order(), h2.order())),
            is_sunada_triple: is_sunada_triple(&g, &h1, &h2)?,
        },
        None => SunadaCheck { group_order: g.order(), subgroup_orders: None, is_sunada_triple: false },
    })
}

pub fn search_pairs(e: &Enumeration, tile: &Tile, tol: f64) -> Result<Vec<PairReport>, SearchError> {
    let mut pairs = Vec::new();
    for c in equispectral_candidates(e, tol) {
        let (a, b) = (&e.volumes[c.first], &e.volumes[c.second]);
        let sunada = sunada_check(a, b)?;
        let equivalent = are_equivalent(&a.dv, &b.dv);
        let flag = if equivalent {
            Some("congruent volumes".to_string())
        } else if !tile.is_scalene() {
            Some("tile-symmetric: equivalence not excluded".to_string())
        } else {
            None
        };
        let (transplantation, transplantation_error) = match find_transplantation_for(&a.dv, &b.dv) {
            Ok(p) => (
                Some(TransplantSummary {
                    orthogonality_defect: p.orthogonality_defect(),
                    residual_similarity: p.residual_similarity,
                    residual_qo: p.residual_qo,
                }),
                None,
            ),
            Err(err) => (None, Some(err.to_string())),
        };
        let intertwiner = find_intertwiner(&a.dv, &b.dv).is_ok();
        pairs.push(PairReport {
            first: summary(c.first, a),
            second: summary(c.second, b),
            spectral_gap: c.spectral_gap,
            sunada,
            equivalent,
            flag,
            transplantation,
            transplantation_error,
            intertwiner,
        });
    }
    Ok(pairs)
}

pub fn isospectral_search(tile: &Tile, n: usize, tol: f64) -> Result<SearchReport, SearchError> {
    let e = enumerate_dv_graphs(tile, n, ColorMode::TileSymmetry)?;
    let pairs = search_pairs(&e, tile, tol)?;
    Ok(SearchReport { n, tile: tile.lengths(), volumes: e.volumes.len(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_pairs_for_two_copies() {
        let r = isospectral_search(&Tile::equilateral(), 2, 1e-9).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.volumes, 1);
    }
}
