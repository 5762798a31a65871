use super::enumerate::Enumeration;
use super::ColoredGraph;
use crate::algebra::spectrum;
use nalgebra::DMatrix;

/// Two enumerated volumes with equal features and equal auxiliary spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePair {
    pub first: usize,
    pub second: usize,
    /// largest eigenvalue difference of the auxiliary matrices
    pub spectral_gap: f64,
}

/// Auxiliary matrix `X = D + A` read off a graph.
pub fn auxiliary_of_graph(g: &ColoredGraph) -> DMatrix<f64> {
    let n = g.n_vertices();
    let mut x = DMatrix::zeros(n, n);
    for e in g.edges() {
        x[(e.u, e.v)] += 1.0;
        x[(e.v, e.u)] += 1.0;
        x[(e.u, e.u)] += 1.0;
        x[(e.v, e.v)] += 1.0;
    }
    x
}

/// Pairs of non-isomorphic volumes sharing features and auxiliary spectra
/// (to `tol`). Equal features and spectra are a filter, not a proof.
pub fn equispectral_candidates(e: &Enumeration, tol: f64) -> Vec<CandidatePair> {
    let spectra: Vec<Vec<f64>> = e
        .volumes
        .iter()
        .map(|v| spectrum(&auxiliary_of_graph(&v.graph)).expect("auxiliary matrices are symmetric"))
        .collect();
    let mut out = Vec::new();
    for i in 0..e.volumes.len() {
        for j in i + 1..e.volumes.len() {
            let (a, b) = (&e.volumes[i], &e.volumes[j]);
            if a.features != b.features || a.key == b.key {
                continue;
            }
            let gap = spectra[i].iter().zip(&spectra[j]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if gap < tol {
                out.push(CandidatePair { first: i, second: j, spectral_gap: gap });
            }
        }
    }
    out
}
