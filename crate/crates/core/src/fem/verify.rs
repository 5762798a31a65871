use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::assemble::{assemble, System};
use super::eigen::{eigen_residual, eigs, EigenResult};
use super::mesh::mesh_tile;
use super::FemError;
use crate::algebra::transplant_vector;
use crate::geometry::DiscretizedVolume;

/// Mesh, assemble and solve for the lowest `k` eigenpairs.
pub fn solve(dv: &DiscretizedVolume, refinement: usize, k: usize) -> Result<(System, EigenResult), FemError> {
    let mesh = mesh_tile(refinement)?;
    let sys = assemble(dv, &mesh)?;
    let mut eig = eigs(&sys.stiffness, &sys.mass, k)?;
    eig.refinement = Some(refinement);
    Ok((sys, eig))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectraLevel {
    pub refinement: usize,
    pub values1: Vec<f64>,
    pub values2: Vec<f64>,
    /// `|l1 - l2| / l1` per index
    pub rel_diffs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectraComparison {
    pub levels: Vec<SpectraLevel>,
}

impl SpectraComparison {
    pub fn max_rel_diff(&self, refinement: usize) -> Option<f64> {
        self.levels
            .iter()
            .find(|l| l.refinement == refinement)
            .map(|l| l.rel_diffs.iter().fold(0.0, |a: f64, &b| a.max(b)))
    }

    /// Ratio of the largest relative difference at the coarsest level to
    /// that at the finest. Above 1 means the gap shrinks under refinement.
    pub fn shrink_factor(&self) -> Option<f64> {
        let first = self.levels.first()?;
        let last = self.levels.last()?;
        let a = self.max_rel_diff(first.refinement)?;
        let b = self.max_rel_diff(last.refinement)?;
        Some(a / b)
    }
}

pub fn compare_spectra(
    dv1: &DiscretizedVolume,
    dv2: &DiscretizedVolume,
    k: usize,
    refinements: &[usize],
) -> Result<SpectraComparison, FemError> {
    let mut levels = Vec::new();
    for &r in refinements {
        let (_, e1) = solve(dv1, r, k)?;
        let (_, e2) = solve(dv2, r, k)?;
        let rel_diffs = e1.values.iter().zip(&e2.values).map(|(a, b)| (a - b).abs() / a.abs()).collect();
        levels.push(SpectraLevel { refinement: r, values1: e1.values, values2: e2.values, rel_diffs });
    }
    Ok(SpectraComparison { levels })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransplantCheck {
    pub index: usize,
    pub eigenvalue: f64,
    /// residual of the source eigenpair on the first volume
    pub native_residual: f64,
    /// `||K phi - lambda M phi|| / ||phi||` on the second volume
    pub eigen_residual: f64,
    /// norm of the transplanted values on Dirichlet nodes, relative to the field
    pub boundary_violation: f64,
    /// spread between copies' values at shared nodes, relative to the field
    pub disagreement: f64,
}

/// Carries each eigenfunction of the first volume through `m` copy by copy
/// and measures how far it is from an eigenfunction of the second.
pub fn verify_transplantation(
    sys1: &System,
    sys2: &System,
    m: &DMatrix<f64>,
    eig1: &EigenResult,
) -> Result<Vec<TransplantCheck>, FemError> {
    let (m1, m2) = (&sys1.mesh, &sys2.mesh);
    if m1.n_copies() != m2.n_copies() || m1.node_map(0).len() != m2.node_map(0).len() {
        return Err(FemError::MeshMismatch("volumes meshed with different tile meshes or copy counts".into()));
    }
    let mut out = Vec::new();
    for (index, (v, &lambda)) in eig1.vectors.iter().zip(&eig1.values).enumerate() {
        let f1 = m1.per_copy(&m1.expand(v.as_slice()));
        let f2 = transplant_vector(m, &f1)?;
        // average the copies meeting at each node of the second volume
        let n = m2.n_nodes();
        let mut first: Vec<Option<f64>> = vec![None; n];
        let mut dev_sum = vec![0.0; n];
        let mut count = vec![0usize; n];
        for (c, vals) in f2.iter().enumerate() {
            for (r, &val) in vals.iter().enumerate() {
                let g = m2.node_map(c)[r];
                let base = *first[g].get_or_insert(val);
                dev_sum[g] += val - base;
                count[g] += 1;
            }
        }
        let nodal: Vec<f64> = (0..n).map(|g| first[g].unwrap_or(0.0) + dev_sum[g] / count[g].max(1) as f64).collect();
        let mut spread = 0.0;
        for (c, vals) in f2.iter().enumerate() {
            for (r, &val) in vals.iter().enumerate() {
                spread += (val - nodal[m2.node_map(c)[r]]).powi(2);
            }
        }
        let scale = nodal.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        let boundary: f64 = (0..n).filter(|&g| m2.is_dirichlet(g)).map(|g| nodal[g] * nodal[g]).sum::<f64>().sqrt();
        let phi = DVector::from_vec(m2.restrict_free(&nodal));
        out.push(TransplantCheck {
            index,
            eigenvalue: lambda,
            native_residual: eig1.residuals[index],
            eigen_residual: eigen_residual(&sys2.stiffness, &sys2.mass, &phi, lambda),
            boundary_violation: boundary / scale,
            disagreement: spread.sqrt() / scale,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HerschTag {
    /// `F_i = w_i Phi` for one function `Phi`
    WType,
    /// `sum_i w_i F_i = 0`
    WOrthogonal,
    Neither,
}

/// Tags each eigenfunction by how its per-copy restrictions relate to the
/// checkerboard vector `w`. Comparisons are relative to the largest
/// restriction norm.
pub fn hersch_classify(sys: &System, eig: &EigenResult, w: &[i64], tol: f64) -> Vec<HerschTag> {
    let mesh = &sys.mesh;
    eig.vectors
        .iter()
        .map(|v| {
            let f = mesh.per_copy(&mesh.expand(v.as_slice()));
            let norm = |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>().sqrt();
            let scale = f.iter().map(|x| norm(x)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let signed: Vec<Vec<f64>> = f.iter().zip(w).map(|(x, &s)| x.iter().map(|t| t * s as f64).collect()).collect();
            let w_type = signed.iter().all(|g| {
                let d: Vec<f64> = g.iter().zip(&signed[0]).map(|(a, b)| a - b).collect();
                norm(&d) <= tol * scale
            });
            if w_type {
                return HerschTag::WType;
            }
            let total: Vec<f64> = (0..signed[0].len()).map(|r| signed.iter().map(|g| g[r]).sum()).collect();
            if norm(&total) <= tol * scale {
                HerschTag::WOrthogonal
            } else {
                HerschTag::Neither
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::checkerboard;
    use crate::geometry::{apply_word, Tile};
    use crate::label::Label::{self, *};

    fn square() -> DiscretizedVolume {
        let tile = Tile::new([1.0, 1.0, std::f64::consts::SQRT_2], Label::ALL).unwrap();
        apply_word(&tile, &[Gamma]).unwrap()
    }

    #[test]
    fn unit_square_spectrum() {
        let (_, e) = solve(&square(), 4, 3).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((e.values[0] - 2.0 * pi2).abs() / (2.0 * pi2) < 0.02);
        assert!((e.values[1] - 5.0 * pi2).abs() / (5.0 * pi2) < 0.05);
        assert!((e.values[2] - 5.0 * pi2).abs() / (5.0 * pi2) < 0.05);
        assert!(e.values.iter().all(|&l| l > 0.0));
    }

    #[test]
    fn refinement_is_monotone_and_extrapolates() {
        // equilateral side 1: lambda_1 = 16 pi^2 / 3
        let dv = apply_word(&Tile::equilateral(), &[]).unwrap();
        let exact = 16.0 * std::f64::consts::PI.powi(2) / 3.0;
        let l: Vec<f64> = (2..=5).map(|r| solve(&dv, r, 1).unwrap().1.values[0]).collect();
        for w in l.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(l.iter().all(|&x| x > exact));
        // second order convergence: Richardson from the two finest levels
        let rich = (4.0 * l[3] - l[2]) / 3.0;
        assert!((rich - exact).abs() / exact < (l[3] - exact) / exact / 5.0);
    }

    #[test]
    fn isometric_images_share_spectra() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let a = apply_word(&tile, &[Alpha, Beta, Gamma]).unwrap();
        let c = compare_spectra(&a, &a.mirrored(), 4, &[3]).unwrap();
        assert!(c.max_rel_diff(3).unwrap() < 1e-12);
    }

    #[test]
    fn domain_monotonicity() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let small = apply_word(&tile, &[Alpha, Beta]).unwrap();
        let big = apply_word(&tile, &[Alpha, Beta, Gamma]).unwrap();
        let ls = solve(&small, 3, 1).unwrap().1.values[0];
        let lb = solve(&big, 3, 1).unwrap().1.values[0];
        assert!(ls >= lb);
    }

    #[test]
    fn identity_transplant_is_native() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let dv = apply_word(&tile, &[Alpha, Beta, Gamma]).unwrap();
        let (sys, e) = solve(&dv, 3, 4).unwrap();
        let checks = verify_transplantation(&sys, &sys, &DMatrix::identity(4, 4), &e).unwrap();
        for c in &checks {
            assert_eq!(c.eigen_residual, c.native_residual);
            assert_eq!(c.boundary_violation, 0.0);
            assert_eq!(c.disagreement, 0.0);
        }
    }

    #[test]
    fn automorphism_transplant_keeps_residual() {
        // a square of two copies: swapping them is a symmetry
        let dv = square();
        let (sys, e) = solve(&dv, 3, 4).unwrap();
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        for c in verify_transplantation(&sys, &sys, &swap, &e).unwrap() {
            assert!((c.eigen_residual - c.native_residual).abs() < 1e-13);
            assert!(c.disagreement < 1e-14);
        }
    }

    #[test]
    fn hersch_tags_for_one_and_two_copies() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let one = apply_word(&tile, &[]).unwrap();
        let (sys, e) = solve(&one, 3, 4).unwrap();
        assert!(hersch_classify(&sys, &e, &[1], 1e-9).iter().all(|&t| t == HerschTag::WType));

        let two = apply_word(&tile, &[Alpha]).unwrap();
        let w = checkerboard(&two).unwrap();
        let (sys, e) = solve(&two, 3, 6).unwrap();
        let tags = hersch_classify(&sys, &e, &w, 1e-8);
        // oracle: split each mode into parts even and odd under the swap of copies
        for (v, tag) in e.vectors.iter().zip(&tags) {
            let f = sys.mesh.per_copy(&sys.mesh.expand(v.as_slice()));
            let even: f64 = f[0].iter().zip(&f[1]).map(|(a, b)| (a + b).powi(2)).sum::<f64>().sqrt();
            let odd: f64 = f[0].iter().zip(&f[1]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let expect = if even < 1e-8 * odd { HerschTag::WType } else if odd < 1e-8 * even { HerschTag::WOrthogonal } else { HerschTag::Neither };
            assert_eq!(*tag, expect);
            assert_ne!(*tag, HerschTag::Neither);
        }
    }
}
