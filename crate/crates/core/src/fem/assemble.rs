use nalgebra_sparse::{CooMatrix, CscMatrix};
use rayon::prelude::*;

use super::mesh::{tile_mesh_positions, DvMesh, TileMesh};
use super::FemError;
use crate::geometry::DiscretizedVolume;

/// Stiffness and mass restricted to the free nodes of a volume mesh.
#[derive(Debug, Clone)]
pub struct System {
    pub stiffness: CscMatrix<f64>,
    pub mass: CscMatrix<f64>,
    pub mesh: DvMesh,
}

/// P1 element matrices of a triangle.
pub fn element_matrices(p: [[f64; 2]; 3]) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let b = [p[1][1] - p[2][1], p[2][1] - p[0][1], p[0][1] - p[1][1]];
    let c = [p[2][0] - p[1][0], p[0][0] - p[2][0], p[1][0] - p[0][0]];
    let area = 0.5 * (b[0] * c[1] - b[1] * c[0]).abs();
    let mut k = [[0.0; 3]; 3];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
            m[i][j] = area / 12.0 * if i == j { 2.0 } else { 1.0 };
        }
    }
    (k, m)
}

/// Element matrices come from the reference tile: placements are isometries,
/// so every copy reuses them unchanged.
pub fn assemble(dv: &DiscretizedVolume, mesh: &TileMesh) -> Result<System, FemError> {
    let dm = DvMesh::new(dv, mesh)?;
    let pos = tile_mesh_positions(dv.tile(), mesh);
    let local: Vec<_> = mesh.elements().iter().map(|e| element_matrices(e.map(|v| pos[v]))).collect();
    let per_copy: Vec<Vec<(usize, usize, f64, f64)>> = (0..dv.n_copies())
        .into_par_iter()
        .map(|c| {
            let map = dm.node_map(c);
            let mut t = Vec::with_capacity(9 * local.len());
            for (e, (ke, me)) in mesh.elements().iter().zip(&local) {
                let free = e.map(|v| dm.free_index(map[v]));
                for i in 0..3 {
                    let Some(fi) = free[i] else { continue };
                    for j in 0..3 {
                        if let Some(fj) = free[j] {
                            t.push((fi, fj, ke[i][j], me[i][j]));
                        }
                    }
                }
            }
            t
        })
        .collect();
    let n = dm.n_free();
    let mut k = CooMatrix::new(n, n);
    let mut m = CooMatrix::new(n, n);
    for (i, j, kv, mv) in per_copy.into_iter().flatten() {
        k.push(i, j, kv);
        m.push(i, j, mv);
    }
    Ok(System { stiffness: CscMatrix::from(&k), mass: CscMatrix::from(&m), mesh: dm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::mesh::mesh_tile;
    use crate::geometry::{apply_word, Tile};
    use crate::label::Label;

    #[test]
    fn element_matrices_reference() {
        // unit right triangle: classic P1 values
        let (k, m) = element_matrices([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let k_ref = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((k[i][j] - k_ref[i][j]).abs() < 1e-15);
                assert!((m[i][j] - if i == j { 1.0 / 12.0 } else { 1.0 / 24.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn symmetric_and_mass_totals() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let dv = apply_word(&tile, &[Label::Alpha, Label::Gamma]).unwrap();
        let s = assemble(&dv, &mesh_tile(3).unwrap()).unwrap();
        let k = nalgebra::DMatrix::from(&s.stiffness);
        let m = nalgebra::DMatrix::from(&s.mass);
        assert!((&k - k.transpose()).amax() < 1e-14);
        assert!((&m - m.transpose()).amax() < 1e-14);
        assert!(m.clone().cholesky().is_some());
        assert!(k.cholesky().is_some());
    }
}
