use serde::Serialize;

use super::FemError;
use crate::geometry::{DiscretizedVolume, Tile};
use crate::label::Label;

pub const MAX_REFINEMENT: usize = 8;

/// Uniform red refinement of the reference tile. With `m = 2^r`, node
/// `(i, j)` has barycentric weights `(1 - (i+j)/m, i/m, j/m)` on the
/// corners opposite alpha, beta and gamma. Side alpha is `i + j = m`, side
/// beta is `i = 0`, side gamma is `j = 0`.
#[derive(Debug, Clone)]
pub struct TileMesh {
    refinement: usize,
    m: usize,
    lattice: Vec<[usize; 2]>,
    elements: Vec<[usize; 3]>,
    side_nodes: [Vec<usize>; 3],
}

impl TileMesh {
    pub fn refinement(&self) -> usize {
        self.refinement
    }

    /// Lattice points per side minus one.
    pub fn divisions(&self) -> usize {
        self.m
    }

    pub fn n_nodes(&self) -> usize {
        self.lattice.len()
    }

    pub fn elements(&self) -> &[[usize; 3]] {
        &self.elements
    }

    pub fn side_nodes(&self, l: Label) -> &[usize] {
        &self.side_nodes[l.index()]
    }

    pub fn node_index(&self, i: usize, j: usize) -> usize {
        // rows of constant i hold m + 1 - i nodes
        let m = self.m;
        i * (m + 1) - i * (i.saturating_sub(1)) / 2 + j
    }

    pub fn weights(&self, node: usize) -> [f64; 3] {
        let [i, j] = self.lattice[node];
        let m = self.m as f64;
        [1.0 - (i + j) as f64 / m, i as f64 / m, j as f64 / m]
    }

    /// Node position in a triangle whose corners are given by label index.
    pub fn position(&self, node: usize, corners: &[[f64; 2]; 3]) -> [f64; 2] {
        let w = self.weights(node);
        let mut p = [0.0; 2];
        for k in 0..3 {
            if w[k] != 0.0 {
                p[0] += w[k] * corners[k][0];
                p[1] += w[k] * corners[k][1];
            }
        }
        p
    }
}

pub fn mesh_tile(refinement: usize) -> Result<TileMesh, FemError> {
    if !(1..=MAX_REFINEMENT).contains(&refinement) {
        return Err(FemError::RefinementOutOfRange(refinement));
    }
    let m = 1usize << refinement;
    let mut lattice = Vec::with_capacity((m + 1) * (m + 2) / 2);
    for i in 0..=m {
        for j in 0..=m - i {
            lattice.push([i, j]);
        }
    }
    let mut mesh = TileMesh { refinement, m, lattice, elements: Vec::with_capacity(m * m), side_nodes: Default::default() };
    for i in 0..m {
        for j in 0..m - i {
            let a = mesh.node_index(i, j);
            let b = mesh.node_index(i + 1, j);
            let c = mesh.node_index(i, j + 1);
            mesh.elements.push([a, b, c]);
            if i + j + 2 <= m {
                mesh.elements.push([b, mesh.node_index(i + 1, j + 1), c]);
            }
        }
    }
    mesh.side_nodes = [
        (0..=m).map(|i| mesh.node_index(i, m - i)).collect(),
        (0..=m).map(|j| mesh.node_index(0, j)).collect(),
        (0..=m).map(|i| mesh.node_index(i, 0)).collect(),
    ];
    Ok(mesh)
}

/// Global numbering of a volume's nodes: copies share the nodes of glued
/// sides, nodes on boundary sides are Dirichlet.
#[derive(Debug, Clone)]
pub struct DvMesh {
    node_map: Vec<Vec<usize>>,
    coords: Vec<[f64; 2]>,
    dirichlet: Vec<bool>,
    free_index: Vec<Option<usize>>,
    free_nodes: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl DvMesh {
    pub fn new(dv: &DiscretizedVolume, mesh: &TileMesh) -> Result<DvMesh, FemError> {
        let nr = mesh.n_nodes();
        let n = dv.n_copies();
        let tile = dv.tile();
        let corners: Vec<[[f64; 2]; 3]> = dv.placements().iter().map(|p| p.vertices_f64(tile)).collect();
        let scale = tile.lengths().iter().fold(0.0f64, |a, &b| a.max(b));
        let mut parent: Vec<usize> = (0..n * nr).collect();
        for g in dv.internal_sides() {
            for &v in mesh.side_nodes(g.label) {
                let pa = mesh.position(v, &corners[g.a]);
                let pb = mesh.position(v, &corners[g.b]);
                if (pa[0] - pb[0]).hypot(pa[1] - pb[1]) > 1e-12 * scale.max(1.0) {
                    return Err(FemError::MeshGluingMismatch { copy: g.b, label: g.label });
                }
                let (ra, rb) = (find(&mut parent, g.a * nr + v), find(&mut parent, g.b * nr + v));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut global_of_root = vec![usize::MAX; n * nr];
        let mut coords = Vec::new();
        let mut node_map = vec![vec![0; nr]; n];
        for c in 0..n {
            for v in 0..nr {
                let r = find(&mut parent, c * nr + v);
                if global_of_root[r] == usize::MAX {
                    global_of_root[r] = coords.len();
                    coords.push(mesh.position(v, &corners[c]));
                }
                node_map[c][v] = global_of_root[r];
            }
        }
        let mut dirichlet = vec![false; coords.len()];
        for &(c, l) in dv.boundary_sides() {
            for &v in mesh.side_nodes(l) {
                dirichlet[node_map[c][v]] = true;
            }
        }
        let mut free_index = vec![None; coords.len()];
        let mut free_nodes = Vec::new();
        for (g, &d) in dirichlet.iter().enumerate() {
            if !d {
                free_index[g] = Some(free_nodes.len());
                free_nodes.push(g);
            }
        }
        Ok(DvMesh { node_map, coords, dirichlet, free_index, free_nodes })
    }

    pub fn n_nodes(&self) -> usize {
        self.coords.len()
    }

    pub fn n_free(&self) -> usize {
        self.free_nodes.len()
    }

    pub fn n_copies(&self) -> usize {
        self.node_map.len()
    }

    pub fn node_map(&self, copy: usize) -> &[usize] {
        &self.node_map[copy]
    }

    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    pub fn is_dirichlet(&self, node: usize) -> bool {
        self.dirichlet[node]
    }

    pub fn free_index(&self, node: usize) -> Option<usize> {
        self.free_index[node]
    }

    pub fn free_nodes(&self) -> &[usize] {
        &self.free_nodes
    }

    /// Nodal vector with zeros on Dirichlet nodes.
    pub fn expand(&self, free: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_nodes()];
        for (k, &g) in self.free_nodes.iter().enumerate() {
            out[g] = free[k];
        }
        out
    }

    pub fn restrict_free(&self, nodal: &[f64]) -> Vec<f64> {
        self.free_nodes.iter().map(|&g| nodal[g]).collect()
    }

    /// Per-copy samples on the reference grid.
    pub fn per_copy(&self, nodal: &[f64]) -> Vec<Vec<f64>> {
        self.node_map.iter().map(|map| map.iter().map(|&g| nodal[g]).collect()).collect()
    }
}

#[derive(Serialize)]
struct MeshJson<'a> {
    nodes: &'a [[f64; 2]],
    elements: Vec<[usize; 3]>,
    dirichlet: Vec<usize>,
}

/// `{nodes, elements, dirichlet}` with global node numbers.
pub fn mesh_to_json(dv_mesh: &DvMesh, mesh: &TileMesh) -> String {
    let elements = (0..dv_mesh.n_copies())
        .flat_map(|c| mesh.elements().iter().map(move |e| e.map(|v| dv_mesh.node_map(c)[v])))
        .collect();
    let dirichlet = (0..dv_mesh.n_nodes()).filter(|&g| dv_mesh.is_dirichlet(g)).collect();
    serde_json::to_string(&MeshJson { nodes: dv_mesh.coords(), elements, dirichlet }).expect("plain data")
}

pub fn tile_mesh_positions(tile: &Tile, mesh: &TileMesh) -> Vec<[f64; 2]> {
    let corners = tile.vertices_f64();
    (0..mesh.n_nodes()).map(|v| mesh.position(v, &corners)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::apply_word;

    #[test]
    fn counts() {
        assert!(mesh_tile(0).is_err());
        assert!(mesh_tile(9).is_err());
        for r in 1..=5 {
            let m = mesh_tile(r).unwrap();
            let k = 1 << r;
            assert_eq!(m.elements().len(), 4usize.pow(r as u32));
            assert_eq!(m.n_nodes(), (k + 1) * (k + 2) / 2);
            for l in Label::ALL {
                assert_eq!(m.side_nodes(l).len(), k + 1);
            }
        }
        let m = mesh_tile(1).unwrap();
        assert_eq!((m.elements().len(), m.n_nodes()), (4, 6));
        let m = mesh_tile(2).unwrap();
        assert_eq!((m.elements().len(), m.n_nodes()), (16, 15));
    }

    #[test]
    fn lattice_index_is_consistent() {
        let m = mesh_tile(3).unwrap();
        for (k, &[i, j]) in m.lattice.iter().enumerate() {
            assert_eq!(m.node_index(i, j), k);
        }
    }

    #[test]
    fn side_nodes_lie_on_their_side() {
        let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let mesh = mesh_tile(3).unwrap();
        let pos = tile_mesh_positions(&tile, &mesh);
        let v = tile.vertices_f64();
        for l in Label::ALL {
            let (a, b) = (v[(l.index() + 1) % 3], v[(l.index() + 2) % 3]);
            for &n in mesh.side_nodes(l) {
                let p = pos[n];
                let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                assert!(cross.abs() < 1e-14);
            }
        }
        // all elements positively oriented and of equal area
        let area = tile.area() / mesh.elements().len() as f64;
        for e in mesh.elements() {
            let [a, b, c] = e.map(|k| pos[k]);
            let twice = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            assert!((twice.abs() / 2.0 - area).abs() < 1e-12);
        }
    }

    #[test]
    fn glued_nodes_are_shared() {
        let tile = Tile::equilateral();
        let dv = apply_word(&tile, &[Label::Alpha]).unwrap();
        let mesh = mesh_tile(2).unwrap();
        let dm = DvMesh::new(&dv, &mesh).unwrap();
        assert_eq!(dm.n_nodes(), 2 * 15 - 5);
        // the union is a rhombus; only the two interior nodes of the shared side
        // and the ones inside each copy are free
        assert_eq!(dm.n_free(), 3 + 3 + 3);
        for &v in mesh.side_nodes(Label::Alpha) {
            assert_eq!(dm.node_map(0)[v], dm.node_map(1)[v]);
        }
    }
}
