use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::exact::{interiors_overlap, reflect, SurdPoint};
use super::tile::Tile;
use super::GeometryError;
use crate::label::{Label, LabelMap};

/// A placed copy of the tile. `vertices[l]` is the corner opposite side `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    pub copy_index: usize,
    pub vertices: [SurdPoint; 3],
}

/// Plane isometry `p -> matrix * p + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub matrix: [[f64; 2]; 2],
    pub translation: [f64; 2],
    /// +1 for rotations, -1 when the copy is a mirror image of the canonical tile
    pub orientation: i8,
}

impl Isometry {
    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.matrix[0][0] * p[0] + self.matrix[0][1] * p[1] + self.translation[0],
            self.matrix[1][0] * p[0] + self.matrix[1][1] * p[1] + self.translation[1],
        ]
    }
}

impl Placement {
    pub fn vertex(&self, l: Label) -> &SurdPoint {
        &self.vertices[l.index()]
    }

    /// The two corners bounding side `l`, in label order.
    pub fn side(&self, l: Label) -> (&SurdPoint, &SurdPoint) {
        let i = l.index();
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        (&self.vertices[a], &self.vertices[b])
    }

    /// The copy obtained by reflecting this one through its side `l`.
    pub fn reflected(&self, l: Label, tile: &Tile, copy_index: usize) -> Placement {
        let (u, v) = self.side(l);
        let mut vertices = self.vertices.clone();
        vertices[l.index()] = reflect(self.vertex(l), u, v, tile.d());
        Placement { copy_index, vertices }
    }

    pub fn vertices_f64(&self, tile: &Tile) -> [[f64; 2]; 3] {
        let s = tile.sqrt_d();
        [self.vertices[0].to_f64(s), self.vertices[1].to_f64(s), self.vertices[2].to_f64(s)]
    }

    /// Isometry carrying the canonical tile onto this copy.
    pub fn isometry(&self, tile: &Tile) -> Isometry {
        let c = tile.vertices_f64();
        let p = self.vertices_f64(tile);
        let e1 = [c[1][0] - c[0][0], c[1][1] - c[0][1]];
        let e2 = [c[2][0] - c[0][0], c[2][1] - c[0][1]];
        let f1 = [p[1][0] - p[0][0], p[1][1] - p[0][1]];
        let f2 = [p[2][0] - p[0][0], p[2][1] - p[0][1]];
        let det = e1[0] * e2[1] - e1[1] * e2[0];
        // matrix = F * E^{-1}
        let inv = [[e2[1] / det, -e2[0] / det], [-e1[1] / det, e1[0] / det]];
        let mut m = [[0.0; 2]; 2];
        for r in 0..2 {
            m[r][0] = f1[r] * inv[0][0] + f2[r] * inv[1][0];
            m[r][1] = f1[r] * inv[0][1] + f2[r] * inv[1][1];
        }
        let t = [
            p[0][0] - (m[0][0] * c[0][0] + m[0][1] * c[0][1]),
            p[0][1] - (m[1][0] * c[0][0] + m[1][1] * c[0][1]),
        ];
        let orientation = if m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0.0 { 1 } else { -1 };
        Isometry { matrix: m, translation: t, orientation }
    }

    fn triangle(&self) -> [SurdPoint; 3] {
        self.vertices.clone()
    }

    fn mirrored(&self) -> Placement {
        Placement {
            copy_index: self.copy_index,
            vertices: [self.vertices[0].mirrored(), self.vertices[1].mirrored(), self.vertices[2].mirrored()],
        }
    }
}

/// A side shared by copies `a` and `b`, both using their side `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gluing {
    pub a: usize,
    pub b: usize,
    pub label: Label,
}

impl Gluing {
    pub fn new(a: usize, b: usize, label: Label) -> Gluing {
        Gluing { a, b, label }
    }
}

#[derive(Debug, Clone)]
pub struct DiscretizedVolume {
    tile: Tile,
    placements: Vec<Placement>,
    internal_sides: Vec<Gluing>,
    boundary_sides: Vec<(usize, Label)>,
}

impl DiscretizedVolume {
    pub fn tile(&self) -> &Tile {
        &self.tile
    }

    pub fn n_copies(&self) -> usize {
        self.placements.len()
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn internal_sides(&self) -> &[Gluing] {
        &self.internal_sides
    }

    pub fn boundary_sides(&self) -> &[(usize, Label)] {
        &self.boundary_sides
    }

    /// True when the gluing graph has no cycles (`K = N - 1`).
    pub fn is_tree(&self) -> bool {
        self.internal_sides.len() + 1 == self.placements.len()
    }

    /// Neighbour of `copy` across its side `l`, if that side is internal.
    pub fn neighbor(&self, copy: usize, l: Label) -> Option<usize> {
        self.internal_sides.iter().find_map(|g| {
            if g.label != l {
                None
            } else if g.a == copy {
                Some(g.b)
            } else if g.b == copy {
                Some(g.a)
            } else {
                None
            }
        })
    }

    /// Image of the volume under reflection in the x-axis, labels carried along.
    pub fn mirrored(&self) -> DiscretizedVolume {
        DiscretizedVolume {
            tile: self.tile.clone(),
            placements: self.placements.iter().map(Placement::mirrored).collect(),
            internal_sides: self.internal_sides.clone(),
            boundary_sides: self.boundary_sides.clone(),
        }
    }

    /// Number of boundary sides per label (alpha, beta, gamma).
    pub fn boundary_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for &(_, l) in &self.boundary_sides {
            c[l.index()] += 1;
        }
        c
    }

    /// Number of internal sides per label (alpha, beta, gamma).
    pub fn internal_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for g in &self.internal_sides {
            c[g.label.index()] += 1;
        }
        c
    }
}

fn boundary_of(n: usize, internal: &[Gluing]) -> Vec<(usize, Label)> {
    let mut used = vec![[false; 3]; n];
    for g in internal {
        used[g.a][g.label.index()] = true;
        used[g.b][g.label.index()] = true;
    }
    let mut out = Vec::new();
    for (i, u) in used.iter().enumerate() {
        for l in Label::ALL {
            if !u[l.index()] {
                out.push((i, l));
            }
        }
    }
    out
}

fn check_overlaps(placements: &[Placement]) -> Result<(), GeometryError> {
    for j in 1..placements.len() {
        let tj = placements[j].triangle();
        for p in &placements[..j] {
            if interiors_overlap(&p.triangle(), &tj) {
                return Err(GeometryError::OverlapError(j));
            }
        }
    }
    Ok(())
}

/// Builds the volume generated by successive reflections: copy `k + 1` is
/// copy `k` reflected through its side `word[k]`.
pub fn apply_word(tile: &Tile, word: &[Label]) -> Result<DiscretizedVolume, GeometryError> {
    let mut placements = vec![Placement { copy_index: 0, vertices: tile.vertices().clone() }];
    let mut internal = Vec::with_capacity(word.len());
    for (k, &l) in word.iter().enumerate() {
        let next = placements[k].reflected(l, tile, k + 1);
        let tri = next.triangle();
        if placements.iter().any(|p| interiors_overlap(&p.triangle(), &tri)) {
            return Err(GeometryError::OverlapError(k + 1));
        }
        placements.push(next);
        internal.push(Gluing::new(k, k + 1, l));
    }
    let boundary_sides = boundary_of(placements.len(), &internal);
    Ok(DiscretizedVolume { tile: tile.clone(), placements, internal_sides: internal, boundary_sides })
}

/// Places copies by breadth-first reflection along the gluing list. The
/// number of copies is one more than the largest index mentioned.
pub fn build_dv(tile: &Tile, gluing: &[Gluing]) -> Result<DiscretizedVolume, GeometryError> {
    let n = gluing.iter().map(|g| g.a.max(g.b) + 1).max().unwrap_or(1);
    build_dv_with_copies(tile, gluing, n)
}

pub fn build_dv_with_copies(tile: &Tile, gluing: &[Gluing], n: usize) -> Result<DiscretizedVolume, GeometryError> {
    if n == 0 {
        return Err(GeometryError::DisconnectedGluing);
    }
    let mut used = vec![[false; 3]; n];
    let mut adj: Vec<Vec<(usize, Label)>> = vec![Vec::new(); n];
    for g in gluing {
        if g.a >= n || g.b >= n {
            return Err(GeometryError::InvalidGluing(format!("copy index out of range in {:?}", g)));
        }
        if g.a == g.b {
            return Err(GeometryError::InvalidGluing(format!("copy {} glued to itself", g.a + 1)));
        }
        for c in [g.a, g.b] {
            if used[c][g.label.index()] {
                return Err(GeometryError::DuplicateSideUse { copy: c, label: g.label });
            }
            used[c][g.label.index()] = true;
        }
        adj[g.a].push((g.b, g.label));
        adj[g.b].push((g.a, g.label));
    }
    let mut placed: Vec<Option<Placement>> = vec![None; n];
    placed[0] = Some(Placement { copy_index: 0, vertices: tile.vertices().clone() });
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let pi = placed[i].clone().expect("queued copies are placed");
        for &(j, l) in &adj[i] {
            let candidate = pi.reflected(l, tile, j);
            match &placed[j] {
                None => {
                    placed[j] = Some(candidate);
                    queue.push_back(j);
                }
                Some(existing) => {
                    if existing.vertices != candidate.vertices {
                        return Err(GeometryError::InconsistentCycle { copy: j });
                    }
                }
            }
        }
    }
    let placements: Vec<Placement> = match placed.into_iter().collect::<Option<Vec<_>>>() {
        Some(p) => p,
        None => return Err(GeometryError::DisconnectedGluing),
    };
    check_overlaps(&placements)?;
    let internal_sides = gluing.to_vec();
    let boundary_sides = boundary_of(n, &internal_sides);
    Ok(DiscretizedVolume { tile: tile.clone(), placements, internal_sides, boundary_sides })
}

/// Rebuilds `dv` with labels `x` and `y` exchanged in its gluing list. For a
/// tile whose `x` and `y` sides are equal the result is a mirror image of `dv`.
pub fn mirror_relabel(dv: &DiscretizedVolume, swap: (Label, Label)) -> Result<DiscretizedVolume, GeometryError> {
    let (x, y) = swap;
    let tile = dv.tile();
    if x == y || tile.exact_length(x) != tile.exact_length(y) {
        return Err(GeometryError::LabelsNotOnEqualSides(x, y));
    }
    let m = LabelMap::swap(x, y);
    let gluing: Vec<Gluing> = dv.internal_sides().iter().map(|g| Gluing::new(g.a, g.b, m.apply(g.label))).collect();
    build_dv_with_copies(tile, &gluing, dv.n_copies())
}
