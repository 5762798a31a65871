use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{rat_from_f64, rat_to_f64, Rat, SurdPoint};
use super::GeometryError;
use crate::label::{Label, LabelMap};

/// The repeating triangle. Side lengths and vertices are indexed by label:
/// `vertices[l]` is the corner opposite side `l`.
#[derive(Debug, Clone)]
pub struct Tile {
    lengths: [f64; 3],
    exact_lengths: [Rat; 3],
    /// squared height of the canonical placement
    d: Rat,
    sqrt_d: f64,
    vertices: [SurdPoint; 3],
}

/// Serialized tile: `lengths[i]` is the length of the side labeled `labels[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileSpec {
    pub lengths: [f64; 3],
    pub labels: [Label; 3],
}

impl Tile {
    /// Builds the tile in canonical pose: longest side on the x-axis from the
    /// origin, third corner in the upper half-plane.
    pub fn new(side_lengths: [f64; 3], label_order: [Label; 3]) -> Result<Tile, GeometryError> {
        let mut seen = [false; 3];
        for l in label_order {
            if seen[l.index()] {
                return Err(GeometryError::DuplicateLabel(l));
            }
            seen[l.index()] = true;
        }
        let mut exact: [Rat; 3] = [Rat::zero(), Rat::zero(), Rat::zero()];
        let mut lengths = [0.0; 3];
        for (i, &s) in side_lengths.iter().enumerate() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(GeometryError::DegenerateTriangle);
            }
            let l = label_order[i].index();
            exact[l] = rat_from_f64(s).ok_or(GeometryError::DegenerateTriangle)?;
            lengths[l] = s;
        }
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            if exact[i] >= &exact[j] + &exact[k] {
                return Err(GeometryError::DegenerateTriangle);
            }
        }
        // longest side, lowest label index on ties
        let mut top = 0;
        for i in 1..3 {
            if exact[i] > exact[top] {
                top = i;
            }
        }
        let (m1, m2) = ((top + 1) % 3, (top + 2) % 3);
        let (m1, m2) = (m1.min(m2), m1.max(m2));
        // corner opposite m2 at the origin, opposite m1 at (L, 0); the apex is
        // opposite the longest side. Side m1 joins the apex to the origin.
        let big_l = &exact[top];
        let l1 = &exact[m1];
        let l2 = &exact[m2];
        let two = Rat::from_integer(2.into());
        let p = (big_l * big_l + l1 * l1 - l2 * l2) / (&two * big_l);
        let d = l1 * l1 - &p * &p;
        let mut vertices: [SurdPoint; 3] = [SurdPoint::origin(), SurdPoint::origin(), SurdPoint::origin()];
        vertices[m2] = SurdPoint::origin();
        vertices[m1] = SurdPoint::new(big_l.clone(), Rat::zero());
        vertices[top] = SurdPoint::new(p, Rat::one());
        let sqrt_d = rat_to_f64(&d).sqrt();
        Ok(Tile { lengths, exact_lengths: exact, d, sqrt_d, vertices })
    }

    pub fn from_spec(spec: &TileSpec) -> Result<Tile, GeometryError> {
        Tile::new(spec.lengths, spec.labels)
    }

    pub fn equilateral() -> Tile {
        Tile::new([1.0, 1.0, 1.0], Label::ALL).expect("equilateral tile")
    }

    /// Lengths listed in label order (alpha, beta, gamma).
    pub fn spec(&self) -> TileSpec {
        TileSpec { lengths: self.lengths, labels: Label::ALL }
    }

    pub fn length(&self, l: Label) -> f64 {
        self.lengths[l.index()]
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.lengths
    }

    pub fn exact_length(&self, l: Label) -> &Rat {
        &self.exact_lengths[l.index()]
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn sqrt_d(&self) -> f64 {
        self.sqrt_d
    }

    pub fn vertex(&self, l: Label) -> &SurdPoint {
        &self.vertices[l.index()]
    }

    pub fn vertices(&self) -> &[SurdPoint; 3] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> [[f64; 2]; 3] {
        [
            self.vertices[0].to_f64(self.sqrt_d),
            self.vertices[1].to_f64(self.sqrt_d),
            self.vertices[2].to_f64(self.sqrt_d),
        ]
    }

    pub fn area(&self) -> f64 {
        let longest = self.exact_lengths.iter().max().expect("three sides");
        0.5 * rat_to_f64(longest) * self.sqrt_d
    }

    /// Label permutations that preserve side lengths (the tile's symmetries).
    pub fn automorphisms(&self) -> Vec<LabelMap> {
        LabelMap::all()
            .into_iter()
            .filter(|m| Label::ALL.iter().all(|&l| self.exact_lengths[l.index()] == self.exact_lengths[m.apply(l).index()]))
            .collect()
    }

    pub fn is_scalene(&self) -> bool {
        self.automorphisms().len() == 1
    }
}

impl PartialEq for Tile {
    fn eq(&self, other: &Self) -> bool {
        self.exact_lengths == other.exact_lengths
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn analytic_areas() {
        let t = Tile::equilateral();
        assert_relative_eq!(t.area(), 3f64.sqrt() / 4.0, epsilon = 1e-15);
        let r = Tile::new([3.0, 4.0, 5.0], Label::ALL).unwrap();
        assert_relative_eq!(r.area(), 6.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(Tile::new([1.0, 1.0, 3.0], Label::ALL), Err(GeometryError::DegenerateTriangle)));
        assert!(matches!(Tile::new([1.0, 1.0, 2.0], Label::ALL), Err(GeometryError::DegenerateTriangle)));
        assert!(matches!(Tile::new([0.0, 1.0, 1.0], Label::ALL), Err(GeometryError::DegenerateTriangle)));
        assert!(Tile::new([1.0, 1.0, 1.0], [Label::Alpha, Label::Alpha, Label::Beta]).is_err());
    }

    #[test]
    fn canonical_pose_has_correct_side_lengths() {
        let t = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let v = t.vertices_f64();
        for l in Label::ALL {
            let (i, j) = ((l.index() + 1) % 3, (l.index() + 2) % 3);
            let len = ((v[i][0] - v[j][0]).powi(2) + (v[i][1] - v[j][1]).powi(2)).sqrt();
            assert_relative_eq!(len, t.length(l), epsilon = 1e-14);
        }
        // longest side (gamma) lies on the x axis
        assert_eq!(v[0][1], 0.0);
        assert_eq!(v[1][1], 0.0);
        assert!(v[2][1] > 0.0);
        assert!(t.is_scalene());
    }

    #[test]
    fn label_order_is_respected() {
        let t = Tile::new([3.0, 4.0, 5.0], [Label::Gamma, Label::Alpha, Label::Beta]).unwrap();
        assert_eq!(t.length(Label::Gamma), 3.0);
        assert_eq!(t.length(Label::Alpha), 4.0);
        assert_eq!(t.length(Label::Beta), 5.0);
    }

    #[test]
    fn symmetric_tiles_have_automorphisms() {
        assert_eq!(Tile::equilateral().automorphisms().len(), 6);
        let iso = Tile::new([1.0, 1.5, 1.0], Label::ALL).unwrap();
        let autos = iso.automorphisms();
        assert_eq!(autos.len(), 2);
        assert!(autos.contains(&LabelMap::swap(Label::Alpha, Label::Gamma)));
    }
}
