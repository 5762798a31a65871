use serde::{Deserialize, Serialize};

use super::tile::{Tile, TileSpec};
use super::volume::{build_dv_with_copies, DiscretizedVolume, Gluing};
use super::GeometryError;
use crate::label::Label;
use crate::svg::{bounds_of, Svg};

/// JSON form of a volume. Copy indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DvSpec {
    pub tile: TileSpec,
    pub gluing: Vec<(usize, usize, Label)>,
    /// Needed only for a single copy with an empty gluing list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
}

impl DvSpec {
    pub fn from_dv(dv: &DiscretizedVolume) -> DvSpec {
        DvSpec {
            tile: dv.tile().spec(),
            gluing: dv.internal_sides().iter().map(|g| (g.a, g.b, g.label)).collect(),
            copies: if dv.internal_sides().is_empty() { Some(dv.n_copies()) } else { None },
        }
    }

    pub fn build(&self) -> Result<DiscretizedVolume, GeometryError> {
        let tile = Tile::from_spec(&self.tile)?;
        let gluing: Vec<Gluing> = self.gluing.iter().map(|&(a, b, l)| Gluing::new(a, b, l)).collect();
        let n = gluing.iter().map(|g| g.a.max(g.b) + 1).max().unwrap_or(1);
        build_dv_with_copies(&tile, &gluing, self.copies.unwrap_or(n).max(n))
    }
}

pub fn dv_to_json(dv: &DiscretizedVolume) -> String {
    serde_json::to_string_pretty(&DvSpec::from_dv(dv)).expect("volume serializes")
}

pub fn dv_from_json(s: &str) -> Result<DiscretizedVolume, GeometryError> {
    let spec: DvSpec = serde_json::from_str(s).map_err(|e| GeometryError::Parse(e.to_string()))?;
    spec.build()
}

/// Two-colouring of copies along internal sides, `None` if a cycle is odd.
pub fn two_colouring(dv: &DiscretizedVolume) -> Option<Vec<i8>> {
    let n = dv.n_copies();
    let mut colour = vec![0i8; n];
    colour[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for g in dv.internal_sides() {
            let j = if g.a == i {
                g.b
            } else if g.b == i {
                g.a
            } else {
                continue;
            };
            if colour[j] == 0 {
                colour[j] = -colour[i];
                stack.push(j);
            } else if colour[j] == colour[i] {
                return None;
            }
        }
    }
    Some(colour)
}

/// One polygon per copy, shaded by checkerboard class, with copy numbers
/// (1-based) at the centroids and side letters on internal sides.
pub fn dv_to_svg(dv: &DiscretizedVolume) -> String {
    let tile = dv.tile();
    let tris: Vec<[[f64; 2]; 3]> = dv.placements().iter().map(|p| p.vertices_f64(tile)).collect();
    let bounds = bounds_of(tris.iter().flatten().copied());
    let mut svg = Svg::new(bounds, 480.0);
    let colours = two_colouring(dv);
    let scale = tile.lengths().iter().cloned().fold(0.0, f64::max);
    let font = 480.0 * 0.08 * scale / (bounds[2] - bounds[0]).max(scale);
    for (k, t) in tris.iter().enumerate() {
        let fill = match &colours {
            Some(c) if c[k] > 0 => "#f4d58d",
            Some(_) => "#8db5f4",
            None => "#cccccc",
        };
        svg.polygon(t, fill, "#333333");
    }
    for g in dv.internal_sides() {
        let (u, v) = dv.placements()[g.a].side(g.label);
        let (u, v) = (u.to_f64(tile.sqrt_d()), v.to_f64(tile.sqrt_d()));
        svg.line(u, v, "#aa2222", 1.5);
        svg.text([(u[0] + v[0]) / 2.0, (u[1] + v[1]) / 2.0], font * 0.8, &g.label.letter().to_string());
    }
    for (k, t) in tris.iter().enumerate() {
        let c = [(t[0][0] + t[1][0] + t[2][0]) / 3.0, (t[0][1] + t[1][1] + t[2][1]) / 3.0];
        svg.text(c, font, &(k + 1).to_string());
    }
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::volume::apply_word;
    use Label::*;

    #[test]
    fn json_round_trip() {
        let t = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
        let dv = apply_word(&t, &[Alpha, Beta, Gamma]).unwrap();
        let s = dv_to_json(&dv);
        assert!(s.contains("\"alpha\""));
        let back = dv_from_json(&s).unwrap();
        assert_eq!(back.internal_sides(), dv.internal_sides());
        assert_eq!(back.placements(), dv.placements());
        let single = apply_word(&t, &[]).unwrap();
        assert_eq!(dv_from_json(&dv_to_json(&single)).unwrap().n_copies(), 1);
    }

    #[test]
    fn json_accepts_documented_shape() {
        let s = r#"{"tile":{"lengths":[1,1,1],"labels":["alpha","beta","gamma"]},"gluing":[[0,1,"alpha"],[1,2,"beta"]]}"#;
        let dv = dv_from_json(s).unwrap();
        assert_eq!(dv.n_copies(), 3);
        assert!(dv_from_json("{").is_err());
    }

    #[test]
    fn svg_has_one_polygon_per_copy() {
        let dv = apply_word(&Tile::equilateral(), &[Alpha, Beta]).unwrap();
        let s = dv_to_svg(&dv);
        assert_eq!(s.matches("<polygon").count(), 3);
        assert_eq!(two_colouring(&dv).unwrap(), vec![1, -1, 1]);
    }
}
