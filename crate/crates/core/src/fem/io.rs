use super::assemble::System;
use super::eigen::EigenResult;
use super::mesh::TileMesh;
use crate::geometry::DiscretizedVolume;
use crate::svg::{bounds_of, diverging, Svg};

/// Columns `index,lambda,residual,refinement`; index is 1-based.
pub fn eigen_table_csv(eig: &EigenResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "lambda", "residual", "refinement"]).expect("in-memory write");
    let r = eig.refinement.map(|r| r.to_string()).unwrap_or_default();
    for (i, (l, res)) in eig.values.iter().zip(&eig.residuals).enumerate() {
        w.write_record([(i + 1).to_string(), format!("{l:.12}"), format!("{res:.3e}"), r.clone()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

/// Heatmap of one eigenfunction over the placed copies, one flat colour per
/// element from the mean of its corner values.
pub fn eigenfunction_svg(dv: &DiscretizedVolume, sys: &System, mesh: &TileMesh, mode: usize, eig: &EigenResult) -> String {
    let nodal = sys.mesh.expand(eig.vectors[mode].as_slice());
    let peak = nodal.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(f64::MIN_POSITIVE);
    let coords = sys.mesh.coords();
    let mut svg = Svg::new(bounds_of(coords.iter().copied()), 480.0);
    for c in 0..dv.n_copies() {
        let map = sys.mesh.node_map(c);
        for e in mesh.elements() {
            let g = e.map(|v| map[v]);
            let mean = (nodal[g[0]] + nodal[g[1]] + nodal[g[2]]) / (3.0 * peak);
            let colour = diverging(mean);
            svg.polygon(&g.map(|k| coords[k]), &colour, &colour);
        }
    }
    let tile = dv.tile();
    for p in dv.placements() {
        let v = p.vertices_f64(tile);
        for k in 0..3 {
            svg.line(v[k], v[(k + 1) % 3], "#444444", 0.8);
        }
    }
    svg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::{mesh_tile, solve};
    use crate::geometry::{apply_word, Tile};
    use crate::label::Label;

    #[test]
    fn table_and_picture() {
        let dv = apply_word(&Tile::equilateral(), &[Label::Beta]).unwrap();
        let (sys, eig) = solve(&dv, 2, 2).unwrap();
        let csv = eigen_table_csv(&eig);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "index,lambda,residual,refinement");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1,") && lines[1].ends_with(",2"));
        let svg = eigenfunction_svg(&dv, &sys, &mesh_tile(2).unwrap(), 0, &eig);
        assert_eq!(svg.matches("<polygon").count(), 32);
    }
}
