use num_complex::Complex64;

use super::demo::{Demo, DemoReport};
use super::expansion::BesselExpansion;
use super::ConformalError;
use crate::svg::{diverging, Svg};

/// Columns `term,order,zero_index,zero,coefficient`.
pub fn coefficients_csv(e: &BesselExpansion) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["term", "order", "zero_index", "zero", "coefficient"]).expect("in-memory write");
    for (i, t) in e.terms.iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            t.order.to_string(),
            t.index.to_string(),
            format!("{:.10}", t.zero),
            format!("{:.10e}", t.coefficient),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

pub fn metrics_json(report: &DemoReport) -> String {
    serde_json::to_string_pretty(report).expect("plain data")
}

/// Values of one field over both panels, `None` outside the domain.
struct Panels {
    square: Vec<Option<f64>>,
    disk: Vec<Option<f64>>,
}

fn draw(title: &str, p: &Panels, cells: usize) -> String {
    let peak = p.square.iter().chain(&p.disk).flatten().fold(0.0f64, |a, &b| a.max(b.abs())).max(f64::MIN_POSITIVE);
    // square on [0, 1]^2, disk centred at (2.5, 0.5) with radius 1 scaled to 0.5
    let mut svg = Svg::new([0.0, 0.0, 3.0, 1.08], 720.0);
    let h = 1.0 / cells as f64;
    for a in 0..cells {
        for b in 0..cells {
            let k = a * cells + b;
            let (x, y) = (a as f64 * h, b as f64 * h);
            let quad = |ox: f64| [[ox + x, y], [ox + x + h, y], [ox + x + h, y + h], [ox + x, y + h]];
            if let Some(v) = p.square[k] {
                let c = diverging(v / peak);
                svg.polygon(&quad(0.0), &c, &c);
            }
            if let Some(v) = p.disk[k] {
                let c = diverging(v / peak);
                svg.polygon(&quad(2.0), &c, &c);
            }
        }
    }
    svg.polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], "none", "#444444");
    let circle: Vec<[f64; 2]> = (0..128)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 128.0;
            [2.5 + 0.5 * t.cos(), 0.5 + 0.5 * t.sin()]
        })
        .collect();
    svg.polygon(&circle, "none", "#444444");
    svg.text([1.5, 1.05], 14.0, title);
    svg.finish()
}

/// Two-panel heatmaps (square left, disk right) of `Psi`, `g` and `Phi`,
/// each as a raster of `cells x cells` flat squares per panel.
pub fn demo_svgs(demo: &Demo, cells: usize) -> Result<Vec<(String, String)>, ConformalError> {
    use rayon::prelude::*;
    let cells = cells.max(2);
    let h = 1.0 / cells as f64;
    let centres: Vec<(f64, f64)> = (0..cells).flat_map(|a| (0..cells).map(move |b| ((a as f64 + 0.5) * h, (b as f64 + 0.5) * h))).collect();
    let map = demo.mode.map;
    let g_polar = |r: f64, t: f64| demo.correction.eval(r, t);

    // disk cell centres in polar form, and square cell centres pulled back to the disk
    let disk_pts: Vec<Option<(f64, f64)>> = centres
        .iter()
        .map(|&(x, y)| {
            let z = Complex64::new(2.0 * x - 1.0, 2.0 * y - 1.0);
            (z.norm() < 1.0).then(|| (z.norm(), z.arg()))
        })
        .collect();
    let pulled: Vec<(f64, f64)> = centres
        .par_iter()
        .map(|&(x, y)| map.square_to_disk(Complex64::new(x, y)).map(|z| (z.norm(), z.arg())))
        .collect::<Result<_, _>>()?;

    let tpsi: Vec<Option<f64>> = disk_pts.par_iter().map(|p| p.map(|(r, t)| demo.mode.eval(r, t)).transpose()).collect::<Result<_, _>>()?;
    let psi: Vec<Option<f64>> = centres.iter().map(|&(x, y)| demo.mode.mode.eval(Complex64::new(x, y)).ok()).collect();
    let g_disk: Vec<Option<f64>> = disk_pts.par_iter().map(|p| p.map(|(r, t)| g_polar(r, t))).collect();
    let g_square: Vec<Option<f64>> = pulled.par_iter().map(|&(r, t)| Some(g_polar(r, t))).collect();
    let add = |a: &[Option<f64>], b: &[Option<f64>]| -> Vec<Option<f64>> { a.iter().zip(b).map(|(x, y)| Some((*x)? + (*y)?)).collect() };

    let transplant = Panels { square: psi.clone(), disk: tpsi.clone() };
    let correction = Panels { square: g_square.clone(), disk: g_disk.clone() };
    let corrected = Panels { square: add(&psi, &g_square), disk: add(&tpsi, &g_disk) };
    Ok(vec![
        ("transplant.svg".into(), draw("Psi on the square, T(Psi) on the disk", &transplant, cells)),
        ("correction.svg".into(), draw("correction g", &correction, cells)),
        ("corrected.svg".into(), draw("Phi = T(Psi) + g", &corrected, cells)),
    ])
}
