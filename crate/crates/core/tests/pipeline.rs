//! End-to-end runs through the public API.

use std::f64::consts::PI;

use isodrum_core::algebra::{find_intertwiner, gluing_operator};
use isodrum_core::conformal::{run_demo, DemoConfig, SquareMap};
use isodrum_core::fem::{solve, verify_transplantation};
use isodrum_core::geometry::{are_equivalent, Tile};
use isodrum_core::graph::{enumerate_dv_graphs, ColorMode};
use isodrum_core::search::isospectral_search;
use isodrum_core::Label;
use num_complex::Complex64;

#[test]
fn polyiamond_counts() {
    // free polyiamonds: 1, 1, 1, 3, 4, 12, 24
    let expected = [1, 1, 1, 3, 4, 12, 24];
    for (n, &count) in (1..=7).zip(&expected) {
        let e = enumerate_dv_graphs(&Tile::equilateral(), n, ColorMode::TileSymmetry).unwrap();
        assert_eq!(e.volumes.len(), count, "n = {n}");
        for (i, a) in e.volumes.iter().enumerate() {
            for b in &e.volumes[i + 1..] {
                assert!(!are_equivalent(&a.dv, &b.dv));
            }
        }
    }
}

#[test]
fn scalene_search_finds_transplantable_pairs() {
    let tile = Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap();
    let e = enumerate_dv_graphs(&tile, 7, ColorMode::TileSymmetry).unwrap();
    let report = isospectral_search(&tile, 7, 1e-9).unwrap();
    let sunada: Vec<_> = report.pairs.iter().filter(|p| p.sunada.is_sunada_triple).collect();
    assert!(!sunada.is_empty());
    let p = sunada[0];
    let (a, b) = (&e.volumes[p.first.index - 1].dv, &e.volumes[p.second.index - 1].dv);
    assert!(!are_equivalent(a, b));
    let m = find_intertwiner(a, b).unwrap();
    for l in Label::ALL {
        assert!((&m * gluing_operator(a, l) - gluing_operator(b, l) * &m).norm() < 1e-10);
    }
    let (s1, e1) = solve(a, 2, 3).unwrap();
    let (s2, e2) = solve(b, 2, 3).unwrap();
    for (x, y) in e1.values.iter().zip(&e2.values) {
        assert!((x - y).abs() < 1e-9 * x);
    }
    for c in verify_transplantation(&s1, &s2, &m, &e1).unwrap() {
        assert!(c.eigen_residual < 1e-8 && c.boundary_violation < 1e-10 && c.disagreement < 1e-10, "{c:?}");
    }
}

#[test]
fn conformal_demo_improves_with_terms() {
    let small = DemoConfig { quadrature: (24, 96), correction_orders: 3, correction_zeros: 6, ..DemoConfig::default() };
    let two = run_demo(&DemoConfig { terms: 2, ..small.clone() }).unwrap();
    let six = run_demo(&DemoConfig { terms: 6, ..small }).unwrap();
    assert!(six.report.expansion_residual.rel_l2 < two.report.expansion_residual.rel_l2);
    assert!((six.report.square_eigenvalue - 2.0 * PI * PI).abs() < 1e-12);
    // the centre of the disk goes to the centre of the square
    let c = SquareMap::calibrated().disk_to_square(Complex64::new(0.0, 0.0)).unwrap();
    assert!((c - Complex64::new(0.5, 0.5)).norm() < 1e-12);
}
