use num_complex::Complex64;
use serde::Serialize;

use super::bessel::{bessel_j, bessel_zero};
use super::map::SquareMap;
use super::quadrature::DiskQuadrature;
use super::ConformalError;

/// Dirichlet mode `sqrt(2/l) sin(p pi x / l) sqrt(2/m) sin(q pi y / m)` of the
/// `l x m` rectangle with its corner at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareMode {
    pub l: f64,
    pub m: f64,
    pub p: u32,
    pub q: u32,
}

impl SquareMode {
    pub fn unit_fundamental() -> SquareMode {
        SquareMode { l: 1.0, m: 1.0, p: 1, q: 1 }
    }

    pub fn eigenvalue(&self) -> f64 {
        let pi2 = std::f64::consts::PI.powi(2);
        pi2 * ((self.p as f64 / self.l).powi(2) + (self.q as f64 / self.m).powi(2))
    }

    pub fn eval(&self, w: Complex64) -> Result<f64, ConformalError> {
        let tol = 1e-9;
        if w.re < -tol || w.re > self.l + tol || w.im < -tol || w.im > self.m + tol {
            return Err(ConformalError::OutOfDomain(format!("{w}")));
        }
        let pi = std::f64::consts::PI;
        Ok((2.0 / self.l).sqrt()
            * (self.p as f64 * pi * w.re / self.l).sin()
            * (2.0 / self.m).sqrt()
            * (self.q as f64 * pi * w.im / self.m).sin())
    }
}

/// The pullback `Psi o T` of a square mode to the unit disk.
#[derive(Debug, Clone, Copy)]
pub struct TransplantedMode {
    pub mode: SquareMode,
    pub map: SquareMap,
}

pub fn transplant_mode(mode: SquareMode, map: SquareMap) -> TransplantedMode {
    TransplantedMode { mode, map }
}

impl TransplantedMode {
    /// Value at polar coordinates `(r, phi)` of the disk.
    pub fn eval(&self, r: f64, phi: f64) -> Result<f64, ConformalError> {
        let w = self.map.disk_to_square(Complex64::from_polar(r, phi))?;
        // the map of a unit disk lands on the unit square; other rectangles are scaled
        self.mode.eval(Complex64::new(w.re * self.mode.l, w.im * self.mode.m))
    }

    /// Conformal factor `|T'|^2`.
    pub fn conformal_factor(&self, r: f64, phi: f64) -> Result<f64, ConformalError> {
        let d = self.map.derivative(Complex64::from_polar(r, phi))?;
        Ok(d.norm_sqr())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselTerm {
    pub order: u32,
    /// 1-based zero index
    pub index: usize,
    pub zero: f64,
    pub coefficient: f64,
}

impl BesselTerm {
    pub fn basis(&self, r: f64, phi: f64) -> f64 {
        bessel_j(self.order, self.zero * r).expect("r in [0, 1] and zero below 1000") * (self.order as f64 * phi).cos()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BesselExpansion {
    pub terms: Vec<BesselTerm>,
    /// largest coefficient of the matching `sin` basis functions, which a
    /// mode symmetric about the map's axes should not need
    pub max_sin_coefficient: f64,
}

impl BesselExpansion {
    pub fn eval(&self, r: f64, phi: f64) -> f64 {
        self.terms.iter().map(|t| t.coefficient * t.basis(r, phi)).sum()
    }

    pub fn truncated(&self, n: usize) -> BesselExpansion {
        BesselExpansion { terms: self.terms[..n.min(self.terms.len())].to_vec(), max_sin_coefficient: self.max_sin_coefficient }
    }
}

/// The term layout of the worked disk example: orders 0, 4, 8, ... with
/// two zeros each, first `terms` of them.
pub fn paired_terms(terms: usize) -> Vec<(u32, usize)> {
    (0..terms).map(|t| (4 * (t / 2) as u32, t % 2 + 1)).collect()
}

/// Every order `0, 4, ..., 4(orders-1)` with `zeros` zeros each.
pub fn grid_terms(orders: usize, zeros: usize) -> Vec<(u32, usize)> {
    (0..orders).flat_map(|o| (1..=zeros).map(move |k| (4 * o as u32, k))).collect()
}

/// Coefficients `<f, B>/<B, B>` for `B = J_nu(j_{nu,n} r) cos(nu phi)` from
/// samples of `f` on the quadrature grid.
pub fn bessel_expand(samples: &[f64], quad: &DiskQuadrature, layout: &[(u32, usize)]) -> Result<BesselExpansion, ConformalError> {
    if samples.len() != quad.len() {
        return Err(ConformalError::QuadratureFailure(format!("{} samples for {} points", samples.len(), quad.len())));
    }
    let mut terms = Vec::with_capacity(layout.len());
    let mut max_sin: f64 = 0.0;
    for &(order, index) in layout {
        let zero = bessel_zero(order, index)?;
        let proto = BesselTerm { order, index, zero, coefficient: 0.0 };
        let b = quad.sample(|r, p| proto.basis(r, p));
        let c = quad.inner(samples, &b) / quad.inner(&b, &b);
        if !c.is_finite() {
            return Err(ConformalError::QuadratureFailure(format!("J_{order} zero {index}")));
        }
        if order > 0 {
            let s = quad.sample(|r, p| bessel_j(order, zero * r).expect("in range") * (order as f64 * p).sin());
            max_sin = max_sin.max((quad.inner(samples, &s) / quad.inner(&s, &s)).abs());
        }
        terms.push(BesselTerm { coefficient: c, ..proto });
    }
    Ok(BesselExpansion { terms, max_sin_coefficient: max_sin })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ErrorNorm {
    RelL2,
    RelMax,
}

/// `||f - g|| / ||f||` over the quadrature grid.
pub fn transplant_error(f: &[f64], g: &[f64], quad: &DiskQuadrature, norm: ErrorNorm) -> f64 {
    let diff: Vec<f64> = f.iter().zip(g).map(|(a, b)| a - b).collect();
    match norm {
        ErrorNorm::RelL2 => quad.norm(&diff) / quad.norm(f),
        ErrorNorm::RelMax => {
            let m = |v: &[f64]| v.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            m(&diff) / m(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_mode_values() {
        let m = SquareMode::unit_fundamental();
        assert!((m.eval(Complex64::new(0.5, 0.5)).unwrap() - 2.0).abs() < 1e-15);
        assert!(m.eval(Complex64::new(1.0, 0.3)).unwrap().abs() < 1e-15);
        assert!(m.eval(Complex64::new(0.0, 0.7)).unwrap().abs() < 1e-15);
        assert!(m.eval(Complex64::new(1.2, 0.5)).is_err());
        // normalization by a tensor midpoint rule
        let n = 400;
        let h = 1.0 / n as f64;
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += m.eval(Complex64::new((a as f64 + 0.5) * h, (b as f64 + 0.5) * h)).unwrap().powi(2) * h * h;
            }
        }
        assert!((s - 1.0).abs() < 1e-9);
        assert!((m.eigenvalue() - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn transplanted_mode_shape() {
        let t = transplant_mode(SquareMode::unit_fundamental(), SquareMap::calibrated());
        assert!((t.eval(0.0, 0.0).unwrap() - 2.0).abs() < 1e-12);
        for k in 0..64 {
            let phi = 2.0 * PI * (k as f64 + 0.3) / 64.0;
            assert!(t.eval(1.0, phi).unwrap().abs() < 1e-6);
            for r in [0.2, 0.6, 0.95] {
                let a = t.eval(r, phi).unwrap();
                let b = t.eval(r, phi + PI / 2.0).unwrap();
                assert!((a - b).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn expanding_a_basis_function_recovers_it() {
        let quad = DiskQuadrature::default();
        let z = bessel_zero(0, 1).unwrap();
        let f = quad.sample(|r, _| bessel_j(0, z * r).unwrap());
        let e = bessel_expand(&f, &quad, &grid_terms(3, 3)).unwrap();
        assert!((e.terms[0].coefficient - 1.0).abs() < 1e-10);
        assert!(e.terms[1..].iter().all(|t| t.coefficient.abs() < 1e-8));
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        let quad = DiskQuadrature::default();
        let layout = grid_terms(3, 4);
        let basis: Vec<Vec<f64>> = layout
            .iter()
            .map(|&(o, k)| {
                let t = BesselTerm { order: o, index: k, zero: bessel_zero(o, k).unwrap(), coefficient: 1.0 };
                let s = quad.sample(|r, p| t.basis(r, p));
                let n = quad.norm(&s);
                s.into_iter().map(|v| v / n).collect()
            })
            .collect();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let g = quad.inner(&basis[i], &basis[j]);
                assert!((g - if i == j { 1.0 } else { 0.0 }).abs() < 1e-8, "({i},{j}) {g}");
            }
        }
    }

    #[test]
    fn error_norms() {
        let quad = DiskQuadrature::new(16, 32);
        let f = quad.sample(|r, p| 1.0 - r * r + 0.1 * p.cos());
        let twice: Vec<f64> = f.iter().map(|v| 2.0 * v).collect();
        assert_eq!(transplant_error(&f, &f, &quad, ErrorNorm::RelL2), 0.0);
        assert!((transplant_error(&f, &twice, &quad, ErrorNorm::RelL2) - 1.0).abs() < 1e-14);
        assert!((transplant_error(&f, &twice, &quad, ErrorNorm::RelMax) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn layouts() {
        assert_eq!(paired_terms(6), vec![(0, 1), (0, 2), (4, 1), (4, 2), (8, 1), (8, 2)]);
        assert_eq!(grid_terms(2, 2), vec![(0, 1), (0, 2), (4, 1), (4, 2)]);
    }
}
