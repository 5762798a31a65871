//! Correction function for a conformally transplanted eigenfunction.
//!
//! If `u` is transplanted onto the disk and `Q = -(B - lambda) u` with
//! `B = -Laplacian`, then `g` solving `(B - lambda) g = Q` makes `u + g` an
//! eigenfunction. `g` is expanded in the Dirichlet eigenfunctions of the disk,
//! skipping the one whose eigenvalue is `lambda`.

use serde::Serialize;

use super::bessel::{bessel_j, bessel_zero};
use super::expansion::TransplantedMode;
use super::quadrature::DiskQuadrature;
use super::ConformalError;

/// Dirichlet eigenfunctions `J_nu(j r) cos(nu phi)` of the unit disk,
/// normalized on the quadrature grid.
#[derive(Debug, Clone)]
pub struct DiskBasis {
    pub layout: Vec<(u32, usize)>,
    pub zeros: Vec<f64>,
    /// `1 / ||J_nu(j r) cos(nu phi)||`
    pub scales: Vec<f64>,
    samples: Vec<Vec<f64>>,
}

impl DiskBasis {
    pub fn new(layout: &[(u32, usize)], quad: &DiskQuadrature) -> Result<DiskBasis, ConformalError> {
        let mut zeros = Vec::with_capacity(layout.len());
        let mut scales = Vec::with_capacity(layout.len());
        let mut samples = Vec::with_capacity(layout.len());
        for &(order, index) in layout {
            let z = bessel_zero(order, index)?;
            let mut s = quad.sample(|r, p| bessel_j(order, z * r).expect("in range") * (order as f64 * p).cos());
            let n = quad.norm(&s);
            if !(n > 0.0) {
                return Err(ConformalError::QuadratureFailure(format!("J_{order} zero {index} has zero norm")));
            }
            s.iter_mut().for_each(|v| *v /= n);
            zeros.push(z);
            scales.push(1.0 / n);
            samples.push(s);
        }
        Ok(DiskBasis { layout: layout.to_vec(), zeros, scales, samples })
    }

    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layout.is_empty()
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.zeros[i] * self.zeros[i]
    }

    /// Normalized `phi_i` on the quadrature grid.
    pub fn samples(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }

    pub fn eval(&self, i: usize, r: f64, phi: f64) -> f64 {
        let (order, _) = self.layout[i];
        self.scales[i] * bessel_j(order, self.zeros[i] * r).expect("in range") * (order as f64 * phi).cos()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrectionSpec {
    pub lambda: f64,
    /// basis position left out of the sum
    pub excluded: usize,
    pub gap: f64,
    /// `c_i = <phi_i, Q> / (b_i - lambda)`, zero at `excluded`
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Correction {
    pub spec: CorrectionSpec,
    pub basis: DiskBasis,
}

impl Correction {
    pub fn eval(&self, r: f64, phi: f64) -> f64 {
        self.spec
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| c * self.basis.eval(i, r, phi))
            .sum()
    }

    /// `g` on the quadrature grid.
    pub fn samples(&self) -> Vec<f64> {
        let n = self.basis.samples(0).len();
        let mut g = vec![0.0; n];
        for (i, c) in self.spec.coefficients.iter().enumerate() {
            for (gv, b) in g.iter_mut().zip(self.basis.samples(i)) {
                *gv += c * b;
            }
        }
        g
    }

    /// `(B - lambda) g` on the quadrature grid, exact for the truncated sum.
    pub fn operator_samples(&self) -> Vec<f64> {
        let n = self.basis.samples(0).len();
        let mut out = vec![0.0; n];
        for (i, c) in self.spec.coefficients.iter().enumerate() {
            let f = c * (self.basis.eigenvalue(i) - self.spec.lambda);
            for (o, b) in out.iter_mut().zip(self.basis.samples(i)) {
                *o += f * b;
            }
        }
        out
    }
}

/// Projects the sampled source `q` onto the basis. Fails with
/// `SmallDenominator(i)` when `|b_i - lambda| <= gap` for an included `i`.
pub fn correction_function(
    lambda: f64,
    q: &[f64],
    basis: DiskBasis,
    excluded: usize,
    gap: f64,
    quad: &DiskQuadrature,
) -> Result<Correction, ConformalError> {
    if basis.is_empty() || q.len() != quad.len() {
        return Err(ConformalError::QuadratureFailure(format!("{} samples for {} points", q.len(), quad.len())));
    }
    let mut coefficients = vec![0.0; basis.len()];
    for (i, c) in coefficients.iter_mut().enumerate() {
        if i == excluded {
            continue;
        }
        let d = basis.eigenvalue(i) - lambda;
        if d.abs() <= gap {
            return Err(ConformalError::SmallDenominator(i));
        }
        *c = quad.inner(basis.samples(i), q) / d;
    }
    Ok(Correction { spec: CorrectionSpec { lambda, excluded, gap, coefficients }, basis })
}

/// `Q = (lambda - mu |T'|^2) T(Psi)`, the defect of a transplanted mode with
/// square eigenvalue `mu` against the disk problem at `lambda`.
pub fn transplant_source(mode: &TransplantedMode, lambda: f64, quad: &DiskQuadrature) -> Result<(Vec<f64>, Vec<f64>), ConformalError> {
    let mu = mode.mode.eigenvalue();
    let pts: Vec<(f64, f64)> = quad.points().collect();
    use rayon::prelude::*;
    let pairs: Result<Vec<(f64, f64)>, ConformalError> = pts
        .par_iter()
        .map(|&(r, p)| {
            let u = mode.eval(r, p)?;
            let k = mode.conformal_factor(r, p)?;
            Ok((u, (lambda - mu * k) * u))
        })
        .collect();
    Ok(pairs?.into_iter().unzip())
}
