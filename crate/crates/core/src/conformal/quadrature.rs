//! Tensor quadrature on the unit disk: Gauss-Legendre in the radius,
//! trapezoid in the angle.

use rayon::prelude::*;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[derive(Debug, Clone)]
pub struct DiskQuadrature {
    pub radii: Vec<f64>,
    /// radial weights including the Jacobian `r`
    pub radial_weights: Vec<f64>,
    pub angles: Vec<f64>,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        DiskQuadrature::new(64, 256)
    }
}

impl DiskQuadrature {
    pub fn new(n_radial: usize, n_angular: usize) -> DiskQuadrature {
        let (x, w) = gauss_legendre(n_radial);
        let radii: Vec<f64> = x.iter().map(|t| 0.5 * (t + 1.0)).collect();
        let radial_weights = radii.iter().zip(&w).map(|(r, wi)| 0.5 * wi * r).collect();
        let angles = (0..n_angular).map(|k| 2.0 * std::f64::consts::PI * k as f64 / n_angular as f64).collect();
        DiskQuadrature { radii, radial_weights, angles }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in row-major order: radius outer, angle inner.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii.iter().flat_map(move |&r| self.angles.iter().map(move |&p| (r, p)))
    }

    pub fn weight(&self, index: usize) -> f64 {
        let na = self.angles.len();
        self.radial_weights[index / na] * 2.0 * std::f64::consts::PI / na as f64
    }

    /// Samples `f(r, phi)` at every point, in parallel, in point order.
    pub fn sample<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let pts: Vec<(f64, f64)> = self.points().collect();
        pts.par_iter().map(|&(r, p)| f(r, p)).collect()
    }

    /// `int f g dA` over the disk from samples.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        let na = self.angles.len();
        // sum each ring first so the reduction order is fixed
        let dphi = 2.0 * std::f64::consts::PI / na as f64;
        self.radial_weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let ring: f64 = (0..na).map(|k| f[i * na + k] * g[i * na + k]).sum();
                w * ring * dphi
            })
            .sum()
    }

    pub fn norm(&self, f: &[f64]) -> f64 {
        self.inner(f, f).sqrt()
    }
}
