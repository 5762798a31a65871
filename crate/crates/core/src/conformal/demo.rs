//! The worked disk example end to end: transplant the unit-square
//! fundamental, expand it in Bessel functions, and correct it.

use serde::Serialize;

use super::correction::{correction_function, transplant_source, Correction, DiskBasis};
use super::expansion::{bessel_expand, grid_terms, paired_terms, transplant_error, transplant_mode, BesselExpansion, ErrorNorm, SquareMode, TransplantedMode};
use super::map::{SquareMap, ROUNDED_CONSTANT};
use super::quadrature::DiskQuadrature;
use super::ConformalError;

/// Orders 0..=16 allow two zeros each for at most ten terms.
pub const MAX_TERMS: usize = 10;

#[derive(Debug, Clone)]
pub struct DemoConfig {
    pub terms: usize,
    pub map: SquareMap,
    pub quadrature: (usize, usize),
    /// orders `0, 4, ..` and zeros per order of the correction basis
    pub correction_orders: usize,
    pub correction_zeros: usize,
    pub gap: f64,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig { terms: 6, map: SquareMap::calibrated(), quadrature: (64, 256), correction_orders: 5, correction_zeros: 20, gap: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorPair {
    pub rel_l2: f64,
    pub rel_max: f64,
}

impl ErrorPair {
    fn between(f: &[f64], g: &[f64], quad: &DiskQuadrature) -> ErrorPair {
        ErrorPair { rel_l2: transplant_error(f, g, quad, ErrorNorm::RelL2), rel_max: transplant_error(f, g, quad, ErrorNorm::RelMax) }
    }

    pub fn either_within(&self, lo: f64, hi: f64) -> bool {
        (lo..=hi).contains(&self.rel_l2) || (lo..=hi).contains(&self.rel_max)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrectionReport {
    pub lambda: f64,
    pub basis_size: usize,
    /// `||(B - lambda) u|| / (lambda ||u||)` for `u = T(Psi)` and `u = Phi`
    pub residual_transplant: f64,
    pub residual_corrected: f64,
    pub ratio: f64,
    /// distance of `T(Psi)` and of `Phi` from the span of the disk fundamental
    pub fundamental_defect_transplant: f64,
    pub fundamental_defect_corrected: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub terms: usize,
    pub map_constant: f64,
    pub rounded_constant: f64,
    pub square_eigenvalue: f64,
    pub expansion: BesselExpansion,
    /// `T(Psi)` against its truncated expansion
    pub expansion_residual: ErrorPair,
    /// leading term `c J_0(j_{0,1} r)` against the truncated expansion
    pub fundamental_vs_expansion: ErrorPair,
    /// leading term against `T(Psi)` itself
    pub fundamental_vs_transplant: ErrorPair,
    /// expansion residual after each added term
    pub residual_by_terms: Vec<f64>,
    pub boundary_max: f64,
    pub correction: CorrectionReport,
}

pub struct Demo {
    pub report: DemoReport,
    pub mode: TransplantedMode,
    pub correction: Correction,
}

pub fn run_demo(cfg: &DemoConfig) -> Result<Demo, ConformalError> {
    if cfg.terms == 0 || cfg.terms > MAX_TERMS {
        return Err(ConformalError::InvalidTerms(cfg.terms));
    }
    let quad = DiskQuadrature::new(cfg.quadrature.0, cfg.quadrature.1);
    let mode = transplant_mode(SquareMode::unit_fundamental(), cfg.map);

    let basis = DiskBasis::new(&grid_terms(cfg.correction_orders, cfg.correction_zeros), &quad)?;
    let lambda = basis.eigenvalue(0);
    let (u, q) = transplant_source(&mode, lambda, &quad)?;

    let expansion = bessel_expand(&u, &quad, &paired_terms(cfg.terms))?;
    let partial = |n: usize| -> Vec<f64> { quad.sample(|r, p| expansion.truncated(n).eval(r, p)) };
    let full = partial(cfg.terms);
    let lead = partial(1);
    let residual_by_terms = (1..=cfg.terms).map(|n| transplant_error(&u, &partial(n), &quad, ErrorNorm::RelL2)).collect();

    let boundary_max = (0..1024)
        .map(|k| mode.eval(1.0, 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 1024.0).map(f64::abs))
        .try_fold(0.0f64, |a, b| b.map(|b| a.max(b)))?;

    let correction = correction_function(lambda, &q, basis, 0, cfg.gap, &quad)?;
    let g = correction.samples();
    let phi: Vec<f64> = u.iter().zip(&g).map(|(a, b)| a + b).collect();
    // (B - lambda) u = -Q and (B - lambda) g is exact for the truncated sum
    let after: Vec<f64> = correction.operator_samples().iter().zip(&q).map(|(bg, q)| bg - q).collect();
    let residual_transplant = quad.norm(&q) / (lambda * quad.norm(&u));
    let residual_corrected = quad.norm(&after) / (lambda * quad.norm(&phi));
    let defect = |f: &[f64]| {
        let b0 = correction.basis.samples(0);
        let a = quad.inner(f, b0);
        let rest: Vec<f64> = f.iter().zip(b0).map(|(x, b)| x - a * b).collect();
        quad.norm(&rest) / quad.norm(f)
    };
    let report = DemoReport {
        terms: cfg.terms,
        map_constant: cfg.map.constant(),
        rounded_constant: ROUNDED_CONSTANT,
        square_eigenvalue: mode.mode.eigenvalue(),
        expansion_residual: ErrorPair::between(&u, &full, &quad),
        fundamental_vs_expansion: ErrorPair::between(&lead, &full, &quad),
        fundamental_vs_transplant: ErrorPair::between(&lead, &u, &quad),
        residual_by_terms,
        boundary_max,
        correction: CorrectionReport {
            lambda,
            basis_size: correction.basis.len(),
            residual_transplant,
            residual_corrected,
            ratio: residual_corrected / residual_transplant,
            fundamental_defect_transplant: defect(&u),
            fundamental_defect_corrected: defect(&phi),
        },
        expansion,
    };
    Ok(Demo { report, mode, correction })
}
