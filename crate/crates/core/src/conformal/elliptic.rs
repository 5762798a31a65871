//! Incomplete elliptic integral of the first kind for complex amplitude,
//! through Carlson's symmetric form.

use num_complex::Complex64;

use super::ConformalError;

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

/// Carlson's `R_F(x, y, z)` by duplication. Arguments must avoid the closed
/// negative real axis, with at most one of them zero.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64, ConformalError> {
    if [x, y, z].iter().any(|&t| on_cut(t)) {
        return Err(ConformalError::OutOfDomain("R_F argument on the negative real axis".into()));
    }
    if [x, y, z].iter().filter(|t| t.norm() == 0.0).count() > 1 {
        return Err(ConformalError::OutOfDomain("R_F with two zero arguments".into()));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..200 {
        let a = (x + y + z) / 3.0;
        let dx = (a - x) / a;
        let dy = (a - y) / a;
        let dz = (a - z) / a;
        if dx.norm().max(dy.norm()).max(dz.norm()) < 1e-3 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return Ok((1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0)) / a.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
    }
    Err(ConformalError::ConvergenceFailure("R_F duplication".into()))
}

/// `F(phi | m) = int_0^phi dt / sqrt(1 - m sin^2 t)` for `|Re phi| <= pi/2`,
/// evaluated as `sin(phi) R_F(cos^2 phi, 1 - m sin^2 phi, 1)`.
pub fn elliptic_f(phi: Complex64, m: f64) -> Result<Complex64, ConformalError> {
    if phi.re.abs() > std::f64::consts::FRAC_PI_2 + 1e-12 || !phi.re.is_finite() || !phi.im.is_finite() {
        return Err(ConformalError::OutOfDomain(format!("amplitude {phi} outside |Re| <= pi/2")));
    }
    if phi.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let eval = |p: Complex64| -> Result<Complex64, ConformalError> {
        let s = p.sin();
        let c = p.cos();
        Ok(s * carlson_rf(c * c, 1.0 - m * s * s, Complex64::new(1.0, 0.0))?)
    };
    let s = phi.sin();
    let c = phi.cos();
    if on_cut(c * c) || on_cut(1.0 - m * s * s) {
        let h = Complex64::new(0.0, 1e-12 * phi.norm().max(1.0));
        let below = eval(phi - h).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let above = eval(phi + h).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        return Err(ConformalError::BranchCut { below, above });
    }
    eval(phi)
}
