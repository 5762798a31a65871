//! Conformal map of the unit disk onto the unit square `[0, 1]^2`.
//!
//! The closed form is a Schwarz-Christoffel map written with an elliptic
//! integral of parameter 2. Rounded to six digits the prefactor is
//! `0.539353 i`; [`SquareMap::calibrated`] instead fixes it so the centre
//! goes to `(1/2, 1/2)` exactly, which keeps the boundary on the square to
//! machine precision. The four corners are the images of `1, i, -1, -i`.

use num_complex::Complex64;

use super::elliptic::elliptic_f;
use super::ConformalError;

pub const ROUNDED_CONSTANT: f64 = 0.539353;

/// Below this distance from a corner preimage the map is evaluated through
/// its square-root behaviour instead of the closed form.
const CORNER_RADIUS: f64 = 1e-8;

const CORNERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareMap {
    constant: f64,
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Everything in the closed form except `1 + C i * (...)`.
fn shape(z: Complex64) -> Result<Complex64, ConformalError> {
    let one = Complex64::new(1.0, 0.0);
    let a = ((one - i()) + 2.0 / (z - i())).sqrt();
    let b = ((one + i()) - 2.0 * i() / (one + z)).sqrt();
    let u = one / (-(one + i()) * (i() + z) / (z - one)).sqrt();
    let f = elliptic_f(i() * u.asinh(), 2.0)?;
    let v = a * b * f;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(ConformalError::NumericalBreakdown(format!("map at {z}")));
    }
    Ok(v)
}

impl SquareMap {
    pub fn rounded() -> SquareMap {
        SquareMap { constant: ROUNDED_CONSTANT }
    }

    pub fn calibrated() -> SquareMap {
        let s = shape(Complex64::new(0.0, 0.0)).expect("the centre is regular");
        // 1 + C i s = (1 + i)/2
        let c = (Complex64::new(-0.5, 0.5) / (i() * s)).re;
        SquareMap { constant: c }
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    fn closed_form(&self, z: Complex64) -> Result<Complex64, ConformalError> {
        // on the circle the intermediate arguments sit on branch cuts and
        // rounding picks a side at random; the boundary values are radial
        // limits, so step just inside
        let mut err = None;
        for pull in [1e-13, 1e-11, 1e-9] {
            let w = if z.norm() > 1.0 - pull { z * ((1.0 - pull) / z.norm()) } else { z };
            match shape(w) {
                Ok(s) => return Ok(1.0 + i() * self.constant * s),
                Err(e @ ConformalError::BranchCut { .. }) => err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(err.expect("loop ran"))
    }

    /// Image of `z` with `|z| <= 1`.
    pub fn disk_to_square(&self, z: Complex64) -> Result<Complex64, ConformalError> {
        if z.norm() > 1.0 + 1e-12 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(ConformalError::OutOfDomain(format!("{z} outside the closed unit disk")));
        }
        for z0 in CORNERS {
            let d = z - z0;
            if d.norm() < CORNER_RADIUS {
                // T(z) ~ c + a (z - z0)^(1/2); fit c and a along the inward normal
                let (s1, s2) = (1e-6, 4e-6);
                let t1 = self.closed_form(z0 * (1.0 - s1))?;
                let t2 = self.closed_form(z0 * (1.0 - s2))?;
                let (r1, r2) = (s1.sqrt(), s2.sqrt());
                let c = (t1 * r2 - t2 * r1) / (r2 - r1);
                if d.norm() == 0.0 {
                    return Ok(c);
                }
                return Ok(c + (t1 - c) * (d / (-z0 * s1)).sqrt());
            }
        }
        self.closed_form(z)
    }

    /// `T'(z)` by a central difference scaled to the distance from the corners.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64, ConformalError> {
        let gap = CORNERS.iter().map(|&c| (z - c).norm()).fold(f64::INFINITY, f64::min);
        let h = (1e-6f64).min(0.05 * gap).max(1e-10);
        // step along the inward radial direction keeps both samples in the disk
        let dir = if z.norm() > 0.5 { -z / z.norm() } else { Complex64::new(1.0, 0.0) };
        let fwd = self.disk_to_square(z + dir * h * 0.5);
        let back = self.disk_to_square(z - dir * h * 0.5);
        match (fwd, back) {
            (Ok(a), Ok(b)) => Ok((a - b) / (dir * h)),
            _ => {
                let a = self.disk_to_square(z + dir * h)?;
                let b = self.disk_to_square(z)?;
                Ok((a - b) / (dir * h))
            }
        }
    }

    /// Preimage of a point of the closed unit square by damped Newton.
    pub fn square_to_disk(&self, w: Complex64) -> Result<Complex64, ConformalError> {
        if !(0.0..=1.0).contains(&w.re) || !(0.0..=1.0).contains(&w.im) {
            return Err(ConformalError::OutOfDomain(format!("{w} outside the unit square")));
        }
        let d = w - Complex64::new(0.5, 0.5);
        // the corner (1, 0) is the image of z = 1, so square angles lag by pi/4
        let mut z = if d.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar((d.norm() * 1.2).min(0.95), d.arg() + std::f64::consts::FRAC_PI_4)
        };
        for _ in 0..100 {
            let r = self.disk_to_square(z)? - w;
            if r.norm() < 1e-14 {
                return Ok(z);
            }
            let step = r / self.derivative(z)?;
            let mut t = 1.0;
            loop {
                let cand = z - step * t;
                if cand.norm() <= 1.0 {
                    if let Ok(v) = self.disk_to_square(cand) {
                        if (v - w).norm() < r.norm() || t < 1e-6 {
                            z = cand;
                            break;
                        }
                    }
                }
                t *= 0.5;
                if t < 1e-12 {
                    return Err(ConformalError::ConvergenceFailure(format!("inverse map at {w}")));
                }
            }
        }
        let r = (self.disk_to_square(z)? - w).norm();
        if r < 1e-10 {
            Ok(z)
        } else {
            Err(ConformalError::ConvergenceFailure(format!("inverse map at {w}, residual {r:.2e}")))
        }
    }
}
