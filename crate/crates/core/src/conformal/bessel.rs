//! Bessel functions of the first kind of integer order and their zeros.

use super::ConformalError;

pub const MAX_ORDER: u32 = 64;
pub const MAX_ARGUMENT: f64 = 1e3;
pub const MAX_ZERO_ORDER: u32 = 16;
pub const MAX_ZERO_INDEX: usize = 20;

fn series(n: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut t = 1.0;
    for i in 1..=n {
        t *= h / i as f64;
    }
    let mut sum = t;
    let h2 = h * h;
    for k in 1..200 {
        t *= -h2 / (k as f64 * (k + n as usize) as f64);
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's downward recurrence, normalized by `J0 + 2 sum J_2k = 1`.
fn miller(n: u32, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut start = (top + 30.0 + 2.0 * top.sqrt()) as usize;
    start += start % 2;
    let (mut jp, mut j) = (0.0f64, 1e-30f64);
    let mut norm = 0.0;
    let mut ans = 0.0;
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            ans *= 1e-250;
        }
        // j now holds J_{k-1}
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * j;
        }
        if k - 1 == n as usize {
            ans = j;
        }
    }
    norm += j;
    ans / norm
}

/// `J_n(x)` for integer `n` in `0..=64` and `x` in `[0, 1000]`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64, ConformalError> {
    if n > MAX_ORDER || !(0.0..=MAX_ARGUMENT).contains(&x) || x.is_nan() {
        return Err(ConformalError::OutOfDomain(format!("J_{n}({x})")));
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    // the series is free of cancellation while its terms do not grow much
    if x <= 4.0 || x * x <= 4.0 * (n as f64 + 1.0) {
        Ok(series(n, x))
    } else {
        Ok(miller(n, x))
    }
}

/// `J_n'(x)` from the recurrence `2 J_n' = J_{n-1} - J_{n+1}`.
pub fn bessel_j_prime(n: u32, x: f64) -> Result<f64, ConformalError> {
    if n == 0 {
        return Ok(-bessel_j(1, x)?);
    }
    Ok(0.5 * (bessel_j(n - 1, x)? - bessel_j(n + 1, x)?))
}

/// `k`-th positive zero of `J_n`, bracketed by a scan and polished by Newton.
pub fn bessel_zero(n: u32, k: usize) -> Result<f64, ConformalError> {
    if n > MAX_ZERO_ORDER || k == 0 || k > MAX_ZERO_INDEX {
        return Err(ConformalError::OutOfDomain(format!("zero {k} of J_{n}")));
    }
    // j_{n,1} > n, and consecutive zeros are more than pi/2 apart
    let step = 0.1;
    let mut a = (n as f64).max(step);
    let mut fa = bessel_j(n, a)?;
    let mut found = 0;
    while a < MAX_ARGUMENT {
        let b = a + step;
        let fb = bessel_j(n, b)?;
        if fa * fb <= 0.0 && fa != 0.0 {
            found += 1;
            if found == k {
                return polish(n, a, b);
            }
        }
        a = b;
        fa = fb;
    }
    Err(ConformalError::ConvergenceFailure(format!("zero {k} of J_{n}")))
}

fn polish(n: u32, mut a: f64, mut b: f64) -> Result<f64, ConformalError> {
    let mut fa = bessel_j(n, a)?;
    for _ in 0..40 {
        let mid = 0.5 * (a + b);
        let fm = bessel_j(n, mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..4 {
        let d = bessel_j(n, x)? / bessel_j_prime(n, x)?;
        x -= d;
        if d.abs() < 1e-15 * x {
            break;
        }
    }
    if (x - 0.5 * (a + b)).abs() > 1e-8 {
        return Err(ConformalError::ConvergenceFailure(format!("Newton left the bracket for J_{n}")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: `J_n(x) = (1/2pi) int_0^2pi cos(n t - x sin t) dt`
    /// by the trapezoid rule, which is spectrally accurate for periodic integrands.
    fn integral(n: u32, x: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * std::f64::consts::PI / m as f64;
        (0..m).map(|i| (n as f64 * i as f64 * h - x * (i as f64 * h).sin()).cos()).sum::<f64>() / m as f64
    }

    #[test]
    fn against_integral_representation() {
        for n in [0, 1, 2, 4, 8, 12, 16, 30, 64] {
            for x in [0.01, 0.5, 1.0, 2.40483, 3.9, 4.1, 7.5, 12.0, 25.0, 60.0, 100.0, 400.0] {
                let j = bessel_j(n, x).unwrap();
                let o = integral(n, x);
                assert!((j - o).abs() < 1e-12 * o.abs().max(1e-3), "J_{n}({x}) = {j} vs {o}");
            }
        }
    }

    #[test]
    fn small_argument_and_edges() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        let x = 1e-3;
        let lead = (x / 2.0f64).powi(4) / 24.0;
        assert!((bessel_j(4, x).unwrap() / lead - 1.0).abs() < 1e-6);
        assert!(bessel_j(0, 2.40483).unwrap().abs() < 1e-5);
        assert!(bessel_j(65, 1.0).is_err());
        assert!(bessel_j(0, -1.0).is_err());
        assert!(bessel_j(0, 1001.0).is_err());
    }

    #[test]
    fn known_zeros() {
        let table = [(0, 1, 2.404825557695773), (0, 2, 5.520078110286311), (1, 1, 3.831705970207512), (4, 1, 7.588342434503804), (4, 2, 11.06470948850119), (8, 1, 12.22509226400458), (8, 2, 16.03777419088771)];
        for (n, k, z) in table {
            assert!((bessel_zero(n, k).unwrap() - z).abs() < 1e-10, "j_{n},{k}");
        }
    }

    #[test]
    fn zeros_increase_and_interlace() {
        for n in 0..MAX_ZERO_ORDER {
            let a: Vec<f64> = (1..=MAX_ZERO_INDEX).map(|k| bessel_zero(n, k).unwrap()).collect();
            let b: Vec<f64> = (1..=MAX_ZERO_INDEX).map(|k| bessel_zero(n + 1, k).unwrap()).collect();
            for k in 0..MAX_ZERO_INDEX - 1 {
                assert!(a[k] < a[k + 1]);
                assert!(a[k] < b[k] && b[k] < a[k + 1]);
            }
            for &z in &a {
                assert!(bessel_j(n, z).unwrap().abs() < 1e-12);
            }
        }
        assert!(bessel_zero(17, 1).is_err());
        assert!(bessel_zero(0, 21).is_err());
        assert!(bessel_zero(0, 0).is_err());
    }
}
