//! Least-squares solution of `A X B + C Y D = E`.
//!
//! CGLS on the linear map `(X, Y) -> A X B + C Y D` started from zero stays
//! in the row space of the map, so it converges to the minimum-norm
//! least-squares solution without forming the Kronecker matrix.

use nalgebra::DMatrix;

use super::AlgebraError;

/// Unknown count above which the solver refuses to run.
pub const MAX_UNKNOWNS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct AxbSolution {
    pub x: DMatrix<f64>,
    pub y: DMatrix<f64>,
    /// `||A X B + C Y D - E||_F`
    pub residual: f64,
    pub iterations: usize,
}

struct Op<'a> {
    a: &'a DMatrix<f64>,
    b: &'a DMatrix<f64>,
    c: &'a DMatrix<f64>,
    d: &'a DMatrix<f64>,
}

impl Op<'_> {
    fn apply(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
        self.a * x * self.b + self.c * y * self.d
    }

    fn adjoint(&self, r: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
        (self.a.transpose() * r * self.b.transpose(), self.c.transpose() * r * self.d.transpose())
    }
}

fn norm2(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    x.norm_squared() + y.norm_squared()
}

fn cgls(op: &Op, e: &DMatrix<f64>, shape_x: (usize, usize), shape_y: (usize, usize), max_iter: usize) -> (DMatrix<f64>, DMatrix<f64>, usize) {
    let mut x = DMatrix::zeros(shape_x.0, shape_x.1);
    let mut y = DMatrix::zeros(shape_y.0, shape_y.1);
    let mut r = e.clone();
    let (mut sx, mut sy) = op.adjoint(&r);
    let (mut px, mut py) = (sx.clone(), sy.clone());
    let mut gamma = norm2(&sx, &sy);
    let stop = gamma * 1e-30;
    let mut it = 0;
    while it < max_iter && gamma > stop && gamma > 0.0 {
        let q = op.apply(&px, &py);
        let qq = q.norm_squared();
        if qq == 0.0 {
            break;
        }
        let alpha = gamma / qq;
        x += &px * alpha;
        y += &py * alpha;
        r -= &q * alpha;
        (sx, sy) = op.adjoint(&r);
        let g = norm2(&sx, &sy);
        let beta = g / gamma;
        gamma = g;
        px = &sx + &px * beta;
        py = &sy + &py * beta;
        it += 1;
    }
    (x, y, it)
}

/// Minimum-norm least-squares `(X, Y)` for `A X B + C Y D = E`.
pub fn solve_axb_cyd(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
    e: &DMatrix<f64>,
) -> Result<AxbSolution, AlgebraError> {
    let (m, n) = e.shape();
    if a.nrows() != m || c.nrows() != m || b.ncols() != n || d.ncols() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "E is {m}x{n}; A has {} rows, C {} rows, B {} columns, D {} columns",
            a.nrows(),
            c.nrows(),
            b.ncols(),
            d.ncols()
        )));
    }
    let shape_x = (a.ncols(), b.nrows());
    let shape_y = (c.ncols(), d.nrows());
    let unknowns = shape_x.0 * shape_x.1 + shape_y.0 * shape_y.1;
    if unknowns > MAX_UNKNOWNS {
        return Err(AlgebraError::TooLarge { size: unknowns, limit: MAX_UNKNOWNS });
    }
    let op = Op { a, b, c, d };
    let max_iter = 4 * unknowns.max(1);
    let (mut x, mut y, mut iterations) = cgls(&op, e, shape_x, shape_y, max_iter);
    // refine on the remaining residual; corrections stay in the row space
    for _ in 0..3 {
        let r = e - op.apply(&x, &y);
        let (dx, dy, k) = cgls(&op, &r, shape_x, shape_y, max_iter);
        iterations += k;
        if k == 0 {
            break;
        }
        x += dx;
        y += dy;
    }
    let residual = (op.apply(&x, &y) - e).norm();
    Ok(AxbSolution { x, y, residual, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random(rng: &mut impl Rng, r: usize, c: usize) -> DMatrix<f64> {
        DMatrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..1.0))
    }

    /// Dense oracle: pseudo-inverse of `[B^T kron A, D^T kron C]`.
    fn oracle(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>, d: &DMatrix<f64>, e: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
        let k1 = b.transpose().kronecker(a);
        let k2 = d.transpose().kronecker(c);
        let mut k = DMatrix::zeros(k1.nrows(), k1.ncols() + k2.ncols());
        k.columns_mut(0, k1.ncols()).copy_from(&k1);
        k.columns_mut(k1.ncols(), k2.ncols()).copy_from(&k2);
        let rhs = DMatrix::from_column_slice(e.len(), 1, e.as_slice());
        let sol = k.pseudo_inverse(1e-10).unwrap() * rhs;
        let x = DMatrix::from_column_slice(a.ncols(), b.nrows(), &sol.as_slice()[..k1.ncols()]);
        let y = DMatrix::from_column_slice(c.ncols(), d.nrows(), &sol.as_slice()[k1.ncols()..]);
        (x, y)
    }

    #[test]
    fn identity_case() {
        let i = DMatrix::identity(3, 3);
        let z = DMatrix::zeros(3, 3);
        let e = DMatrix::from_fn(3, 3, |r, c| (r * 3 + c) as f64);
        let s = solve_axb_cyd(&i, &i, &z, &z, &e).unwrap();
        assert!((s.x - &e).norm() < 1e-12);
        assert!(s.y.norm() == 0.0);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn zero_right_side() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let (a, b, c, d) = (random(&mut rng, 4, 3), random(&mut rng, 2, 5), random(&mut rng, 4, 2), random(&mut rng, 3, 5));
        let s = solve_axb_cyd(&a, &b, &c, &d, &DMatrix::zeros(4, 5)).unwrap();
        assert_eq!(s.x, DMatrix::zeros(3, 2));
        assert_eq!(s.y, DMatrix::zeros(2, 3));
    }

    #[test]
    fn matches_kronecker_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m: Vec<DMatrix<f64>> = (0..5).map(|_| random(&mut rng, 5, 5)).collect();
            let s = solve_axb_cyd(&m[0], &m[1], &m[2], &m[3], &m[4]).unwrap();
            let (ox, oy) = oracle(&m[0], &m[1], &m[2], &m[3], &m[4]);
            let ores = (&m[0] * &ox * &m[1] + &m[2] * &oy * &m[3] - &m[4]).norm();
            assert!((s.residual - ores).abs() < 1e-8, "{} vs {}", s.residual, ores);
            assert!(s.residual <= ores + 1e-8);
        }
    }

    #[test]
    fn rank_deficient_gives_min_norm() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let u = random(&mut rng, 4, 2);
        let a = &u * u.transpose();
        let b = random(&mut rng, 3, 3);
        let c = DMatrix::zeros(4, 1);
        let d = DMatrix::zeros(1, 3);
        let e = random(&mut rng, 4, 3);
        let s = solve_axb_cyd(&a, &b, &c, &d, &e).unwrap();
        let (ox, _) = oracle(&a, &b, &c, &d, &e);
        assert!((&s.x - ox).norm() < 1e-7);
    }

    #[test]
    fn dimension_checks() {
        let i = DMatrix::identity(2, 2);
        assert!(matches!(solve_axb_cyd(&i, &i, &i, &i, &DMatrix::zeros(3, 2)), Err(AlgebraError::DimensionMismatch(_))));
        let big = DMatrix::zeros(1, 101);
        let b = DMatrix::zeros(101, 1);
        let e = DMatrix::zeros(1, 1);
        assert!(matches!(solve_axb_cyd(&big, &b, &big, &b, &e), Err(AlgebraError::TooLarge { .. })));
    }
}
