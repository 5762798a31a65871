use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::{CooMatrix, CscMatrix};

use super::FemError;

pub const MAX_EIGENPAIRS: usize = 20;
pub const MAX_UNKNOWNS: usize = 100_000;
/// Below this many unknowns the problem is solved densely.
pub const DENSE_LIMIT: usize = 2000;
/// Invariant every returned pair satisfies.
pub const RESIDUAL_BOUND: f64 = 1e-8;

const SUBSPACE_TARGET: f64 = 1e-10;
const SUBSPACE_MAX_ITER: usize = 1000;

#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<f64>,
    /// free-node vectors, mass-normalized
    pub vectors: Vec<DVector<f64>>,
    /// `||K v - lambda M v|| / ||v||`
    pub residuals: Vec<f64>,
    pub refinement: Option<usize>,
}

pub fn eigen_residual(k: &CscMatrix<f64>, m: &CscMatrix<f64>, v: &DVector<f64>, lambda: f64) -> f64 {
    let r = k * v - (m * v) * lambda;
    r.norm() / v.norm()
}

fn normalize_sign(v: &mut DVector<f64>) {
    let imax = v.iamax();
    if v[imax] < 0.0 {
        v.neg_mut();
    }
}

/// Lowest `k` pairs of the dense pencil `(a, b)` with `b` positive definite.
fn dense_pencil(a: &DMatrix<f64>, b: &DMatrix<f64>, k: usize) -> Option<(Vec<f64>, DMatrix<f64>)> {
    let chol = b.clone().cholesky()?;
    let l = chol.l();
    let z = l.solve_lower_triangular(a)?;
    let c = l.solve_lower_triangular(&z.transpose())?;
    let c = (&c + c.transpose()) * 0.5;
    let e = SymmetricEigen::new(c);
    let mut idx: Vec<usize> = (0..a.nrows()).collect();
    idx.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let k = k.min(idx.len());
    let mut y = DMatrix::zeros(a.nrows(), k);
    for (c, &i) in idx[..k].iter().enumerate() {
        y.set_column(c, &e.eigenvectors.column(i));
    }
    let vecs = l.tr_solve_lower_triangular(&y)?;
    Some((idx[..k].iter().map(|&i| e.eigenvalues[i]).collect(), vecs))
}

/// Reverse Cuthill–McKee order (new position -> old index) of a symmetric pattern.
pub fn rcm_order(a: &CscMatrix<f64>) -> Vec<usize> {
    let n = a.nrows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|j| a.col(j).row_indices().iter().copied().filter(|&i| i != j).collect())
        .collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (adj[v].len(), v));
    for &s in &by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (adj[w].len(), w));
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order.reverse();
    order
}

/// Sparse Cholesky of `K` under a bandwidth-reducing permutation.
struct Factor {
    order: Vec<usize>,
    chol: CscCholesky<f64>,
}

impl Factor {
    fn new(k: &CscMatrix<f64>) -> Result<Factor, FemError> {
        let order = rcm_order(k);
        let mut pos = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut coo = CooMatrix::new(k.nrows(), k.ncols());
        for (i, j, &v) in k.triplet_iter() {
            coo.push(pos[i], pos[j], v);
        }
        let chol = CscCholesky::factor(&CscMatrix::from(&coo)).map_err(|_| FemError::ConvergenceFailure(0))?;
        Ok(Factor { order, chol })
    }

    fn solve(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let pb = DMatrix::from_fn(b.nrows(), b.ncols(), |i, j| b[(self.order[i], j)]);
        let px = self.chol.solve(&pb);
        let mut x = DMatrix::zeros(b.nrows(), b.ncols());
        for (new, &old) in self.order.iter().enumerate() {
            x.row_mut(old).copy_from(&px.row(new));
        }
        x
    }
}

fn start_block(n: usize, p: usize) -> DMatrix<f64> {
    // fixed quasi-random entries keep runs reproducible
    DMatrix::from_fn(n, p, |i, j| {
        let t = (i as f64 + 1.0) * (0.618_033_988_749_894_9 + j as f64 * 0.414_213_562_373_095_1);
        (t.fract() - 0.5) + 0.1 * (((i * (j + 3)) % 17) as f64 / 17.0)
    })
}

fn subspace_iteration(k_mat: &CscMatrix<f64>, m_mat: &CscMatrix<f64>, nev: usize) -> Result<(Vec<f64>, DMatrix<f64>), FemError> {
    let n = k_mat.nrows();
    let p = (2 * nev).max(nev + 8).min(n);
    let factor = Factor::new(k_mat)?;
    let mut x = start_block(n, p);
    let mut best = 0;
    for _ in 0..SUBSPACE_MAX_ITER {
        let y = factor.solve(&(m_mat * &x));
        let q = y.qr().q();
        let kr = q.transpose() * (k_mat * &q);
        let mr = q.transpose() * (m_mat * &q);
        let (vals, z) = dense_pencil(&kr, &mr, p).ok_or(FemError::ConvergenceFailure(best))?;
        x = &q * z;
        let mut converged = 0;
        for c in 0..nev {
            let v = x.column(c).into_owned();
            if eigen_residual(k_mat, m_mat, &v, vals[c]) <= SUBSPACE_TARGET {
                converged += 1;
            } else {
                break;
            }
        }
        best = best.max(converged);
        if converged == nev {
            return Ok((vals[..nev].to_vec(), x.columns(0, nev).into_owned()));
        }
    }
    // accept if the invariant bound holds even though the target was missed
    let kr = x.transpose() * (k_mat * &x);
    let mr = x.transpose() * (m_mat * &x);
    let (vals, z) = dense_pencil(&kr, &mr, nev).ok_or(FemError::ConvergenceFailure(best))?;
    let x = &x * z;
    let ok = (0..nev).take_while(|&c| eigen_residual(k_mat, m_mat, &x.column(c).into_owned(), vals[c]) <= RESIDUAL_BOUND).count();
    if ok < nev {
        return Err(FemError::ConvergenceFailure(ok));
    }
    Ok((vals, x))
}

/// Lowest `nev` generalized eigenpairs of `K v = lambda M v`.
pub fn eigs(k_mat: &CscMatrix<f64>, m_mat: &CscMatrix<f64>, nev: usize) -> Result<EigenResult, FemError> {
    let n = k_mat.nrows();
    if nev == 0 || nev > MAX_EIGENPAIRS || nev > n {
        return Err(FemError::InvalidCount { requested: nev, available: n.min(MAX_EIGENPAIRS) });
    }
    if n > MAX_UNKNOWNS {
        return Err(FemError::TooLarge { size: n, limit: MAX_UNKNOWNS });
    }
    let (values, vecs) = if n < DENSE_LIMIT {
        dense_pencil(&DMatrix::from(k_mat), &DMatrix::from(m_mat), nev).ok_or(FemError::ConvergenceFailure(0))?
    } else {
        subspace_iteration(k_mat, m_mat, nev)?
    };
    let mut vectors = Vec::with_capacity(nev);
    let mut residuals = Vec::with_capacity(nev);
    for (c, &lambda) in values.iter().enumerate() {
        let mut v = vecs.column(c).into_owned();
        let mnorm = v.dot(&(m_mat * &v)).sqrt();
        v /= mnorm;
        normalize_sign(&mut v);
        residuals.push(eigen_residual(k_mat, m_mat, &v, lambda));
        vectors.push(v);
    }
    if let Some(bad) = residuals.iter().position(|&r| r > RESIDUAL_BOUND) {
        return Err(FemError::ConvergenceFailure(bad));
    }
    Ok(EigenResult { values, vectors, residuals, refinement: None })
}
