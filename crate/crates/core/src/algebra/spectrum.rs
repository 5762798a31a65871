use nalgebra::{DMatrix, SymmetricEigen};

use super::AlgebraError;

fn check_symmetric(m: &DMatrix<f64>) -> Result<(), AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSymmetric);
    }
    let scale = m.amax().max(1.0);
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(AlgebraError::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Eigenvalues in ascending order.
pub fn spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>, AlgebraError> {
    Ok(eigen_sorted(m)?.0)
}

/// Ascending eigenvalues with matching orthonormal eigenvectors as columns.
pub fn eigen_sorted(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>), AlgebraError> {
    check_symmetric(m)?;
    let sym = (m + m.transpose()) * 0.5;
    let e = SymmetricEigen::new(sym);
    let n = m.nrows();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let values = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vectors.set_column(k, &e.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

/// Groups of indices of sorted eigenvalues closer than `tol` to their neighbour.
pub fn clusters(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i] - values[i - 1]).abs() > tol * values[i].abs().max(1.0) {
            out.push(start..i);
            start = i;
        }
    }
    out
}
