//! Transplantation matrices between isospectral volumes.
//!
//! Two constructions live here. [`find_transplantation`] builds an orthogonal
//! `M` with `M X1 M^T = X2` from eigendecompositions. Such an `M` is far from
//! unique inside repeated eigenvalues and in general does not carry
//! eigenfunctions across. [`find_intertwiner`] instead solves
//! `M S1_l = S2_l M` for the three signed gluing operators at once; any
//! solution maps a Dirichlet eigenfunction on one volume, copy by copy, to
//! one on the other.

use nalgebra::{DMatrix, SVD};
use serde::{Deserialize, Serialize};

use super::matrices::{auxiliary, gluing_operator, structural, to_f64};
use super::spectrum::{clusters, eigen_sorted};
use super::{AlgebraError, MAX_MATRIX_ORDER};
use crate::geometry::DiscretizedVolume;
use crate::label::Label;

const SPECTRUM_TOL: f64 = 1e-9;
const SIMILARITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct TransplantPair {
    pub m: DMatrix<f64>,
    pub o: DMatrix<f64>,
    /// `||M X1 M^T - X2||_F`
    pub residual_similarity: f64,
    /// `||Q2 - M Q1 O||_F`
    pub residual_qo: f64,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    residual_similarity: f64,
    #[serde(rename = "residual_QO")]
    residual_qo: f64,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
    #[serde(rename = "O")]
    o: Vec<Vec<f64>>,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn from_rows(r: &[Vec<f64>]) -> Result<DMatrix<f64>, AlgebraError> {
    let n = r.len();
    let k = r.first().map_or(0, Vec::len);
    if r.iter().any(|row| row.len() != k) {
        return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
    }
    Ok(DMatrix::from_fn(n, k, |i, j| r[i][j]))
}

impl TransplantPair {
    /// `||M M^T - I||_F`
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.m.nrows();
        (&self.m * self.m.transpose() - DMatrix::identity(n, n)).norm()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PairJson {
            residual_similarity: self.residual_similarity,
            residual_qo: self.residual_qo,
            m: rows(&self.m),
            o: rows(&self.o),
        })
        .expect("plain numbers serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, AlgebraError> {
        let p: PairJson = serde_json::from_value(v.clone()).map_err(|e| AlgebraError::ShapeMismatch(e.to_string()))?;
        Ok(TransplantPair {
            m: from_rows(&p.m)?,
            o: from_rows(&p.o)?,
            residual_similarity: p.residual_similarity,
            residual_qo: p.residual_qo,
        })
    }
}

fn check_square(m: &DMatrix<f64>, what: &str) -> Result<usize, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::ShapeMismatch(format!("{what} is {}x{}", m.nrows(), m.ncols())));
    }
    if m.nrows() > MAX_MATRIX_ORDER {
        return Err(AlgebraError::TooLarge { size: m.nrows(), limit: MAX_MATRIX_ORDER });
    }
    Ok(m.nrows())
}

/// Orthogonal factor of the polar decomposition.
fn polar(a: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = SVD::new(a.clone(), true, true);
    svd.u.expect("u requested") * svd.v_t.expect("v requested")
}

fn pseudo_inverse(a: &DMatrix<f64>) -> DMatrix<f64> {
    if a.is_empty() {
        return DMatrix::zeros(a.ncols(), a.nrows());
    }
    let svd = SVD::new(a.clone(), true, true);
    let tol = 1e-12 * svd.singular_values.max().max(1.0) * a.nrows().max(a.ncols()) as f64;
    svd.pseudo_inverse(tol).expect("tolerance is nonnegative")
}

/// Residuals of a given `M`, `O` for the pair `(X1, Q1)`, `(X2, Q2)`.
pub fn verify_pair(
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    q1: &DMatrix<f64>,
    q2: &DMatrix<f64>,
    m: &DMatrix<f64>,
    o: &DMatrix<f64>,
) -> Result<TransplantPair, AlgebraError> {
    let n = check_square(x1, "X1")?;
    if x2.shape() != (n, n) || m.shape() != (n, n) {
        return Err(AlgebraError::ShapeMismatch("X1, X2 and M must share their order".into()));
    }
    if q1.nrows() != n || q2.nrows() != n || o.nrows() != q1.ncols() || o.ncols() != q2.ncols() {
        return Err(AlgebraError::ShapeMismatch("Q1, Q2 and O are not conformable".into()));
    }
    Ok(TransplantPair {
        residual_similarity: (m * x1 * m.transpose() - x2).norm(),
        residual_qo: (q2 - m * q1 * o).norm(),
        m: m.clone(),
        o: o.clone(),
    })
}

/// Orthogonal `M = U2 R U1^T` with `M X1 M^T = X2`, then `O` by least squares
/// from `Q2 = M Q1 O`. Inside each repeated eigenvalue the block `R` is the
/// Procrustes rotation aligning the projections `U_i^T Q_i` of the side
/// indicator columns; it is the identity elsewhere up to sign.
pub fn find_transplantation(
    x1: &DMatrix<f64>,
    x2: &DMatrix<f64>,
    q1: &DMatrix<f64>,
    q2: &DMatrix<f64>,
) -> Result<TransplantPair, AlgebraError> {
    let n = check_square(x1, "X1")?;
    check_square(x2, "X2")?;
    if x2.nrows() != n {
        return Err(AlgebraError::ShapeMismatch(format!("orders {n} and {}", x2.nrows())));
    }
    let (l1, u1) = eigen_sorted(x1)?;
    let (l2, u2) = eigen_sorted(x2)?;
    let gap = l1.iter().zip(&l2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if gap > SPECTRUM_TOL {
        return Err(AlgebraError::SpectraDiffer(gap));
    }
    let m = if x1 == x2 {
        DMatrix::identity(n, n)
    } else {
        let k = q1.ncols().min(q2.ncols());
        let mut r = DMatrix::zeros(n, n);
        for c in clusters(&l1, 1e-8) {
            let w = c.len();
            let a1 = u1.columns(c.start, w).transpose() * q1.columns(0, k);
            let a2 = u2.columns(c.start, w).transpose() * q2.columns(0, k);
            let cross = &a2 * a1.transpose();
            let block = if cross.norm() > 1e-10 { polar(&cross) } else { DMatrix::identity(w, w) };
            r.view_mut((c.start, c.start), (w, w)).copy_from(&block);
        }
        &u2 * r * u1.transpose()
    };
    let mq1 = &m * q1;
    let o = pseudo_inverse(&mq1) * q2;
    let pair = verify_pair(x1, x2, q1, q2, &m, &o)?;
    if pair.residual_similarity > SIMILARITY_TOL {
        return Err(AlgebraError::DegenerateAlignmentFailed(pair.residual_similarity));
    }
    Ok(pair)
}

/// [`find_transplantation`] on the auxiliary and structural matrices of two volumes.
pub fn find_transplantation_for(dv1: &DiscretizedVolume, dv2: &DiscretizedVolume) -> Result<TransplantPair, AlgebraError> {
    find_transplantation(
        &to_f64(&auxiliary(dv1)),
        &to_f64(&auxiliary(dv2)),
        &to_f64(&structural(dv1)),
        &to_f64(&structural(dv2)),
    )
}

/// Basis of `{M : M S1_l = S2_l M for every label l}` as matrices.
fn intertwiner_space(dv1: &DiscretizedVolume, dv2: &DiscretizedVolume) -> Vec<DMatrix<f64>> {
    let n = dv1.n_copies();
    let id = DMatrix::<f64>::identity(n, n);
    let mut system = DMatrix::zeros(3 * n * n, n * n);
    for (k, l) in Label::ALL.into_iter().enumerate() {
        let s1 = gluing_operator(dv1, l);
        let s2 = gluing_operator(dv2, l);
        // column-major vec: vec(M S1) = (S1^T kron I) vec M, vec(S2 M) = (I kron S2) vec M
        let block = s1.transpose().kronecker(&id) - id.kronecker(&s2);
        system.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    let svd = SVD::new(system, false, true);
    let v_t = svd.v_t.expect("v requested");
    let tol = 1e-9 * svd.singular_values.max().max(1.0);
    let mut basis = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol {
            basis.push(DMatrix::from_column_slice(n, n, v_t.row(i).transpose().as_slice()));
        }
    }
    basis
}

/// Orthogonal `M` with `M S1_l = S2_l M` for all three labels, so that
/// `M X1 M^T = X2` as well and `M` carries Dirichlet eigenfunctions of the
/// first volume to the second, copy by copy.
pub fn find_intertwiner(dv1: &DiscretizedVolume, dv2: &DiscretizedVolume) -> Result<DMatrix<f64>, AlgebraError> {
    let n = dv1.n_copies();
    if dv2.n_copies() != n {
        return Err(AlgebraError::ShapeMismatch(format!("{n} and {} copies", dv2.n_copies())));
    }
    if n > MAX_MATRIX_ORDER {
        return Err(AlgebraError::TooLarge { size: n, limit: MAX_MATRIX_ORDER });
    }
    let basis = intertwiner_space(dv1, dv2);
    if basis.is_empty() {
        return Err(AlgebraError::NoIntertwiner);
    }
    // a fixed handful of generic combinations; keep the best conditioned
    let mut best: Option<(f64, DMatrix<f64>)> = None;
    for trial in 0..8 {
        let t = basis
            .iter()
            .enumerate()
            .fold(DMatrix::zeros(n, n), |acc, (k, b)| acc + b * (1.0 + 0.37 * ((trial * 7 + k * 3) as f64).sin()));
        let smin = SVD::new(t.clone(), false, false).singular_values.min();
        if best.as_ref().is_none_or(|(s, _)| smin > *s) {
            best = Some((smin, t));
        }
    }
    let (smin, t) = best.expect("at least one trial");
    if smin < 1e-8 {
        return Err(AlgebraError::NoIntertwiner);
    }
    // T^T T commutes with every S1_l, so the polar factor still intertwines
    Ok(polar(&t))
}

/// Per-copy linear combination `f2_i = sum_j M_ij f1_j`, applied pointwise to
/// samples on a shared reference grid.
pub fn transplant_vector(m: &DMatrix<f64>, f1: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, AlgebraError> {
    if m.ncols() != f1.len() {
        return Err(AlgebraError::ShapeMismatch(format!("M has {} columns, {} copies given", m.ncols(), f1.len())));
    }
    let len = f1.first().map_or(0, Vec::len);
    if f1.iter().any(|f| f.len() != len) {
        return Err(AlgebraError::ShapeMismatch("copies sampled on different grids".into()));
    }
    Ok((0..m.nrows())
        .map(|i| {
            let mut out = vec![0.0; len];
            for (j, f) in f1.iter().enumerate() {
                let c = m[(i, j)];
                if c != 0.0 {
                    out.iter_mut().zip(f).for_each(|(o, v)| *o += c * v);
                }
            }
            out
        })
        .collect())
}

/// Rows of comma-separated numbers, no header.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for i in 0..m.nrows() {
        w.write_record(m.row(i).iter().map(|v| format!("{v}"))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

pub fn matrix_from_csv(s: &str) -> Result<DMatrix<f64>, AlgebraError> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(s.as_bytes());
    let mut data = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| AlgebraError::Csv(e.to_string()))?;
        let row: Result<Vec<f64>, _> = rec.iter().map(|t| t.parse::<f64>()).collect();
        data.push(row.map_err(|e| AlgebraError::Csv(e.to_string()))?);
    }
    from_rows(&data).map_err(|_| AlgebraError::Csv("rows of different length".into()))
}
