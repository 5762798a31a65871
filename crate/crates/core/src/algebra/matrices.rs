use nalgebra::DMatrix;

use super::AlgebraError;
use crate::geometry::DiscretizedVolume;
use crate::label::Label;

/// `A[i][j] = 1` when copies `i` and `j` share an internal side.
pub fn adjacency(dv: &DiscretizedVolume) -> DMatrix<i64> {
    let n = dv.n_copies();
    let mut a = DMatrix::zeros(n, n);
    for s in dv.internal_sides() {
        a[(s.a, s.b)] = 1;
        a[(s.b, s.a)] = 1;
    }
    a
}

/// `X = D + A` with `D` the number of internal sides of each copy. Two
/// copies sharing two sides would count twice, matching `Q Q^T`.
pub fn auxiliary(dv: &DiscretizedVolume) -> DMatrix<i64> {
    let n = dv.n_copies();
    let mut x = DMatrix::zeros(n, n);
    for s in dv.internal_sides() {
        x[(s.a, s.a)] += 1;
        x[(s.b, s.b)] += 1;
        x[(s.a, s.b)] += 1;
        x[(s.b, s.a)] += 1;
    }
    x
}

/// `N x K` incidence of copies and internal sides, columns in the volume's
/// internal-side order.
pub fn structural(dv: &DiscretizedVolume) -> DMatrix<i64> {
    let n = dv.n_copies();
    let k = dv.internal_sides().len();
    let mut q = DMatrix::zeros(n, k);
    for (c, s) in dv.internal_sides().iter().enumerate() {
        q[(s.a, c)] = 1;
        q[(s.b, c)] = 1;
    }
    q
}

/// Two-colouring `w` of the copies with `X w = 0`.
pub fn checkerboard(dv: &DiscretizedVolume) -> Result<Vec<i64>, AlgebraError> {
    crate::geometry::two_colouring(dv)
        .map(|c| c.into_iter().map(i64::from).collect())
        .ok_or(AlgebraError::NotBipartite)
}

/// Signed gluing operator for label `l`: entry `(i, j) = 1` when copies `i`
/// and `j` are glued across `l`, and `(i, i) = -1` when side `l` of copy `i`
/// is on the boundary. It describes how a Dirichlet eigenfunction continues
/// across side `l`: evenly into the neighbour, oddly into the mirror image.
pub fn gluing_operator(dv: &DiscretizedVolume, l: Label) -> DMatrix<f64> {
    let n = dv.n_copies();
    let mut s = DMatrix::zeros(n, n);
    for i in 0..n {
        match dv.neighbor(i, l) {
            Some(j) => s[(i, j)] = 1.0,
            None => s[(i, i)] = -1.0,
        }
    }
    s
}

pub fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    m.map(|v| v as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{apply_word, Tile};
    use Label::*;

    #[test]
    fn two_copies() {
        let dv = apply_word(&Tile::equilateral(), &[Alpha]).unwrap();
        assert_eq!(adjacency(&dv), DMatrix::from_row_slice(2, 2, &[0, 1, 1, 0]));
        assert_eq!(auxiliary(&dv), DMatrix::from_element(2, 2, 1));
        assert_eq!(structural(&dv), DMatrix::from_element(2, 1, 1));
        let w = checkerboard(&dv).unwrap();
        assert_eq!(w, vec![1, -1]);
    }

    #[test]
    fn seven_path() {
        let dv = apply_word(&Tile::equilateral(), &[Gamma, Beta, Alpha, Gamma, Beta, Alpha]).unwrap();
        let x = auxiliary(&dv);
        let d: Vec<i64> = (0..7).map(|i| x[(i, i)]).collect();
        assert_eq!(d, vec![1, 2, 2, 2, 2, 2, 1]);
        let q = structural(&dv);
        assert_eq!(x, &q * q.transpose());
        let w = checkerboard(&dv).unwrap();
        assert_eq!(w, vec![1, -1, 1, -1, 1, -1, 1]);
        let xw = &x * DMatrix::from_column_slice(7, 1, &w);
        assert!(xw.iter().all(|&v| v == 0));
    }

    #[test]
    fn gluing_operators_sum_to_shifted_auxiliary() {
        let dv = apply_word(&Tile::equilateral(), &[Gamma, Beta, Alpha, Beta]).unwrap();
        let sum = Label::ALL.iter().fold(DMatrix::zeros(5, 5), |acc, &l| acc + gluing_operator(&dv, l));
        let expect = to_f64(&auxiliary(&dv)) - DMatrix::identity(5, 5) * 3.0;
        assert_eq!(sum, expect);
    }
}
