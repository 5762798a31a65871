//! Matrices attached to a volume, spectra, and transplantation matrices.

mod axb;
pub mod matrices;
pub mod spectrum;
pub mod transplant;

pub use axb::{solve_axb_cyd, AxbSolution};
pub use matrices::{adjacency, auxiliary, checkerboard, gluing_operator, structural, to_f64};
pub use spectrum::{eigen_sorted, spectrum};
pub use transplant::{
    find_intertwiner, find_transplantation, find_transplantation_for, matrix_from_csv, matrix_to_csv,
    transplant_vector, verify_pair, TransplantPair,
};

/// Largest matrix order handled by the dense routines here.
pub const MAX_MATRIX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("copies cannot be two-coloured")]
    NotBipartite,
    #[error("spectra differ by {0:.3e}")]
    SpectraDiffer(f64),
    #[error("degenerate eigenspace alignment left residual {0:.3e}")]
    DegenerateAlignmentFailed(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("problem too large: {size} exceeds {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("no invertible intertwiner between the gluing operators")]
    NoIntertwiner,
    #[error("csv: {0}")]
    Csv(String),
}
