//! P1 finite elements for the Dirichlet Laplacian on a volume. Every copy
//! carries the same refined reference mesh, so restricting a nodal field to
//! a copy gives samples on one shared grid.

mod assemble;
pub mod eigen;
mod io;
mod mesh;
mod verify;

pub use assemble::{assemble, element_matrices, System};
pub use eigen::{eigen_residual, eigs, EigenResult};
pub use io::{eigen_table_csv, eigenfunction_svg};
pub use mesh::{mesh_tile, mesh_to_json, tile_mesh_positions, DvMesh, TileMesh, MAX_REFINEMENT};
pub use verify::{
    compare_spectra, hersch_classify, solve, verify_transplantation, HerschTag, SpectraComparison, SpectraLevel,
    TransplantCheck,
};

use crate::algebra::AlgebraError;
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FemError {
    #[error("refinement {0} outside 1..=8")]
    RefinementOutOfRange(usize),
    #[error("side {label} of copy {copy} does not meet its neighbour node for node")]
    MeshGluingMismatch { copy: usize, label: Label },
    #[error("eigensolver converged only {0} pairs")]
    ConvergenceFailure(usize),
    #[error("meshes do not match: {0}")]
    MeshMismatch(String),
    #[error("{requested} eigenpairs requested, at most {available} available")]
    InvalidCount { requested: usize, available: usize },
    #[error("{size} unknowns exceed {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
