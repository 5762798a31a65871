//! Tiles, reflective gluing and discretized volumes.

pub mod equivalence;
pub mod exact;
mod io;
pub mod tile;
pub mod volume;

pub use equivalence::are_equivalent;
pub use io::{dv_from_json, dv_to_json, dv_to_svg, two_colouring, DvSpec};
pub use tile::{Tile, TileSpec};
pub use volume::{apply_word, build_dv, build_dv_with_copies, mirror_relabel, DiscretizedVolume, Gluing, Isometry, Placement};

use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("side lengths do not form a proper triangle")]
    DegenerateTriangle,
    #[error("label {0} used for two sides")]
    DuplicateLabel(Label),
    #[error("copy {0} overlaps an earlier copy")]
    OverlapError(usize),
    #[error("gluing cycle closes inconsistently at copy {copy}")]
    InconsistentCycle { copy: usize },
    #[error("gluing list does not connect all copies")]
    DisconnectedGluing,
    #[error("side {label} of copy {copy} is glued twice")]
    DuplicateSideUse { copy: usize, label: Label },
    #[error("labels {0} and {1} are not on sides of equal length")]
    LabelsNotOnEqualSides(Label, Label),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("invalid volume description: {0}")]
    Parse(String),
}
