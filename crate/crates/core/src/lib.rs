//! Discretized volumes built from reflected triangle copies, their
//! permutation groups and coloured graphs, isospectrality checks and two
//! transplantation methods (algebraic and conformal).

pub mod algebra;
pub mod conformal;
pub mod fem;
pub mod geometry;
pub mod graph;
pub mod group;
pub mod label;
pub mod search;
pub mod svg;

pub use label::Label;
