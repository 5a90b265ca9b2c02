//! Tile codes: CSS quantum codes whose checks are translates of a pair of
//! edge-set tiles on a 2D lattice, truncated at open boundaries.

pub mod cli;
pub mod codegen;
pub mod distance;
pub mod gf2;
pub mod io;
pub mod layouts;
pub mod search;
pub mod tiles;

pub use codegen::{
    build_code, check_commutation, compute_k, logical_basis, Certainty, CodeParameters,
    StabilizerCode,
};
pub use gf2::{BitMatrix, BitVec};
pub use layouts::{AnchorRole, Layout, LayoutSpec};
pub use tiles::{EdgeCoord, Tile, TilePair};
