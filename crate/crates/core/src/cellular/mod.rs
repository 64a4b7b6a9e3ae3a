//! Lattice-periodic cell colorings of the plane.

mod geometry;
mod hex;
mod quotient;

pub use geometry::{
    max_sq_distance, min_sq_distance, orient, point_in_convex, point_segment_sq_dist,
    segments_intersect, QPoint,
};
pub use hex::{
    b_forbids_unit_distance, build_hadwiger, DistanceVerdict, Hadwiger, HexPrototile, HexSpace,
    HADWIGER_COARSE,
};
pub use quotient::{CellSet, LatticeCoords, LatticeQuotient};
