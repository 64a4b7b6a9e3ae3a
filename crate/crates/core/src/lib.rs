//! Exact construction and verification of ordered Szlam colorings and
//! dominance certificates, for periodic subsets of the line and for
//! lattice-periodic hexagon colorings of the plane.
//!
//! Everything is decided in exact arithmetic: rationals for the line,
//! `Q(√3)` for the hexagonal tiling.

pub mod cellular;
pub mod dominance;
pub mod error;
pub mod exactnum;
pub mod io;
pub mod periodic1d;
pub mod space;
pub mod szlam;
pub mod unit_distance;

pub use cellular::{build_hadwiger, b_forbids_unit_distance, CellSet, DistanceVerdict, Hadwiger, HexSpace, QPoint};
pub use dominance::{
    admissible_translaters, from_szlam, roundtrip_check, roundtrip_orderings, synthesize_any, synthesize_certificate,
    to_szlam_data, verify_dominance, DominanceCertificate, RoundtripReport, SynthOptions,
};
pub use error::{Error, Result};
pub use exactnum::{QuadNum, Rational};
pub use io::{parse, render_svg, serialize, Body, CertificateDoc, DocSpace, Document, Kind, ParseError};
pub use periodic1d::{Atom, PeriodicSet};
pub use space::{PeriodicLine, SetSpace};
pub use szlam::{
    build_ordered_coloring, is_ordered_szlam_coloring, is_szlam_coloring, validate_szlam, Coloring, SzlamData,
    ValidityReport,
};
pub use unit_distance::{
    check_proper, point_color, sample_lattice_points, unit_pairs, witness_points, ColoredPointSet, MetricPoint, NormTag,
    ProperReport, Sampling,
};
