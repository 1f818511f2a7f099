//! Exact analysis of line arrangements in the rational projective plane.
//!
//! The crate computes intersection lattices, Jacobian syzygy modules and
//! their minimal degree `mdr`, the saturation defects of the singular
//! scheme, and the hexagon construction linking Pascal's theorem to the
//! degree-8 gap between the saturated and Jacobian ideals of Ziegler-type
//! arrangements. All verdicts use exact rational arithmetic.

pub mod arrangement;
pub mod builtins;
pub mod cli;
pub mod geometry;
pub mod hexagon;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod search;
pub mod singular;
pub mod svg;
pub mod syzygy;

pub use arrangement::{lattice_isomorphic, Arrangement, Lattice, MultPoint};
pub use geometry::{LinearForm, ProjPoint};
pub use hexagon::Hexagon;
pub use linalg::{RatMatrix, Rational};
pub use poly::{graded_dim, parse, HomPoly, LocalJet, Var};
pub use syzygy::{mdr, minimal_generator_degrees, SyzygyProfile};
