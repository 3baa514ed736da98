//! Certified Alon-Tarsi orientations for plane graphs.
//!
//! Every planar graph receives an orientation with out-degree at most 4
//! whose even and odd Eulerian sub-digraph counts differ (so its
//! Alon-Tarsi number is at most 5), and a matching `M` together with such
//! an orientation of `G - M` with out-degree at most 3. Each step of the
//! construction is re-validated, and the final certificates are checked by
//! [`verify`] without trusting the construction.

pub mod at_core;
pub mod at_planar;
pub mod error;
pub mod graph;
pub mod io;
pub mod plane_graph;
pub mod verify;
pub mod witness_ops;

pub use error::{Error, Result};
pub use at_planar::{at4_matching_certificate, at5_certificate, Certificate, CertificateKind, Matching};
pub use graph::{Edge, Graph, Vertex};
pub use plane_graph::{BoundaryWalk, ChordSplit, GraphKind, NamedGraph, PlaneGraph};
