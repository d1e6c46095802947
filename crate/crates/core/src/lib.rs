//! Exact geodesic triangulations of flat surfaces with conical
//! singularities.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`]: rational scalars, points, rotations and exact predicates.
//! * [`surface`]: the half-edge [`TriSurface`], validation and vertex orbits.
//! * [`angles`]: high-precision cone angles and the Gauss–Bonnet check.
//! * [`certificate`]: canonical, rotation-invariant fingerprints.
//! * [`flip`]: developing quadrilaterals, flippability, flips and replay.
//! * [`delaunay`]: Delaunay flipping, canonical forms and flip paths.
//! * [`polygon`]: simple polygons, their triangulations and flip graphs.
//! * [`io`]: the plain-text surface, polygon and flip-sequence formats.

pub mod angles;
pub mod certificate;
pub mod corpus;
pub mod delaunay;
pub mod error;
pub mod flip;
pub mod geom;
pub mod io;
pub mod polygon;
pub mod surface;

pub use certificate::{certificate, equals, Certificate};
pub use delaunay::{canonical_delaunay, flip_path, make_delaunay, DelaunayReport};
pub use error::{Error, Result};
pub use flip::{develop_quad, flip, is_flippable, replay, DevelopedQuad, FlipSequence};
pub use geom::{incircle, orient2d, segments_cross, Point2, Rotation, Scalar, Sign, Vec2};
pub use polygon::{
    build_flip_graph, check_crossing_pattern, enumerate_triangulations, intersection_number, surface_from_polygon,
    triangulate, verify_crossing_pattern, CrossingReport, CrossingSummary, Diagonal, FlipGraph, PolyTriangulation,
    Polygon,
};
pub use surface::{build_surface, vertex_orbits, DartId, EdgeId, TriSurface};
