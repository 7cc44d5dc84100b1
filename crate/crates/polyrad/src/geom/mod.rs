//! Complex-plane primitives: extended-plane points, Mobius maps, the planar
//! shape catalog with membership and boundary-distance queries, and pairwise
//! disjointness tests.

pub mod arc;
pub mod disjoint;
pub mod mobius;
pub mod point;
pub mod shape;

pub use arc::BoundaryArc;
pub use disjoint::{domains_disjoint, Disjointness};
pub use mobius::MobiusMap;
pub use point::{normalize_arg, signed_angle, CPoint};
pub use shape::PlanarDomain;
