//! Inner radii of planar domains and products of them over polycylinders.
//!
//! The library computes conformal (inner) radii of a catalog of planar
//! shapes, estimates them independently with a walk-on-spheres Monte Carlo
//! method, evaluates the ray-system functionals `χ`, `α` and `L^(γ)`, and
//! numerically verifies an extremal upper bound on the product
//! `R^γ(B₀, 0) · ∏ R(B_k, A_k)` over systems of mutually non-overlapping
//! polycylindrical domains in C^n.
//!
//! See the `book/` guide for worked examples, or the `polyrad` CLI for
//! batch evaluation.

pub mod error;
pub mod extremal;
pub mod geom;
pub mod poly;
pub mod radius;
pub mod rays;
pub mod wos;

pub use error::{Error, Result};
pub use extremal::{
    extremal_bound, generate_disk_config, generate_sector_config, planar_inequality_check,
    randomized_verification_sweep, verify_configuration, BoundParams, BoundValue, HypothesisFlags,
    HypothesisMode, SweepResult, VerificationReport,
};
pub use geom::{domains_disjoint, CPoint, Disjointness, MobiusMap, PlanarDomain};
pub use poly::{
    generalized_inner_radius, generalized_inner_radius_subset, JEstimate, PolyConfiguration,
    PolyDomain, PolyPoint, RadiiMethod,
};
pub use radius::{inner_radius_analytic, transport_radius, RadiusMethod, RadiusValue};
pub use rays::{
    alpha_vector, check_theorem_normalization, chi, l_gamma, l_gamma_vector, normalize_l0,
    roots_of_unity, NormalizationCheck, PolyRaySystem, RaySystem,
};
pub use wos::{wos_inner_radius, WosEstimate, WosParams, DEFAULT_SEED};

pub mod guide;
