//! The user guide, rendered from the `book/` directory.
//!
//! Each chapter of the mdbook guide is included here as module
//! documentation so that every code block in the book compiles and runs
//! under `cargo test --doc`. The book and the doc-tests can therefore never
//! drift apart: editing a chapter re-tests its examples.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/complex-plane.md")]
pub mod complex_plane {}

#[doc = include_str!("../../../book/src/conformal-radius.md")]
pub mod conformal_radius {}

#[doc = include_str!("../../../book/src/walk-on-spheres.md")]
pub mod walk_on_spheres {}

#[doc = include_str!("../../../book/src/ray-systems.md")]
pub mod ray_systems {}

#[doc = include_str!("../../../book/src/polycylinders.md")]
pub mod polycylinders {}

#[doc = include_str!("../../../book/src/extremal-bound.md")]
pub mod extremal_bound_chapter {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
