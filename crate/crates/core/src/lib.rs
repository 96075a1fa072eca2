//! Weighted rank functions of matroids and their entropic realizations.
//!
//! For a matroid on `{1, …, n}` and nonnegative weights `w`, the weighted
//! rank `φ_w(A)` is the largest total weight of an independent subset of
//! `A`. This crate computes `φ_w`, checks that it is submodular and a vertex
//! of the cone of polymatroids with prescribed singleton values, and builds
//! random variables whose joint entropies equal `φ_w` exactly:
//!
//! * binary matroids with integer weights, via linear functionals of iid
//!   fair bits ([`construct::build_binary`]);
//! * graphic matroids with constant weight `log₂k`, via differences of iid
//!   uniform ℤₖ vertex labels ([`construct::build_graphic_zk`]).
//!
//! Every entropy is available both from a closed form (F₂ rank, ℤₖ image
//! size) and from brute-force enumeration of the joint pmf.

pub mod construct;
pub mod corpus;
pub mod dist;
pub mod error;
pub mod figures;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod report;
pub mod setfunc;
pub mod subset;

pub use dist::{EntropyValue, JointDistribution};
pub use error::{Error, Result};
pub use matroid::{Graph, Matroid, WeightFunction};
pub use setfunc::SetFunctionVector;
pub use subset::Subset;
