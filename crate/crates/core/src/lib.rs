//! Numerical Ricci-symmetry analysis of Kähler manifolds.
//!
//! A manifold is given by a Kähler potential in a single chart with the
//! standard complex structure. From jets of the potential the crate builds
//! the metric, Levi-Civita connection, curvature, Ricci tensor and its
//! covariant derivative, then the derived (0,4)-tensors `R·S`, `Q(g,S)`
//! and `Q^c(g,S)`. The [`classifier`] places the manifold on the ladder
//! Ricci-flat ⊂ Einstein ⊂ Ricci-parallel ⊂ Ricci-semisymmetric ⊂
//! holomorphically Ricci-pseudosymmetric, checking each rung both by its
//! definition and by its characterization on holomorphic planes.

pub mod classifier;
pub mod curvature;
pub mod identities;
pub mod jet;
pub mod metric;
pub mod potential;
pub mod report;
pub mod symmetry;
pub mod tensor;
pub mod zoo;
