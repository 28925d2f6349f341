//! Exact shattering analysis of set systems arising from graph
//! orientations.
//!
//! A system is a subset of the boolean cube `{0,1}^X`. This crate computes
//! shattered and strongly-shattered families, VC and dual-VC dimensions,
//! and shattering-extremality by exhaustive enumeration, then applies them
//! to orientation systems of graphs: cyclic/acyclic orientations, k-strong
//! orientations, flow- and distance-constrained orientations,
//! reachability, and forbidden-pattern avoidance. The `verify` module
//! cross-checks every claimed identity against independent combinatorial
//! counts and emits structured reports.

mod bits;
pub mod boolcube;
pub mod corpus;
pub mod graph;
pub mod shattering;
pub mod systems;
pub mod verify;

pub use boolcube::{Cube, CubeError, Family, GroundSet, System};
pub use graph::{Digraph, Graph, GraphError, Orientation, SubgraphMask};
pub use shattering::{profile, ShatterError, ShatterProfile};
pub use systems::{OrientationProperty, SubgraphProperty, SystemsError};
pub use verify::{Limits, Report, Verdict, VerifyError};
