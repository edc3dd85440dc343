//! Construction, witness mapping, and exact-oracle verification for a
//! family of hardness reductions around the maximum induced matching
//! problem in Hamiltonian bipartite graphs.
//!
//! The crate is organized around one currency type, [`graph::Graph`], and
//! explicit witnesses ([`graph::VertexSet`], [`graph::EdgeSet`],
//! [`graph::CycleWitness`]) so that every claim a reduction makes can be
//! checked in polynomial time:
//!
//! - [`paths`]: Eulerian circuits, line graphs, and endpoint-prescribed
//!   Hamiltonian paths in dense balanced bipartite graphs.
//! - [`clique_gap`]: the clique doubling reduction with lift/project
//!   witness maps.
//! - [`im_hardness`]: the gadget/connector reduction from clique finding
//!   to induced matching in a Hamiltonian bipartite graph.
//! - [`approx`]: the four optimum-preserving constructions behind the
//!   inapproximability arguments.
//! - [`solver`]: branch-and-bound exact solvers for maximum clique,
//!   independent set, and induced matching.
//! - [`brute`]: tiny exhaustive reference oracles the solvers are tested
//!   against.
//! - [`verify`]: seeded verification campaigns and bit-exact replay.

pub mod approx;
mod bits;
pub mod brute;
pub mod clique_gap;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod im_hardness;
pub mod paths;
pub mod solver;
pub mod verify;

pub use error::Error;

/// Version tag embedded in every structured JSON artifact this crate or
/// its CLI emits (sidecars, bundles, reports). Witness files follow the
/// fixed `{"kind", "items"}` schema and carry no tag.
pub const FORMAT_VERSION: &str = "1";
