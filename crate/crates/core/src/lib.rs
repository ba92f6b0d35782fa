//! Kirchhoff resistor-network analysis of undirected connected graphs.
//!
//! Every edge is treated as a conductance. For each source/sink pair a unit
//! current is pushed through the network and the resulting node voltages
//! and edge currents are recorded. Collected over all ordered pairs and
//! sorted, they give label-independent per-node and per-edge signatures,
//! which drive:
//!
//! * orbit candidates: nodes with identical voltage signatures
//!   ([`signatures::orbit_partition`]);
//! * isomorphism screening via whole-graph fingerprints
//!   ([`signatures::iso_screen`]);
//! * canonical labeling ([`signatures::canonical_labeling`]).
//!
//! The [`oracle`] module holds exact-arithmetic and brute-force ground truth
//! used to check the floating-point pipeline on small graphs.
//!
//! ```
//! use kcanon::graph::parse_edge_list;
//! use kcanon::signatures::{orbit_partition, Tolerance};
//!
//! let path = parse_edge_list("1 2\n2 3\n").unwrap();
//! let orbits = orbit_partition(&path, Tolerance::default()).unwrap();
//! assert_eq!(orbits.node_sets(), vec![vec![1, 3], vec![2]]);
//! ```

pub mod families;
pub mod graph;
pub mod oracle;
pub mod signatures;
pub mod solver;

pub use graph::{Graph, GraphError, NodeId, Permutation};
pub use signatures::{Fingerprint, IsoVerdict, OrbitPartition, Tolerance};
pub use solver::{LaplacianSystem, PairSolver, SolveMethod, SolverError, VoltageProfile};
