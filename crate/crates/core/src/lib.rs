//! Spanning tree congestion toolkit.
//!
//! The crate builds low-congestion spanning trees by recursive balanced
//! partitioning ([`decomposer`]), evaluates tree congestion two independent
//! ways ([`spantree`]), and pairs every heuristic answer with an exact
//! small-instance oracle: exhaustive spanning-tree search, exact bisection,
//! hereditary bisection and edge expansion ([`cuts`], [`bounds`]). Lower
//! bounds are carried as exact rationals together with the witness that
//! reproduces them.

pub mod bounds;
pub mod catalog;
pub mod cuts;
pub mod decomposer;
pub mod error;
pub mod generators;
pub mod graph;
pub mod limits;
pub mod rational;
pub mod spantree;

mod bits;

pub use bounds::{BoundCertificate, BoundKind, HereditaryBisection};
pub use cuts::{CutOracle, ExpansionCertificate, OracleKind};
pub use decomposer::{cong_span_tree, DecompositionNode, DecompositionTree};
pub use error::{Error, Result};
pub use generators::Family;
pub use graph::{Cut, Edge, Graph, VertexSet};
pub use limits::Limits;
pub use rational::Rational;
pub use spantree::{CongestionReport, SpanningTree};
