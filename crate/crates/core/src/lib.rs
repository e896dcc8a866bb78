//! Topological Tutte polynomials of graphs embedded in surfaces and
//! pseudo-surfaces.

pub mod corpus;
pub mod edgeset;
pub mod embedding;
pub mod exec;
pub mod graph;
pub mod matroid;
pub mod poly;
pub mod ribbon;
pub mod states;
pub mod unionfind;

pub use edgeset::{EdgeId, EdgeSet, VertexId, MAX_EDGES};
pub use exec::Exec;
pub use graph::{GraphError, Multigraph};
pub use ribbon::{HalfEdge, RibbonError, RotationSystem, Sign, Side};
