//! Nested sets on cycle graphs, the dihedral action on them, and the graded
//! equivariant structure of the cyclohedron face ring.

pub mod arith;
pub mod census;
pub mod dihedral;
pub mod equivariant;
mod error;
pub mod graph;
pub mod matchings;
pub mod nested;
pub mod series;

pub use census::{census_bruteforce, census_levels, CensusEntry, CensusTable};
pub use dihedral::{DihedralElement, DihedralGroup, OrbitDecomposition, SubgroupDescriptor};
pub use equivariant::{theorem_series, Ambient, InducedDecomposition, Monomial};
pub use error::{Error, Result};
pub use graph::{cycle_graph, Graph, VertexSubset, MAX_VERTICES};
pub use nested::{enumerate_nested_sets, f_vector, FVector, NestedSet, TubeSystem};
pub use series::{Poly, RationalSeries};
