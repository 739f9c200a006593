//! Rotor-routing on strongly connected ribbon digraphs.
//!
//! The numeric core is generic over an exact integer scalar ([`scalar::Int`]);
//! the aliases at the crate root fix it to [`BigInt`].

pub mod action;
pub mod arborescence;
pub mod config;
pub mod embedding;
pub mod engine;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod scalar;

pub use num_bigint::BigInt;

pub use action::{ActionOptions, RwGoodForm, Schedule};
pub use arborescence::{arborescence_to_rotor, Arborescence};
pub use config::{rotor_subgraph_cycles, RotorConfiguration, RotorCycles};
pub use embedding::{genus, import_undirected, tree_to_arborescence, Bidirected, EdgePairing, SpanningTree, UndirectedGraph};
pub use engine::{Legality, Recurrence, DEFAULT_BUDGET};
pub use equivalence::{EnumerationLimits, OrbitCountMethod, OrbitPartition};
pub use error::{Error, Result};
pub use graph::{validate, EdgeRef, RibbonDigraph, Violation};
pub use scalar::Int;

pub type Divisor = config::Divisor<BigInt>;
pub type Drc = config::Drc<BigInt>;
pub type Laplacian = lattice::Laplacian<BigInt>;
pub type PeriodVector = lattice::PeriodVector<BigInt>;
pub type Lattice = lattice::Lattice<BigInt>;
pub type IntMatrix = lattice::IntMatrix<BigInt>;
pub type SmithDecomposition = lattice::SmithDecomposition<BigInt>;
pub type GameTrace = engine::GameTrace<BigInt>;
pub type RoutingVector = engine::RoutingVector<BigInt>;
pub type BasePointWitness = action::BasePointWitness<BigInt>;
