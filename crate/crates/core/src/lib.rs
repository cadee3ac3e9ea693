//! Generalized approximation spaces over finite universes.
//!
//! A binary relation `R` on a finite universe `U` induces four neighborhood
//! operators (successor, predecessor, and their intersection and union).
//! Each operator yields a pair of rough approximation operators and a family
//! of neighborhoods which, when it covers `U`, is the subbase of a topology.
//! The [`harness`] module checks the known relationships between all of these
//! exhaustively on small universes.

pub mod approximation;
pub mod error;
pub mod format;
pub mod harness;
pub mod neighborhood;
pub mod relation;
pub mod set;
pub mod topology;
pub mod universe;

#[doc(hidden)]
pub mod testing;

/// Largest supported universe; element sets are single machine words.
pub const MAX_UNIVERSE: usize = 64;

pub use approximation::{
    approximation_table, lower_approx, upper_approx, ApproximationPair, ApproximationSpace,
    ApproximationTable,
};
pub use error::{Error, Result};
pub use neighborhood::{
    check_neighborhood_sandwich, neighborhood, neighborhood_at, neighborhood_family,
    NeighborhoodKind, SetFamily,
};
pub use relation::{complement, BinaryRelation, RelationProfile};
pub use set::ElementSet;
pub use topology::{
    base_conditions, closure, compare_topologies, generate_topology, induced_topology, interior,
    is_base, is_cover, is_topology, refines, relation_subbase_condition, Topology, TopologyOrder,
};
pub use universe::Universe;
