//! Exact computations with monomial ideals: arithmetic, colon ideals, multigraded
//! Betti numbers and depth, specialised to edge ideals of edge-weighted paths.

pub mod error;
pub mod formulas;
pub mod graph;
pub mod ideal;
pub mod monomial;
pub mod resolution;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::{BranchVariant, ColonWitness, PathDepthQuery, WeightProfile};
pub use graph::{is_integrally_closed_path, weighted_path, WeightSequence, WeightedGraph};
pub use ideal::MonomialIdeal;
pub use monomial::Monomial;
pub use resolution::{betti_table, depth, BettiTable, DepthReport, EngineConfig, Field, Method};
