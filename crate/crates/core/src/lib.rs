//! Breadth-first global search with dominance-pruned frontiers.
//!
//! A problem is described by a [`theory::ProblemTheory`]: an initial
//! space, a split relation, extraction of complete candidates, and a
//! dominance relation between spaces of the same level. The
//! [`engine`] walks the split tree one level at a time and keeps only the
//! undominated frontier; in greedy mode it additionally insists that a
//! single space survives each level.
//!
//! [`problems`] holds five instantiations (single-pair shortest path,
//! shortest-path tree, cut- and forest-based spanning trees, 0-1
//! knapsack) and [`oracles`] the independent ground truth used to check
//! them.

pub mod cli;
pub mod engine;
pub mod oracles;
pub mod problems;
pub mod theory;

pub use engine::{solve, EngineConfig, EngineError, Mode, SearchStats, SolveResult};
pub use theory::{Cost, Direction, ProblemTheory, Space};
