//! H-free edge modification toolkit.
//!
//! Exact sandwich and budgeted solvers for forbidding an induced pattern H,
//! polynomial reductions from 3-SAT to H-free deletion and completion,
//! lifting constructions that turn sandwich instances into budgeted ones,
//! the MinOnes correspondences for `K_n - e` deletion, and the file formats
//! and verification routines the command-line front end drives.

pub mod cnf;
pub mod corpus;
pub mod graph;
pub mod io;
pub mod iso;
pub mod minhorn;
pub mod pattern;
pub mod reduce;
pub mod solver;
pub mod verify;

pub use graph::{Graph, GraphError, Pair};
pub use pattern::{Pattern, PatternError, Requirement};
pub use solver::{Mode, ModificationSet, SandwichInstance, BudgetedInstance, SolveError};
