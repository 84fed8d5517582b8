//! Ensembles, published-table reproduction, fuzz campaigns and the conjecture search.

pub mod conjecture;
pub mod ensemble;
pub mod fuzz;
pub mod output;
pub mod tables;

pub use conjecture::{conjecture_search, conjecture_slack, ConjectureResult, SearchConfig};
pub use ensemble::{EnsembleKind, EnsembleSpec};
pub use fuzz::{fuzz, run_trial, FuzzSummary, Suite, SuiteSummary, TrialOutcome};
pub use tables::{reproduce_tables, Table, TableRow, TABLE_TOL};
