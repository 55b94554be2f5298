//! Solution-space geometry of strict random 3-SAT.
//!
//! A 3-CNF formula over N variables carves the Boolean hypercube {0,1}^N:
//! every strict 3-clause (three distinct variables) removes the 2^(N-3)
//! assignments matching its falsifying pattern. This crate makes that
//! geometry concrete at desk scale:
//!
//! * [`formula`] — literals, canonical strict 3-clauses, formulas, the
//!   seeded random-instance generator, and [`dimacs`] interchange;
//! * [`hypercube`] — the solution set as a bit vector over all 2^N
//!   assignment indices, with clauses applied as strided subcube clears;
//! * [`topology`] — Hamming-1 cluster decomposition, locally/globally
//!   frozen variables, removed-variable probes, and clause-by-clause
//!   replay of the structural trajectory;
//! * [`extremal`] — the boundary instances: 8-clause minimal unsatisfiable
//!   cores, 7*C(N,3)-clause maximal satisfiable instances, and the exact
//!   counts bracketing the satisfiable regime;
//! * [`solver`] — a complete, instrumented chronological DFS (no
//!   propagation) whose telemetry mirrors the geometry;
//! * [`experiments`] — seeded Monte Carlo sweeps over (N, alpha) grids:
//!   satisfiability probability with Wilson intervals, measured vs
//!   predicted solution counts, cluster/freezing fractions, and the
//!   easy-hard-easy search-cost curve split by outcome.
//!
//! The `satcube` binary exposes all of it as scriptable subcommands.

pub mod dimacs;
pub mod error;
pub mod experiments;
pub mod extremal;
pub mod formula;
pub mod hypercube;
pub mod rng;
pub mod solver;
pub mod topology;

pub use error::{Error, Result};
pub use formula::{Clause, Formula, GenConfig, Literal, PartialAssignment, SampleMode};
pub use hypercube::{AssignmentIndex, SolutionSet};
