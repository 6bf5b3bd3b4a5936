//! Fuzzy queuing maximal benefit location.
//!
//! Place `M` single-server facilities on an `n`-node network. Customers pick
//! an open facility by a logit rule on distance, every facility is an M/M/1
//! queue, and arrivals balk more often as the expected queue approaches a
//! maximum length. Demand and service rates are triangular fuzzy numbers;
//! the fuzzy benefit is turned into a single maximin satisfaction level and
//! optimized by a genetic algorithm or an ant colony, with exhaustive
//! enumeration and queue simulation as oracles on small instances.

pub mod aco;
pub mod combinatorics;
pub mod error;
pub mod fuzzy;
pub mod ga;
pub mod instances;
pub mod maximin;
pub mod model;
pub mod objective;
pub mod oracle;
pub mod protocol;
pub mod report;
pub mod solver;

pub use aco::AcoConfig;
pub use error::{Error, Result};
pub use fuzzy::{FuzzyOp, Slice, TriFuzzy};
pub use ga::GaConfig;
pub use instances::{generate_instance, load_instance, load_table1, save_instance, GeneratorParams};
pub use maximin::{MaximinContext, MaximinObjective, Provenance, SpreadComponents};
pub use model::{Instance, InstanceData, Solution};
pub use objective::{Fitness, Objective, Sense};
pub use protocol::{run_protocol, BoundsMode, ProtocolOutcome};
pub use report::{Algorithm, SolverReport, Termination};
pub use solver::{Solver, DEFAULT_ENUMERATION_BUDGET};
