use serde::{Deserialize, Serialize};

use crate::model::Solution;
use crate::objective::{Fitness, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ga,
    Aco,
    Brute,
}

impl Algorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Ga => "ga",
            Algorithm::Aco => "aco",
            Algorithm::Brute => "brute",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Stagnation,
    IterationCap,
    Exhaustive,
}

impl Termination {
    pub fn tag(&self) -> &'static str {
        match self {
            Termination::Stagnation => "stagnation",
            Termination::IterationCap => "iteration_cap",
            Termination::Exhaustive => "exhaustive",
        }
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub sense: Sense,
    pub best: Solution,
    pub best_fitness: Fitness,
    /// Best fitness value after each iteration.
    pub trace: Vec<f64>,
    pub iterations: u64,
    pub evaluations: u64,
    pub termination: Termination,
    pub elapsed_ms: f64,
}
