use serde::{Deserialize, Serialize};

use crate::aco::{run_aco, AcoConfig};
use crate::error::Result;
use crate::ga::{run_ga, GaConfig};
use crate::model::Instance;
use crate::objective::Objective;
use crate::oracle::enumerate_optimum;
use crate::report::{Algorithm, SolverReport, Termination};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// A solver together with its configuration. The seed is supplied per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "lowercase")]
pub enum Solver {
    Ga(GaConfig),
    Aco(AcoConfig),
    #[serde(rename = "brute")]
    Exhaustive { budget: u128 },
}

impl Solver {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Solver::Ga(_) => Algorithm::Ga,
            Solver::Aco(_) => Algorithm::Aco,
            Solver::Exhaustive { .. } => Algorithm::Brute,
        }
    }

    pub fn run(&self, instance: &Instance, objective: &dyn Objective, seed: u64) -> Result<SolverReport> {
        match self {
            Solver::Ga(cfg) => run_ga(instance, objective, &GaConfig { seed, ..cfg.clone() }),
            Solver::Aco(cfg) => run_aco(instance, objective, &AcoConfig { seed, ..cfg.clone() }),
            Solver::Exhaustive { budget } => {
                let start = std::time::Instant::now();
                let result = enumerate_optimum(instance, objective, *budget)?;
                Ok(SolverReport {
                    algorithm: Algorithm::Brute,
                    seed,
                    sense: objective.sense(),
                    best: result.best,
                    best_fitness: result.best_fitness,
                    trace: vec![result.best_fitness.value],
                    iterations: result.evaluated_count,
                    evaluations: result.evaluated_count,
                    termination: Termination::Exhaustive,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                })
            }
        }
    }
}
