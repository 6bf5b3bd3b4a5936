//! The seven-run solve protocol: six bound runs, then the maximin run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximin::{estimate_bounds, BoundRun, MaximinContext, MaximinObjective};
use crate::model::Instance;
use crate::oracle::exact_bounds;
use crate::report::SolverReport;
use crate::solver::Solver;

/// Where the membership bounds come from.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundsMode {
    /// Six runs of the same solver.
    Estimate,
    /// Full enumeration; falls back to estimation when the budget is exceeded.
    Exact { budget: u128 },
    /// A previously computed context.
    Given(MaximinContext),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub context: MaximinContext,
    pub bound_runs: Vec<BoundRun>,
    pub report: SolverReport,
    /// Wall time of all runs, including bound estimation.
    pub total_ms: f64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seeds for the six bound runs, derived from the run seed.
pub fn bound_seeds(seed: u64) -> [u64; 6] {
    std::array::from_fn(|k| splitmix64(seed ^ splitmix64(k as u64 + 1)))
}

pub fn run_protocol(instance: &Instance, solver: &Solver, seed: u64, mode: BoundsMode) -> Result<ProtocolOutcome> {
    let start = std::time::Instant::now();
    let (context, bound_runs) = match mode {
        BoundsMode::Given(ctx) => (ctx, Vec::new()),
        BoundsMode::Exact { budget } => match exact_bounds(instance, budget) {
            Ok(ctx) => (ctx, Vec::new()),
            Err(Error::BudgetExceeded { .. }) if !matches!(solver, Solver::Exhaustive { .. }) => {
                estimate_bounds(instance, solver, bound_seeds(seed))?
            }
            Err(e) => return Err(e),
        },
        BoundsMode::Estimate => estimate_bounds(instance, solver, bound_seeds(seed))?,
    };
    let objective = MaximinObjective { instance, context: &context };
    let report = solver.run(instance, &objective, seed)?;
    Ok(ProtocolOutcome { context, bound_runs, report, total_ms: start.elapsed().as_secs_f64() * 1e3 })
}
