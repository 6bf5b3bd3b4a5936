use std::path::Path;

use anyhow::Context;
use fuzzyloc_core::maximin::MaximinContext;
use fuzzyloc_core::{
    run_protocol, AcoConfig, BoundsMode, Error as CoreError, GaConfig, Instance, ProtocolOutcome, Solver,
};
use serde::Serialize;

use crate::args::{AlgoArg, SolveArgs};
use crate::{enumeration_budget, facilities_field, load_named, write_file, CliError, CliResult};

pub fn solver_for(algo: AlgoArg, budget: u128) -> Solver {
    match algo {
        AlgoArg::Ga => Solver::Ga(GaConfig::default()),
        AlgoArg::Aco => Solver::Aco(AcoConfig::default()),
        AlgoArg::Brute => Solver::Exhaustive { budget },
    }
}

/// Bounds mode for a run: brute force always enumerates.
pub fn bounds_mode(solver: &Solver, exact: bool, budget: u128) -> BoundsMode {
    if exact || matches!(solver, Solver::Exhaustive { .. }) {
        BoundsMode::Exact { budget }
    } else {
        BoundsMode::Estimate
    }
}

pub fn protocol(instance: &Instance, solver: &Solver, seed: u64, mode: BoundsMode) -> CliResult<ProtocolOutcome> {
    run_protocol(instance, solver, seed, mode).map_err(|e| match e {
        CoreError::BudgetExceeded { subsets, budget } => CliError::Runtime(anyhow::anyhow!(
            "refusing to enumerate {subsets} location sets: budget is {budget} (set {} to raise it)",
            crate::BUDGET_ENV
        )),
        other => CliError::Runtime(other.into()),
    })
}

/// Contents of a solve report file.
#[derive(Debug, Serialize)]
pub struct SolveFile<'a> {
    pub instance: &'a str,
    pub bounds_id: String,
    #[serde(flatten)]
    pub outcome: &'a ProtocolOutcome,
}

/// Reads a context file, or the context stored in a solve report.
pub fn read_context(path: &Path) -> CliResult<MaximinContext> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let ctx = value.get("context").cloned().unwrap_or(value);
    let ctx = serde_json::from_value(ctx).with_context(|| format!("{} holds no bound context", path.display()))?;
    Ok(ctx)
}

pub fn cmd_solve(args: &SolveArgs) -> CliResult<ProtocolOutcome> {
    let named = load_named(args.instance.as_deref(), args.table1, &args.model)?;
    let budget = enumeration_budget()?;
    let solver = solver_for(args.algo, budget);
    let mode = match &args.bounds {
        Some(path) => BoundsMode::Given(read_context(path)?),
        None => bounds_mode(&solver, args.exact_bounds, budget),
    };
    let asked_exact = matches!(mode, BoundsMode::Exact { .. });
    let outcome = protocol(&named.instance, &solver, args.seed, mode)?;
    if asked_exact && !outcome.bound_runs.is_empty() {
        eprintln!("note: too many location sets to enumerate; bounds were estimated");
    }

    let r = &outcome.report;
    let status = if r.best_fitness.feasible { "feasible" } else { "infeasible, penalty" };
    println!("algorithm   {}", r.algorithm);
    println!("instance    {}", named.id);
    println!("objective   {} ({status})", r.best_fitness.value);
    println!("facilities  {}", facilities_field(r.best.open()));
    println!("iterations  {} ({})", r.iterations, r.termination.tag());
    println!("runtime_ms  {:.3}", outcome.total_ms);
    println!("bounds      {} {}", provenance_tag(&outcome.context), outcome.context.id());

    if let Some(path) = &args.out {
        let file = SolveFile { instance: &named.id, bounds_id: outcome.context.id(), outcome: &outcome };
        let text = serde_json::to_string_pretty(&file).context("cannot serialize report")?;
        write_file(path, &(text + "\n"))?;
    }
    Ok(outcome)
}

pub fn provenance_tag(ctx: &MaximinContext) -> String {
    serde_json::to_value(ctx.provenance)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
