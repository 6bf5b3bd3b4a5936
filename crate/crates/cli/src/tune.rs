use fuzzyloc_core::maximin::{estimate_bounds, MaximinContext};
use fuzzyloc_core::oracle::exact_bounds;
use fuzzyloc_core::protocol::bound_seeds;
use fuzzyloc_core::{AcoConfig, Error as CoreError, Instance, MaximinObjective, Solver};
use serde::{Deserialize, Serialize};

use crate::args::TuneArgs;
use crate::bench::to_csv;
use crate::{enumeration_budget, load_named, par_map, write_file, CliError, CliResult};

/// One cell of the factorial grid, averaged over seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneRow {
    pub evaporation_rate: f64,
    pub max_pheromone: f64,
    pub population_coefficient: usize,
    pub alpha_exp: f64,
    pub beta_exp: f64,
    pub seeds: u64,
    pub mean_objective: Option<f64>,
    pub feasible_runs: usize,
    pub failed_runs: usize,
    pub mean_runtime_ms: Option<f64>,
    pub bounds_ids: String,
}

/// Every combination of the level lists, in nested order.
pub fn grid(args: &TuneArgs) -> Vec<AcoConfig> {
    let mut cells = Vec::new();
    for &evaporation_rate in &args.evaporation {
        for &max_pheromone in &args.max_pheromone {
            for &population_coefficient in &args.coefficient {
                for &alpha_exp in &args.alpha {
                    for &beta_exp in &args.beta {
                        cells.push(AcoConfig {
                            evaporation_rate,
                            max_pheromone,
                            population_coefficient,
                            alpha_exp,
                            beta_exp,
                            seed: 0,
                        });
                    }
                }
            }
        }
    }
    cells
}

/// Bounds for one seed, shared by every cell: exact when asked and
/// affordable, otherwise estimated with the default colony.
fn seed_context(instance: &Instance, seed: u64, exact: bool, budget: u128) -> CliResult<MaximinContext> {
    if exact {
        match exact_bounds(instance, budget) {
            Ok(ctx) => return Ok(ctx),
            Err(CoreError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(CliError::Runtime(e.into())),
        }
    }
    let solver = Solver::Aco(AcoConfig::default());
    let (ctx, _) = estimate_bounds(instance, &solver, bound_seeds(seed)).map_err(|e| CliError::Runtime(e.into()))?;
    Ok(ctx)
}

pub fn run_tune(instance: &Instance, args: &TuneArgs) -> CliResult<Vec<TuneRow>> {
    if args.replications == 0 {
        return Err(CliError::Usage("--replications must be at least 1".into()));
    }
    let cells = grid(args);
    if cells.is_empty() {
        return Err(CliError::Usage("every parameter needs at least one level".into()));
    }
    for c in &cells {
        c.validate().map_err(crate::usage_error)?;
    }
    let budget = enumeration_budget()?;
    let seeds: Vec<u64> = (0..args.replications).map(|r| args.seed + r).collect();
    let contexts = seeds
        .iter()
        .map(|&s| seed_context(instance, s, args.exact_bounds, budget))
        .collect::<CliResult<Vec<_>>>()?;

    let work: Vec<(usize, usize)> = (0..cells.len()).flat_map(|c| (0..seeds.len()).map(move |s| (c, s))).collect();
    let runs = par_map(&work, args.jobs, |&(c, s)| {
        let objective = MaximinObjective { instance, context: &contexts[s] };
        Solver::Aco(cells[c].clone()).run(instance, &objective, seeds[s])
    });

    let ids: Vec<String> = contexts.iter().map(MaximinContext::id).collect();
    let rows = cells
        .iter()
        .enumerate()
        .map(|(c, cfg)| {
            let mine: Vec<_> = work.iter().zip(&runs).filter(|((cell, _), _)| *cell == c).map(|(_, r)| r).collect();
            let ok: Vec<_> = mine.iter().filter_map(|r| r.as_ref().ok()).collect();
            let mean = |v: Vec<f64>| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
            TuneRow {
                evaporation_rate: cfg.evaporation_rate,
                max_pheromone: cfg.max_pheromone,
                population_coefficient: cfg.population_coefficient,
                alpha_exp: cfg.alpha_exp,
                beta_exp: cfg.beta_exp,
                seeds: seeds.len() as u64,
                mean_objective: mean(ok.iter().map(|r| r.best_fitness.value).collect()),
                feasible_runs: ok.iter().filter(|r| r.best_fitness.feasible).count(),
                failed_runs: mine.len() - ok.len(),
                mean_runtime_ms: mean(ok.iter().map(|r| (r.elapsed_ms * 1e3).round() / 1e3).collect()),
                bounds_ids: ids.join(";"),
            }
        })
        .collect();
    Ok(rows)
}

pub fn cmd_tune(args: &TuneArgs) -> CliResult<Vec<TuneRow>> {
    let named = load_named(args.instance.as_deref(), args.table1, &args.model)?;
    let rows = run_tune(&named.instance, args)?;
    let text = to_csv(&rows)?;
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            println!("{} cells written to {}", rows.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(rows)
}
