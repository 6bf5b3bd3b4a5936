use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use fuzzyloc_core::maximin::MaximinContext;
use serde::{Deserialize, Serialize};

use crate::args::{AlgoArg, BenchArgs};
use crate::solve::{bounds_mode, protocol, solver_for};
use crate::{enumeration_budget, facilities_field, load_named, par_map, write_file, CliError, CliResult, NamedInstance};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const RUNTIME_PLOT_FILE: &str = "runtime_vs_n.csv";
pub const OBJECTIVE_PLOT_FILE: &str = "objective_vs_n.csv";
pub const CONTEXTS_FILE: &str = "contexts.json";

/// One line of `results.csv`. Failed runs leave the numeric fields empty and
/// put the error in `termination`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub objective: Option<f64>,
    pub runtime_ms: Option<f64>,
    pub facilities: String,
    pub termination: String,
    pub bounds_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub ga_mean_objective: Option<f64>,
    pub aco_mean_objective: Option<f64>,
    /// `(GA - ACO) / GA * 100`
    pub gap_pct: Option<f64>,
    pub ga_mean_runtime_ms: Option<f64>,
    pub aco_mean_runtime_ms: Option<f64>,
    pub ga_feasible_runs: usize,
    pub aco_feasible_runs: usize,
    pub runs_per_algorithm: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub n: usize,
    pub algorithm: String,
    pub value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SummaryRow>,
    pub contexts: BTreeMap<String, MaximinContext>,
}

struct Job {
    instance: usize,
    algo: AlgoArg,
    seed: u64,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Paired GA/ACO replications over every instance.
pub fn run_bench(
    instances: &[NamedInstance],
    replications: u64,
    first_seed: u64,
    exact: bool,
    jobs: usize,
) -> CliResult<BenchOutcome> {
    let budget = enumeration_budget()?;
    let mut work = Vec::new();
    for k in 0..instances.len() {
        for algo in [AlgoArg::Ga, AlgoArg::Aco] {
            for r in 0..replications {
                work.push(Job { instance: k, algo, seed: first_seed + r });
            }
        }
    }
    let results = par_map(&work, jobs, |job| {
        let inst = &instances[job.instance];
        let solver = solver_for(job.algo, budget);
        let mode = bounds_mode(&solver, exact, budget);
        protocol(&inst.instance, &solver, job.seed, mode)
    });

    let mut rows = Vec::with_capacity(results.len());
    let mut contexts = BTreeMap::new();
    for (job, result) in work.iter().zip(results) {
        let named = &instances[job.instance];
        let tag = solver_for(job.algo, 0).algorithm().tag().to_string();
        let base = BenchRow {
            algorithm: tag,
            instance: named.id.clone(),
            n: named.instance.n(),
            m: named.instance.m_servers(),
            seed: job.seed,
            objective: None,
            runtime_ms: None,
            facilities: String::new(),
            termination: String::new(),
            bounds_id: String::new(),
        };
        rows.push(match result {
            Ok(out) => {
                let id = out.context.id();
                contexts.insert(id.clone(), out.context.clone());
                BenchRow {
                    objective: Some(out.report.best_fitness.value),
                    runtime_ms: Some(round_ms(out.total_ms)),
                    facilities: facilities_field(out.report.best.open()),
                    termination: out.report.termination.tag().to_string(),
                    bounds_id: id,
                    ..base
                }
            }
            Err(e) => BenchRow { termination: format!("failed: {e}"), ..base },
        });
    }
    let summary = summarize(instances, &rows, replications);
    Ok(BenchOutcome { rows, summary, contexts })
}

fn round_ms(ms: f64) -> f64 {
    (ms * 1e3).round() / 1e3
}

fn summarize(instances: &[NamedInstance], rows: &[BenchRow], replications: u64) -> Vec<SummaryRow> {
    instances
        .iter()
        .map(|named| {
            let of = |algo: &'static str| rows.iter().filter(move |r| r.instance == named.id && r.algorithm == algo);
            let ga_obj = mean(of("ga").filter_map(|r| r.objective));
            let aco_obj = mean(of("aco").filter_map(|r| r.objective));
            let gap = match (ga_obj, aco_obj) {
                (Some(g), Some(a)) if g != 0.0 => Some((g - a) / g * 100.0),
                _ => None,
            };
            let feasible = |algo| of(algo).filter(|r| r.objective.is_some_and(|v| v >= 0.0)).count();
            SummaryRow {
                instance: named.id.clone(),
                n: named.instance.n(),
                m: named.instance.m_servers(),
                ga_mean_objective: ga_obj,
                aco_mean_objective: aco_obj,
                gap_pct: gap,
                ga_mean_runtime_ms: mean(of("ga").filter_map(|r| r.runtime_ms)),
                aco_mean_runtime_ms: mean(of("aco").filter_map(|r| r.runtime_ms)),
                ga_feasible_runs: feasible("ga"),
                aco_feasible_runs: feasible("aco"),
                runs_per_algorithm: replications,
            }
        })
        .collect()
}

/// Mean of `field` per (n, algorithm), sorted by n.
pub fn plot_points(rows: &[BenchRow], field: impl Fn(&BenchRow) -> Option<f64>) -> Vec<PlotPoint> {
    let mut groups: BTreeMap<(usize, String), Vec<f64>> = BTreeMap::new();
    for r in rows {
        let values = groups.entry((r.n, r.algorithm.clone())).or_default();
        if let Some(v) = field(r) {
            values.push(v);
        }
    }
    groups
        .into_iter()
        .map(|((n, algorithm), v)| PlotPoint { n, algorithm, value: mean(v.into_iter()) })
        .collect()
}

pub fn to_csv<T: Serialize>(records: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).context("cannot write CSV record")?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(anyhow::anyhow!("cannot flush CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn plot_csv(points: &[PlotPoint], column: &str) -> CliResult<String> {
    let mut out = format!("n,algorithm,{column}\n");
    let body = to_csv(points)?;
    // drop the generic header written by serde
    out.push_str(body.split_once('\n').map(|(_, rest)| rest).unwrap_or(""));
    Ok(out)
}

pub fn write_outputs(dir: &Path, outcome: &BenchOutcome) -> CliResult<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    write_file(&dir.join(RESULTS_FILE), &to_csv(&outcome.rows)?)?;
    write_file(&dir.join(SUMMARY_FILE), &to_csv(&outcome.summary)?)?;
    write_file(&dir.join(RUNTIME_PLOT_FILE), &plot_csv(&plot_points(&outcome.rows, |r| r.runtime_ms), "mean_runtime_ms")?)?;
    write_file(
        &dir.join(OBJECTIVE_PLOT_FILE),
        &plot_csv(&plot_points(&outcome.rows, |r| r.objective), "mean_objective")?,
    )?;
    let ctx = serde_json::to_string_pretty(&outcome.contexts).context("cannot serialize contexts")?;
    write_file(&dir.join(CONTEXTS_FILE), &(ctx + "\n"))
}

pub fn cmd_bench(args: &BenchArgs) -> CliResult<BenchOutcome> {
    if args.replications == 0 {
        return Err(CliError::Usage("--replications must be at least 1".into()));
    }
    let mut instances = Vec::new();
    if args.table1 {
        instances.push(load_named(None, true, &args.model)?);
    }
    for path in &args.instance {
        instances.push(load_named(Some(path), false, &args.model)?);
    }
    let outcome = run_bench(&instances, args.replications, args.seed, args.exact_bounds, args.jobs)?;
    write_outputs(&args.out, &outcome)?;

    let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
    println!("{:<16} {:>4} {:>3} {:>10} {:>10} {:>8} {:>12} {:>12}", "instance", "n", "m", "ga_obj", "aco_obj", "gap_%", "ga_ms", "aco_ms");
    for s in &outcome.summary {
        println!(
            "{:<16} {:>4} {:>3} {:>10} {:>10} {:>8} {:>12} {:>12}",
            s.instance,
            s.n,
            s.m,
            show(s.ga_mean_objective),
            show(s.aco_mean_objective),
            show(s.gap_pct),
            show(s.ga_mean_runtime_ms),
            show(s.aco_mean_runtime_ms)
        );
    }
    println!("wrote {}", args.out.display());
    Ok(outcome)
}
