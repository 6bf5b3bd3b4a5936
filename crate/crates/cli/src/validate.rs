use fuzzyloc_core::fuzzy::Slice;
use fuzzyloc_core::model::{crisp_objective_slice, mm1_metrics, Mm1};
use fuzzyloc_core::oracle::{simulate_mm1_unchecked, simulate_network, MIN_EVENT_BUDGET};
use fuzzyloc_core::{generate_instance, GeneratorParams};
use serde::{Deserialize, Serialize};

use crate::args::ValidateArgs;
use crate::bench::to_csv;
use crate::{write_file, CliError, CliResult};

/// One analytic-versus-simulated comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub kind: String,
    pub rho: Option<f64>,
    pub seed: u64,
    pub metric: String,
    pub analytic: f64,
    pub simulated: f64,
    pub rel_error: f64,
    /// Relative standard error of the estimate, when known.
    pub rel_se: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ValidateReport {
    pub checks: Vec<Check>,
    /// False when the event budget is too small for the tolerance to mean anything.
    pub enforced: bool,
}

impl ValidateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(kind: &str, rho: Option<f64>, seed: u64, metric: &str, analytic: f64, simulated: f64, se: Option<f64>, args: &ValidateArgs) -> Check {
    let rel_error = (simulated - analytic) / analytic;
    let rel_se = se.map(|s| s / analytic.abs());
    let tolerance = rel_se.map_or(args.tolerance, |r| args.tolerance.max(args.z * r));
    Check {
        kind: kind.into(),
        rho,
        seed,
        metric: metric.into(),
        analytic,
        simulated,
        rel_error,
        rel_se,
        tolerance,
        pass: rel_error.abs() < tolerance,
    }
}

/// Small located network used for the end-to-end comparison.
pub fn network_case() -> (fuzzyloc_core::Instance, Vec<usize>) {
    let inst = generate_instance(&GeneratorParams::light_load(8, 3, 2)).expect("valid parameters");
    (inst, vec![1, 4, 6])
}

pub fn run_validate(args: &ValidateArgs) -> CliResult<ValidateReport> {
    if args.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    if !(args.tolerance > 0.0) || !(args.z >= 0.0) {
        return Err(CliError::Usage("--tolerance must be positive and --z nonnegative".into()));
    }
    if let Some(r) = args.rho.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(CliError::Usage(format!("rho must lie in (0, 1), got {r}")));
    }
    let enforced = args.events >= MIN_EVENT_BUDGET;
    if !enforced {
        eprintln!(
            "warning: {} events is below {MIN_EVENT_BUDGET}; the tolerance is not enforceable and failures are reported only",
            args.events
        );
    }

    let mut checks = Vec::new();
    for &rho in &args.rho {
        let Mm1::Stable { p0, lq } = mm1_metrics(rho, 1.0).map_err(crate::usage_error)? else {
            unreachable!("rho < 1");
        };
        for seed in 1..=args.seeds {
            let est = simulate_mm1_unchecked(rho, 1.0, args.events.max(1), seed).map_err(|e| CliError::Runtime(e.into()))?;
            checks.push(check("mm1", Some(rho), seed, "p0", p0, est.p0, Some(est.p0_se), args));
            checks.push(check("mm1", Some(rho), seed, "lq", lq, est.lq, Some(est.lq_se), args));
        }
    }

    let (inst, open) = network_case();
    let analytic = crisp_objective_slice(&inst, &open, Slice::Mid)
        .map_err(|e| CliError::Runtime(e.into()))?
        .expect("network case is stable");
    let sim = simulate_network(&inst, &open, Slice::Mid, args.network_events.max(1), 1)
        .map_err(|e| CliError::Runtime(e.into()))?;
    checks.push(check("network", None, 1, "benefit_rate", analytic, sim.benefit_rate, None, args));
    Ok(ValidateReport { checks, enforced })
}

pub fn cmd_validate(args: &ValidateArgs) -> CliResult<ValidateReport> {
    let report = run_validate(args)?;
    for c in &report.checks {
        let rho = c.rho.map_or("-".to_string(), |r| format!("{r:.2}"));
        let se = c.rel_se.map_or("-".to_string(), |s| format!("{:.3}%", s * 100.0));
        println!(
            "{:<8} rho={rho:<5} seed={:<2} {:<13} analytic={:<12.6} simulated={:<12.6} err={:+.3}% se={se} tol={:.3}% {}",
            c.kind,
            c.seed,
            c.metric,
            c.analytic,
            c.simulated,
            c.rel_error * 100.0,
            c.tolerance * 100.0,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.out {
        write_file(path, &to_csv(&report.checks)?)?;
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        println!("all {} checks passed", report.checks.len());
        Ok(report)
    } else if !report.enforced {
        println!("{failed} of {} checks outside tolerance (not enforced)", report.checks.len());
        Ok(report)
    } else {
        Err(CliError::Validation(format!("{failed} of {} checks outside tolerance", report.checks.len())))
    }
}
