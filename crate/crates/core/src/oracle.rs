//! Ground truth for small instances: exhaustive enumeration, exact maximin
//! bounds, and discrete-event simulation of the queues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Geometric};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::fuzzy::Slice;
use crate::maximin::{assess, MaximinContext, Provenance};
use crate::model::{join_probability, logit_allocation, aggregate_demand, Instance, Solution};
use crate::objective::{Fitness, Objective};

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationResult {
    pub best: Solution,
    pub best_fitness: Fitness,
    pub evaluated_count: u64,
    /// Every subset with its fitness, in lexicographic order, when requested.
    pub table: Option<Vec<(Solution, Fitness)>>,
}

fn check_budget(instance: &Instance, budget: u128) -> Result<u128> {
    let subsets = binomial(instance.n(), instance.m_servers());
    if subsets > budget {
        return Err(Error::BudgetExceeded { subsets, budget });
    }
    Ok(subsets)
}

/// Evaluates every `M`-subset and returns the best, breaking ties toward
/// the lexicographically smallest index set.
pub fn enumerate_optimum(instance: &Instance, objective: &dyn Objective, budget: u128) -> Result<EnumerationResult> {
    enumerate(instance, objective, budget, false)
}

pub fn enumerate_with_table(
    instance: &Instance,
    objective: &dyn Objective,
    budget: u128,
) -> Result<EnumerationResult> {
    enumerate(instance, objective, budget, true)
}

fn enumerate(instance: &Instance, objective: &dyn Objective, budget: u128, keep: bool) -> Result<EnumerationResult> {
    check_budget(instance, budget)?;
    let sense = objective.sense();
    let mut best: Option<(Vec<usize>, Fitness)> = None;
    let mut table = keep.then(Vec::new);
    let mut count = 0u64;
    for subset in Combinations::new(instance.n(), instance.m_servers()) {
        let f = objective.evaluate(&subset);
        count += 1;
        // lexicographic order means the first of any tie is kept
        if best.as_ref().is_none_or(|(_, b)| f.better_than(b, sense)) {
            best = Some((subset.clone(), f));
        }
        if let Some(t) = table.as_mut() {
            t.push((Solution::from_sorted(subset), f));
        }
    }
    let (best, best_fitness) = best.expect("at least one subset exists since 1 <= M < n");
    Ok(EnumerationResult { best: Solution::from_sorted(best), best_fitness, evaluated_count: count, table })
}

/// Exact minimum and maximum of each spread goal over every feasible subset.
pub fn exact_bounds(instance: &Instance, budget: u128) -> Result<MaximinContext> {
    check_budget(instance, budget)?;
    let mut samples = Vec::new();
    for subset in Combinations::new(instance.n(), instance.m_servers()) {
        if let Some(c) = assess(instance, &subset)?.spread {
            samples.push(c);
        }
    }
    if samples.is_empty() {
        return Err(Error::NoFeasibleSubset);
    }
    Ok(MaximinContext::from_samples(&samples, Provenance::OracleExact))
}

/// Time-averaged estimates from a simulated M/M/1 queue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mm1Estimate {
    pub p0: f64,
    pub lq: f64,
    /// Batch-means standard errors.
    pub p0_se: f64,
    pub lq_se: f64,
    pub events: u64,
    pub sim_time: f64,
}

pub const MIN_EVENT_BUDGET: u64 = 10_000;
const BATCHES: u64 = 20;

/// Simulates a single-server queue with Poisson arrivals and exponential
/// service for `event_budget` arrival/departure events.
///
/// `lq` is the time-averaged number waiting, excluding the customer in
/// service. The run starts from the stationary queue-length distribution.
pub fn mm1_simulate(lambda: f64, mu: f64, event_budget: u64, seed: u64) -> Result<Mm1Estimate> {
    if event_budget < MIN_EVENT_BUDGET {
        return Err(Error::Domain(format!(
            "event budget {event_budget} is below the minimum {MIN_EVENT_BUDGET}"
        )));
    }
    simulate_mm1_unchecked(lambda, mu, event_budget, seed)
}

/// As [`mm1_simulate`] without the minimum-budget check.
pub fn simulate_mm1_unchecked(lambda: f64, mu: f64, event_budget: u64, seed: u64) -> Result<Mm1Estimate> {
    if !(mu > 0.0) || !(lambda >= 0.0) || lambda >= mu {
        return Err(Error::Domain(format!("unstable or invalid queue: lambda={lambda}, mu={mu}")));
    }
    if event_budget == 0 {
        return Err(Error::Domain("event budget must be positive".into()));
    }
    if lambda == 0.0 {
        return Ok(Mm1Estimate { p0: 1.0, lq: 0.0, p0_se: 0.0, lq_se: 0.0, events: 0, sim_time: 0.0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = lambda / mu;
    // P(K = k) = (1 - ρ) ρ^k
    let mut k: u64 = Geometric::new(1.0 - rho).expect("0 < 1 - rho <= 1").sample(&mut rng);
    let hold_idle = Exp::new(lambda).expect("positive rate");
    let hold_busy = Exp::new(lambda + mu).expect("positive rate");
    let p_arrival_busy = lambda / (lambda + mu);

    let per_batch = (event_budget / BATCHES).max(1);
    let mut batch_idle = Vec::with_capacity(BATCHES as usize);
    let mut batch_lq = Vec::with_capacity(BATCHES as usize);
    let (mut t_total, mut idle_total, mut area_total) = (0.0, 0.0, 0.0);
    let (mut t_b, mut idle_b, mut area_b) = (0.0, 0.0, 0.0);

    for e in 1..=event_budget {
        if k == 0 {
            let h = hold_idle.sample(&mut rng);
            t_b += h;
            idle_b += h;
            k = 1;
        } else {
            let h = hold_busy.sample(&mut rng);
            t_b += h;
            area_b += (k - 1) as f64 * h;
            if rng.random::<f64>() < p_arrival_busy {
                k += 1;
            } else {
                k -= 1;
            }
        }
        if e % per_batch == 0 || e == event_budget {
            batch_idle.push(idle_b / t_b);
            batch_lq.push(area_b / t_b);
            t_total += t_b;
            idle_total += idle_b;
            area_total += area_b;
            (t_b, idle_b, area_b) = (0.0, 0.0, 0.0);
        }
    }

    let se = |xs: &[f64]| {
        let b = xs.len() as f64;
        if xs.len() < 2 {
            return f64::NAN;
        }
        let mean = xs.iter().sum::<f64>() / b;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (b - 1.0);
        (var / b).sqrt()
    };
    Ok(Mm1Estimate {
        p0: idle_total / t_total,
        lq: area_total / t_total,
        p0_se: se(&batch_idle),
        lq_se: se(&batch_lq),
        events: event_budget,
        sim_time: t_total,
    })
}

/// Simulated benefit rate of a located network at one slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkEstimate {
    pub benefit_rate: f64,
    /// `(facility, idle fraction, time-averaged queue length)`.
    pub facilities: Vec<(usize, f64, f64)>,
    pub sim_time: f64,
}

/// Simulates customers arriving at every node, choosing an open facility by
/// the logit probabilities and queuing there without balking.
///
/// Each arrival earns `w_ij` when the server is idle and `w_ij · join_j`
/// otherwise, where `join_j` is evaluated at the simulated queue length of
/// facility `j`. Every open facility must be stable at `slice`.
pub fn simulate_network(
    instance: &Instance,
    open: &[usize],
    slice: Slice,
    event_budget: u64,
    seed: u64,
) -> Result<NetworkEstimate> {
    let alloc = logit_allocation(instance, open)?;
    let agg = aggregate_demand(instance, &alloc);
    for (&j, lam) in open.iter().zip(&agg) {
        if lam.at(slice) >= instance.service()[j].at(slice) {
            return Err(Error::Domain(format!("facility {} is unstable at this slice", j + 1)));
        }
    }
    let n = instance.n();
    let k = open.len();
    let lambdas: Vec<f64> = instance.demand().iter().map(|t| t.at(slice)).collect();
    let mus: Vec<f64> = open.iter().map(|&j| instance.service()[j].at(slice)).collect();
    let total_arrival: f64 = lambdas.iter().sum();
    if !(total_arrival > 0.0) {
        return Ok(NetworkEstimate {
            benefit_rate: 0.0,
            facilities: open.iter().map(|&j| (j, 1.0, 0.0)).collect(),
            sim_time: 0.0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut queue = vec![0u64; k];
    let mut idle_time = vec![0.0; k];
    let mut area = vec![0.0; k];
    let mut idle_gain = vec![0.0; k];
    let mut busy_gain = vec![0.0; k];
    let mut time = 0.0;

    for _ in 0..event_budget {
        let busy_rate: f64 = queue.iter().zip(&mus).filter(|(q, _)| **q > 0).map(|(_, m)| m).sum();
        let rate = total_arrival + busy_rate;
        let h = Exp::new(rate).expect("positive rate").sample(&mut rng);
        time += h;
        for c in 0..k {
            if queue[c] == 0 {
                idle_time[c] += h;
            } else {
                area[c] += (queue[c] - 1) as f64 * h;
            }
        }
        let mut u = rng.random::<f64>() * rate;
        if u < total_arrival {
            let mut i = 0;
            while i + 1 < n && u >= lambdas[i] {
                u -= lambdas[i];
                i += 1;
            }
            let row = alloc.row(i);
            let mut v: f64 = rng.random();
            let mut c = 0;
            while c + 1 < k && v >= row[c] {
                v -= row[c];
                c += 1;
            }
            let w = instance.weight(i, open[c]);
            if queue[c] == 0 {
                idle_gain[c] += w;
            } else {
                busy_gain[c] += w;
            }
            queue[c] += 1;
        } else {
            u -= total_arrival;
            for c in 0..k {
                if queue[c] > 0 {
                    if u < mus[c] {
                        queue[c] -= 1;
                        break;
                    }
                    u -= mus[c];
                }
            }
        }
    }

    let mut benefit = 0.0;
    let mut facilities = Vec::with_capacity(k);
    for c in 0..k {
        let lq = area[c] / time;
        benefit += idle_gain[c] + busy_gain[c] * join_probability(lq, instance.mql());
        facilities.push((open[c], idle_time[c] / time, lq));
    }
    Ok(NetworkEstimate { benefit_rate: benefit / time, facilities, sim_time: time })
}
