//! Ant colony optimizer over facility index sets.
//!
//! Every node carries a pheromone level. An ant opens `M` nodes one at a time,
//! drawing each from the still-empty nodes with probability proportional to
//! `τ^α · η^β`, where `η` is a static desirability favoring fast servers close
//! to everyone. After each iteration pheromone evaporates and every ant
//! deposits on the nodes it opened in proportion to its fitness.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::iteration_limits;
use crate::model::{Instance, Solution};
use crate::objective::{Fitness, Objective, Sense};
use crate::report::{Algorithm, SolverReport, Termination};

/// Floor on every pheromone level so selection weights stay positive.
pub const TAU_MIN: f64 = 1e-6;
pub const TAU_INIT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcoConfig {
    /// Fraction of pheromone kept per iteration.
    pub evaporation_rate: f64,
    /// Deposit scale and pheromone cap.
    pub max_pheromone: f64,
    pub population_coefficient: usize,
    pub alpha_exp: f64,
    pub beta_exp: f64,
    pub seed: u64,
}

impl Default for AcoConfig {
    fn default() -> Self {
        AcoConfig {
            evaporation_rate: 0.97,
            max_pheromone: 200.0,
            population_coefficient: 2,
            alpha_exp: 0.75,
            beta_exp: 0.75,
            seed: 0,
        }
    }
}

impl AcoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.evaporation_rate > 0.0 && self.evaporation_rate < 1.0) {
            return Err(Error::Domain(format!("evaporation rate must lie in (0, 1), got {}", self.evaporation_rate)));
        }
        if !(self.max_pheromone > TAU_MIN) {
            return Err(Error::Domain(format!("max pheromone must exceed {TAU_MIN}, got {}", self.max_pheromone)));
        }
        if self.population_coefficient == 0 {
            return Err(Error::Domain("population coefficient must be positive".into()));
        }
        if !(self.alpha_exp > 0.0 && self.beta_exp > 0.0) {
            return Err(Error::Domain("selection exponents must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState {
    pub tau: Vec<f64>,
}

impl PheromoneState {
    pub fn new(n: usize) -> Self {
        PheromoneState { tau: vec![TAU_INIT; n] }
    }
}

/// Unnormalized desirability `μ_j.mid / Σ_i d_ij`.
pub fn heuristic_weights(instance: &Instance) -> Vec<f64> {
    (0..instance.n())
        .map(|j| instance.service()[j].mid() / instance.distance_row(j).iter().sum::<f64>())
        .collect()
}

/// Desirability of each node, normalized to sum to 1.
pub fn heuristic_index(instance: &Instance) -> Vec<f64> {
    let w = heuristic_weights(instance);
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Selection probabilities over the nodes not yet in `chosen`.
pub fn selection_probabilities(
    state: &PheromoneState,
    eta: &[f64],
    chosen: &[usize],
    config: &AcoConfig,
) -> Vec<(usize, f64)> {
    let mut weights: Vec<(usize, f64)> = (0..state.tau.len())
        .filter(|j| !chosen.contains(j))
        .map(|j| (j, state.tau[j].powf(config.alpha_exp) * eta[j].powf(config.beta_exp)))
        .collect();
    let total: f64 = weights.iter().map(|&(_, w)| w).sum();
    if !(total > 0.0) || !total.is_finite() {
        let u = 1.0 / weights.len() as f64;
        weights.iter_mut().for_each(|(_, w)| *w = u);
    } else {
        weights.iter_mut().for_each(|(_, w)| *w /= total);
    }
    weights
}

pub fn select_next(
    state: &PheromoneState,
    eta: &[f64],
    chosen: &[usize],
    config: &AcoConfig,
    rng: &mut impl Rng,
) -> usize {
    let probs = selection_probabilities(state, eta, chosen, config);
    let mut u: f64 = rng.random();
    for &(j, p) in &probs {
        if u < p {
            return j;
        }
        u -= p;
    }
    // rounding left a sliver past the last bucket
    probs.iter().rev().find(|&&(_, p)| p > 0.0).map(|&(j, _)| j).unwrap_or(probs[probs.len() - 1].0)
}

pub fn construct_solution(
    state: &PheromoneState,
    eta: &[f64],
    m: usize,
    config: &AcoConfig,
    rng: &mut impl Rng,
) -> Solution {
    let mut chosen = Vec::with_capacity(m);
    while chosen.len() < m {
        let j = select_next(state, eta, &chosen, config, rng);
        chosen.push(j);
    }
    chosen.sort_unstable();
    Solution::from_sorted(chosen)
}

/// Evaporation followed by fitness-proportional deposits, clamped to
/// `[TAU_MIN, max_pheromone]`.
///
/// Maximizing runs deposit `θ·F`, minimizing runs `θ/F`. Infeasible ants and
/// ants with nonpositive fitness deposit nothing.
pub fn pheromone_update(state: &mut PheromoneState, colony: &[(Solution, Fitness)], sense: Sense, config: &AcoConfig) {
    let theta = config.max_pheromone;
    for t in state.tau.iter_mut() {
        *t *= config.evaporation_rate;
    }
    for (solution, fitness) in colony {
        if !fitness.feasible || !(fitness.value > 0.0) {
            continue;
        }
        let deposit = match sense {
            Sense::Maximize => theta * fitness.value,
            Sense::Minimize => theta / fitness.value,
        };
        for &j in solution.open() {
            state.tau[j] += deposit;
        }
    }
    for t in state.tau.iter_mut() {
        *t = t.clamp(TAU_MIN, theta);
    }
}

pub fn ant_count(n: usize, m: usize, coefficient: usize) -> usize {
    coefficient * n.div_ceil(m)
}

pub fn run_aco(instance: &Instance, objective: &dyn Objective, config: &AcoConfig) -> Result<SolverReport> {
    config.validate()?;
    let start = Instant::now();
    let sense = objective.sense();
    let (n, m) = (instance.n(), instance.m_servers());
    let (stall_limit, cap) = iteration_limits(n, m);
    let ants = ant_count(n, m, config.population_coefficient);
    let eta = heuristic_index(instance);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = PheromoneState::new(n);

    let mut best: Option<(Solution, Fitness)> = None;
    let mut trace = Vec::new();
    let mut stall = 0u64;
    let mut iterations = 0u64;
    let mut evaluations = 0u64;

    let termination = loop {
        iterations += 1;
        let colony: Vec<(Solution, Fitness)> = (0..ants)
            .map(|_| {
                let s = construct_solution(&state, &eta, m, config, &mut rng);
                let f = objective.evaluate(s.open());
                (s, f)
            })
            .collect();
        evaluations += ants as u64;

        let mut improved = false;
        for (s, f) in &colony {
            if best.as_ref().is_none_or(|(_, b)| f.better_than(b, sense)) {
                best = Some((s.clone(), *f));
                improved = true;
            }
        }
        pheromone_update(&mut state, &colony, sense, config);

        if improved {
            stall = 0;
        } else {
            stall += 1;
        }
        trace.push(best.as_ref().map(|(_, f)| f.value).unwrap_or(f64::NAN));

        if stall >= stall_limit {
            break Termination::Stagnation;
        }
        if iterations >= cap {
            break Termination::IterationCap;
        }
    };

    let (best, best_fitness) = best.expect("at least one iteration ran");
    Ok(SolverReport {
        algorithm: Algorithm::Aco,
        seed: config.seed,
        sense,
        best,
        best_fitness,
        trace,
        iterations,
        evaluations,
        termination,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::toy;

    fn cfg1() -> AcoConfig {
        AcoConfig { alpha_exp: 1.0, beta_exp: 1.0, ..AcoConfig::default() }
    }

    #[test]
    fn hand_evaluated_selection() {
        let state = PheromoneState { tau: vec![1.0, 1.0] };
        let p = selection_probabilities(&state, &[2.0, 1.0], &[], &cfg1());
        assert!((p[0].1 - 2.0 / 3.0).abs() < 1e-12);
        assert!((p[1].1 - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_when_everything_is_equal() {
        let state = PheromoneState { tau: vec![3.0; 5] };
        let p = selection_probabilities(&state, &[0.2; 5], &[1, 3], &AcoConfig::default());
        assert_eq!(p.len(), 3);
        for (_, x) in p {
            assert!((x - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn last_node_is_certain() {
        let state = PheromoneState { tau: vec![1.0; 3] };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            assert_eq!(select_next(&state, &[0.1, 0.5, 0.4], &[0, 1], &cfg1(), &mut rng), 2);
        }
    }

    #[test]
    fn zero_weights_fall_back_to_uniform() {
        let state = PheromoneState { tau: vec![0.0; 4] };
        let p = selection_probabilities(&state, &[0.25; 4], &[], &cfg1());
        assert!(p.iter().all(|&(_, x)| (x - 0.25).abs() < 1e-12));
    }

    #[test]
    fn degenerate_distribution_is_deterministic() {
        let state = PheromoneState { tau: vec![1.0, 0.0, 0.0, 1.0, 0.0] };
        let eta = [0.2; 5];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let s = construct_solution(&state, &eta, 2, &cfg1(), &mut rng);
            assert_eq!(s.open(), &[0, 3]);
        }
    }

    #[test]
    fn n_minus_one_omits_one_node() {
        let state = PheromoneState::new(6);
        let eta = [1.0 / 6.0; 6];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let s = construct_solution(&state, &eta, 5, &AcoConfig::default(), &mut rng);
            assert_eq!(s.len(), 5);
        }
    }

    #[test]
    fn update_examples() {
        let cfg = AcoConfig::default();
        let mut st = PheromoneState { tau: vec![100.0, 100.0] };
        pheromone_update(&mut st, &[], Sense::Maximize, &cfg);
        assert!((st.tau[0] - 97.0).abs() < 1e-9);

        let mut st = PheromoneState { tau: vec![TAU_MIN, TAU_MIN] };
        let ant = (Solution::from_sorted(vec![0]), Fitness::feasible(0.9));
        pheromone_update(&mut st, &[ant], Sense::Maximize, &cfg);
        assert!((st.tau[0] - (0.97 * TAU_MIN + 180.0)).abs() < 1e-9);
        // untouched node only evaporates, floored at TAU_MIN
        assert_eq!(st.tau[1], TAU_MIN);

        let mut st = PheromoneState { tau: vec![1.0, 1.0] };
        let ants = [
            (Solution::from_sorted(vec![0]), Fitness::feasible(0.0)),
            (Solution::from_sorted(vec![1]), Fitness::feasible(4.0)),
        ];
        pheromone_update(&mut st, &ants, Sense::Minimize, &cfg);
        assert!((st.tau[0] - 0.97).abs() < 1e-12);
        assert!((st.tau[1] - (0.97 + 50.0)).abs() < 1e-12);

        let mut st = PheromoneState { tau: vec![150.0] };
        let ants = [(Solution::from_sorted(vec![0]), Fitness::feasible(1.0))];
        pheromone_update(&mut st, &ants, Sense::Maximize, &cfg);
        assert_eq!(st.tau[0], 200.0);

        let mut st = PheromoneState { tau: vec![1.0] };
        let ants = [(Solution::from_sorted(vec![0]), Fitness::penalty(0.3))];
        pheromone_update(&mut st, &ants, Sense::Maximize, &cfg);
        assert!((st.tau[0] - 0.97).abs() < 1e-12);
    }

    #[test]
    fn geometric_decay_without_deposits() {
        let cfg = AcoConfig::default();
        let mut st = PheromoneState::new(3);
        for t in 1..=600 {
            pheromone_update(&mut st, &[], Sense::Maximize, &cfg);
            let want = (cfg.evaporation_rate.powi(t) * TAU_INIT).max(TAU_MIN);
            // clamping happens each step, so once floored it stays there
            assert!((st.tau[0] - want).abs() <= 1e-12 * want.max(1e-300) + 1e-18, "t={t}");
        }
    }

    #[test]
    fn ant_count_examples() {
        assert_eq!(ant_count(20, 5, 2), 8);
        assert_eq!(ant_count(30, 5, 2), 12);
        assert_eq!(ant_count(6, 2, 1), 3);
    }

    #[test]
    fn heuristic_index_properties() {
        let data = crate::model::InstanceData {
            n: 2,
            m_servers: 1,
            mql: 25.0,
            gamma: 0.5,
            logit_sensitivity: 0.5,
            idle_min: crate::fuzzy::TriFuzzy::crisp(0.1),
            demand: vec![crate::fuzzy::TriFuzzy::crisp(1.0); 2],
            service: vec![crate::fuzzy::TriFuzzy::crisp(100.0); 2],
            distance: vec![vec![0.0, 3.0], vec![3.0, 0.0]],
            benefit_weight: None,
        };
        let inst = Instance::try_from(data).unwrap();
        assert_eq!(heuristic_index(&inst), vec![0.5, 0.5]);

        let base = toy(6, 2, 1.0, 100.0);
        let doubled = base
            .modify(|d| d.service[2] = crate::fuzzy::TriFuzzy::new(180.0, 200.0, 220.0).unwrap())
            .unwrap();
        let (a, b) = (heuristic_weights(&base), heuristic_weights(&doubled));
        assert!((b[2] - 2.0 * a[2]).abs() < 1e-12);
        assert_eq!(a[0], b[0]);
        let s: f64 = heuristic_index(&base).iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn run_is_deterministic() {
        let inst = toy(10, 3, 1.0, 100.0);
        let obj = (Sense::Maximize, |o: &[usize]| Fitness::feasible(o.iter().sum::<usize>() as f64 / 30.0));
        let cfg = AcoConfig { seed: 5, ..AcoConfig::default() };
        let mut a = run_aco(&inst, &obj, &cfg).unwrap();
        let mut b = run_aco(&inst, &obj, &cfg).unwrap();
        a.elapsed_ms = 0.0;
        b.elapsed_ms = 0.0;
        assert_eq!(a, b);
        assert!(a.trace.windows(2).all(|w| w[0] <= w[1]));
    }
}
