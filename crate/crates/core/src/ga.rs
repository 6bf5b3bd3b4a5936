//! Genetic algorithm over facility index sets.
//!
//! Chromosomes are sorted sets of `M` node indices. A generation step merges
//! two parents into an oversized draft and greedily drops the genes whose
//! removal hurts fitness least, never dropping a gene both parents share.
//! The candidate replaces the worst member unless it is worse than that
//! member or duplicates an existing one. There is no mutation.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::objective::{Fitness, Objective, Sense};
use crate::report::{Algorithm, SolverReport, Termination};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_floor: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig { population_floor: 10, seed: 0 }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_floor < 2 {
            return Err(Error::Domain(format!(
                "population floor must be at least 2, got {}",
                self.population_floor
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub genes: Vec<usize>,
    pub fitness: Fitness,
}

/// Smallest population that can hold every gene, raised to `floor`.
pub fn population_size(n: usize, m: usize, floor: usize) -> usize {
    n.div_ceil(m).max(floor)
}

/// Stagnation limit and hard iteration cap shared by both metaheuristics.
pub fn iteration_limits(n: usize, m: usize) -> (u64, u64) {
    let limit = ((n as f64) * (m as f64).sqrt()).floor() as u64;
    let limit = limit.max(1);
    (limit, limit * limit)
}

fn evaluated(genes: Vec<usize>, objective: &dyn Objective) -> Chromosome {
    let fitness = objective.evaluate(&genes);
    Chromosome { genes, fitness }
}

/// Initial population in which every node index appears at least once.
///
/// A shuffled list of all nodes is dealt round-robin across the members; the
/// remaining slots get random distinct genes. Members are pairwise distinct,
/// so the size is capped at `C(n, m)`.
pub fn init_population(
    instance: &Instance,
    config: &GaConfig,
    objective: &dyn Objective,
    rng: &mut impl Rng,
) -> Vec<Chromosome> {
    let (n, m) = (instance.n(), instance.m_servers());
    let size = (population_size(n, m, config.population_floor) as u128).min(binomial(n, m)) as usize;

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut dealt = vec![Vec::with_capacity(m); size];
    for (k, &g) in order.iter().enumerate() {
        dealt[k % size].push(g);
    }

    let mut members: Vec<Vec<usize>> = Vec::with_capacity(size);
    for base in dealt {
        let mut placed = None;
        for _ in 0..100 {
            let mut genes = base.clone();
            while genes.len() < m {
                let g = rng.random_range(0..n);
                if !genes.contains(&g) {
                    genes.push(g);
                }
            }
            genes.sort_unstable();
            if !members.contains(&genes) {
                placed = Some(genes);
                break;
            }
        }
        // fall back to the first unused subset; one exists since size <= C(n, m)
        let genes = placed.unwrap_or_else(|| {
            Combinations::new(n, m)
                .find(|c| !members.contains(c))
                .expect("population size is capped at C(n, m)")
        });
        members.push(genes);
    }
    members.into_iter().map(|g| evaluated(g, objective)).collect()
}

/// Merges two parents and shrinks the draft back to `m` genes.
///
/// Returns the candidate and the number of fitness evaluations spent.
pub fn generate_candidate(
    p1: &Chromosome,
    p2: &Chromosome,
    m: usize,
    objective: &dyn Objective,
    rng: &mut impl Rng,
) -> Result<(Chromosome, u64)> {
    if p1.genes == p2.genes {
        return Err(Error::Domain("parents carry identical gene sets".into()));
    }
    let sense = objective.sense();
    let mut draft: Vec<usize> = p1.genes.iter().chain(&p2.genes).copied().collect();
    draft.sort_unstable();
    draft.dedup();
    let shared: Vec<usize> = p1.genes.iter().filter(|g| p2.genes.contains(g)).copied().collect();

    let mut evaluations = 0u64;
    let mut last: Option<Fitness> = None;
    while draft.len() > m {
        let mut best: Option<(usize, Fitness)> = None;
        let mut ties = 0u32;
        for (pos, g) in draft.iter().enumerate() {
            if shared.contains(g) {
                continue;
            }
            let rest: Vec<usize> =
                draft.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &x)| x).collect();
            let f = objective.evaluate(&rest);
            evaluations += 1;
            match best {
                Some((_, b)) if b.better_than(&f, sense) => {}
                Some((_, b)) if !f.better_than(&b, sense) => {
                    ties += 1;
                    if rng.random_range(0..=ties) == 0 {
                        best = Some((pos, f));
                    }
                }
                _ => {
                    best = Some((pos, f));
                    ties = 0;
                }
            }
        }
        let (pos, f) = best.expect("draft always has a droppable gene");
        draft.remove(pos);
        last = Some(f);
    }
    let fitness = last.expect("distinct parents give an oversized draft");
    Ok((Chromosome { genes: draft, fitness }, evaluations))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replacement {
    DiscardedWorse,
    DiscardedDuplicate,
    Replaced { index: usize },
}

fn worst_index(population: &[Chromosome], sense: Sense) -> usize {
    let mut w = 0;
    for (k, c) in population.iter().enumerate().skip(1) {
        if population[w].fitness.better_than(&c.fitness, sense) {
            w = k;
        }
    }
    w
}

pub fn best_index(population: &[Chromosome], sense: Sense) -> usize {
    let mut b = 0;
    for (k, c) in population.iter().enumerate().skip(1) {
        if c.fitness.better_than(&population[b].fitness, sense) {
            b = k;
        }
    }
    b
}

/// Steady-state replacement of the worst member.
pub fn replace(population: &mut [Chromosome], candidate: Chromosome, sense: Sense) -> Replacement {
    let w = worst_index(population, sense);
    if population[w].fitness.better_than(&candidate.fitness, sense) {
        return Replacement::DiscardedWorse;
    }
    if population.iter().any(|c| c.genes == candidate.genes) {
        return Replacement::DiscardedDuplicate;
    }
    population[w] = candidate;
    Replacement::Replaced { index: w }
}

/// Per-iteration hook used by tests to watch the population evolve.
pub trait GaObserver {
    fn after_iteration(&mut self, _population: &[Chromosome], _outcome: Replacement) {}
}

impl GaObserver for () {}

pub fn run_ga(instance: &Instance, objective: &dyn Objective, config: &GaConfig) -> Result<SolverReport> {
    run_ga_observed(instance, objective, config, &mut ())
}

pub fn run_ga_observed(
    instance: &Instance,
    objective: &dyn Objective,
    config: &GaConfig,
    observer: &mut impl GaObserver,
) -> Result<SolverReport> {
    config.validate()?;
    let start = Instant::now();
    let sense = objective.sense();
    let (n, m) = (instance.n(), instance.m_servers());
    let (stall_limit, cap) = iteration_limits(n, m);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut population = init_population(instance, config, objective, &mut rng);
    let mut evaluations = population.len() as u64;
    let mut best = population[best_index(&population, sense)].clone();
    let mut trace = Vec::new();
    let mut stall = 0u64;
    let mut iterations = 0u64;

    let termination = loop {
        iterations += 1;
        let a = rng.random_range(0..population.len());
        let mut b = rng.random_range(0..population.len() - 1);
        if b >= a {
            b += 1;
        }
        let (candidate, spent) = generate_candidate(&population[a], &population[b], m, objective, &mut rng)?;
        evaluations += spent;
        let outcome = replace(&mut population, candidate, sense);
        observer.after_iteration(&population, outcome);

        let leader = &population[best_index(&population, sense)];
        if leader.fitness.better_than(&best.fitness, sense) {
            best = leader.clone();
            stall = 0;
        } else {
            stall += 1;
        }
        trace.push(best.fitness.value);

        if stall >= stall_limit {
            break Termination::Stagnation;
        }
        if iterations >= cap {
            break Termination::IterationCap;
        }
    };

    Ok(SolverReport {
        algorithm: Algorithm::Ga,
        seed: config.seed,
        sense,
        best: Solution::from_sorted(best.genes),
        best_fitness: best.fitness,
        trace,
        iterations,
        evaluations,
        termination,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
