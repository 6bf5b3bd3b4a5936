//! Fuzzy objective, spread decomposition, membership functions and the
//! maximin satisfaction level.
//!
//! A fuzzy objective `Z = (lo, mid, hi)` is split into three crisp goals:
//! keep the left spread `mid - lo` small, push the center `mid` up, and push
//! the right spread `hi - mid` up. Each goal is mapped to a membership degree
//! in `[0, 1]` using bounds estimated by six preliminary runs, and the fitness
//! of the final run is the smallest of the three degrees.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::fuzzy::{Slice, TriFuzzy};
use crate::model::{Evaluation, Instance, Unstable};
use crate::objective::{Fitness, Objective, Sense};
use crate::report::SolverReport;
use crate::solver::Solver;

/// The three crisp goals derived from a fuzzy objective value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadComponents {
    /// `mid - lo`, minimized.
    pub z1: f64,
    /// `mid`, maximized.
    pub z2: f64,
    /// `hi - mid`, maximized.
    pub z3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Z1,
    Z2,
    Z3,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Z1, Component::Z2, Component::Z3];
}

impl SpreadComponents {
    pub fn get(&self, c: Component) -> f64 {
        match c {
            Component::Z1 => self.z1,
            Component::Z2 => self.z2,
            Component::Z3 => self.z3,
        }
    }
}

pub fn spread_components(z: TriFuzzy) -> SpreadComponents {
    SpreadComponents { z1: z.mid() - z.lo(), z2: z.mid(), z3: z.hi() - z.mid() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

impl Bounds {
    pub fn is_degenerate(&self) -> bool {
        self.min == self.max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MetaheuristicEstimated,
    OracleExact,
}

/// Bounds of each spread goal over the feasible region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximinContext {
    pub z1: Bounds,
    pub z2: Bounds,
    pub z3: Bounds,
    pub provenance: Provenance,
    /// False when the bound runs never reached a feasible location set; the
    /// bounds are then placeholders and every evaluation is a penalty.
    pub feasible_found: bool,
}

impl MaximinContext {
    pub fn bounds(&self, c: Component) -> Bounds {
        match c {
            Component::Z1 => self.z1,
            Component::Z2 => self.z2,
            Component::Z3 => self.z3,
        }
    }

    pub fn degenerate_components(&self) -> Vec<Component> {
        Component::ALL.into_iter().filter(|&c| self.bounds(c).is_degenerate()).collect()
    }

    /// Short content hash used to tie reports to the context they were scored under.
    pub fn id(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("context serializes");
        hex::encode(&Sha256::digest(&bytes)[..6])
    }

    /// Builds a context from spread values of feasible location sets.
    pub fn from_samples<'a>(
        samples: impl IntoIterator<Item = &'a SpreadComponents>,
        provenance: Provenance,
    ) -> MaximinContext {
        let mut acc: Option<[Bounds; 3]> = None;
        for s in samples {
            let b = acc.get_or_insert([
                Bounds { min: s.z1, max: s.z1 },
                Bounds { min: s.z2, max: s.z2 },
                Bounds { min: s.z3, max: s.z3 },
            ]);
            for (slot, c) in b.iter_mut().zip(Component::ALL) {
                slot.min = slot.min.min(s.get(c));
                slot.max = slot.max.max(s.get(c));
            }
        }
        match acc {
            Some([z1, z2, z3]) => MaximinContext { z1, z2, z3, provenance, feasible_found: true },
            None => {
                let zero = Bounds { min: 0.0, max: 0.0 };
                MaximinContext { z1: zero, z2: zero, z3: zero, provenance, feasible_found: false }
            }
        }
    }
}

/// Objective value `Z = (lo, mid, hi)` built from the three crisp slices,
/// sorted ascending.
pub fn fuzzy_objective(instance: &Instance, open: &[usize]) -> Result<std::result::Result<TriFuzzy, Unstable>> {
    let eval = Evaluation::new(instance, open)?;
    Ok(fuzzy_objective_of(instance, &eval))
}

fn fuzzy_objective_of(instance: &Instance, eval: &Evaluation) -> std::result::Result<TriFuzzy, Unstable> {
    let lo = eval.objective(instance, Slice::Lo)?;
    let mid = eval.objective(instance, Slice::Mid)?;
    let hi = eval.objective(instance, Slice::Hi)?;
    Ok(TriFuzzy::sorted(lo, mid, hi))
}

fn ramp(x: f64, from: f64, to: f64) -> f64 {
    if from == to {
        return 1.0;
    }
    ((x - from) / (to - from)).clamp(0.0, 1.0)
}

/// Membership degrees of the three goals. A degenerate bound yields 1.
pub fn membership_values(c: &SpreadComponents, ctx: &MaximinContext) -> (f64, f64, f64) {
    (
        ramp(c.z1, ctx.z1.max, ctx.z1.min),
        ramp(c.z2, ctx.z2.min, ctx.z2.max),
        ramp(c.z3, ctx.z3.min, ctx.z3.max),
    )
}

pub fn maximin_level(mu1: f64, mu2: f64, mu3: f64) -> f64 {
    mu1.min(mu2).min(mu3)
}

/// Crisp threshold for `T(ρ ≤ 1 - β) >= γ`. The fuzzy right-hand side is
/// `B = (1 - β.hi, 1 - β.mid, 1 - β.lo)`; the test reads
/// `ρ.mid <= B.hi - γ (B.hi - B.mid)`.
pub fn capacity_threshold(idle_min: TriFuzzy, gamma: f64) -> f64 {
    let b_mid = 1.0 - idle_min.mid();
    let b_hi = 1.0 - idle_min.lo();
    // blend of the endpoints, exact at gamma = 0 and gamma = 1
    (1.0 - gamma) * b_hi + gamma * b_mid
}

/// Truth-thresholded comparison of a fuzzy occupancy against `1 - β`.
pub fn occupancy_within(occupancy: TriFuzzy, idle_min: TriFuzzy, gamma: f64) -> bool {
    occupancy.mid() <= capacity_threshold(idle_min, gamma)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyCapacity {
    pub feasible: bool,
    pub threshold: f64,
    /// `(facility, threshold - ρ.mid)` per open facility.
    pub margins: Vec<(usize, f64)>,
}

pub fn fuzzy_capacity_feasible(instance: &Instance, open: &[usize]) -> Result<FuzzyCapacity> {
    let eval = Evaluation::new(instance, open)?;
    Ok(fuzzy_capacity_of(instance, &eval))
}

fn fuzzy_capacity_of(instance: &Instance, eval: &Evaluation) -> FuzzyCapacity {
    let threshold = capacity_threshold(instance.idle_min(), instance.gamma());
    let margins: Vec<(usize, f64)> = eval
        .metrics
        .facilities
        .iter()
        .map(|f| (f.facility, threshold - f.occupancy.mid()))
        .collect();
    FuzzyCapacity { feasible: margins.iter().all(|&(_, m)| m >= 0.0), threshold, margins }
}

/// Everything the fitness functions need about one open set.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    /// Spread goals, present only for feasible sets.
    pub spread: Option<SpreadComponents>,
    pub objective: Option<TriFuzzy>,
    pub capacity: FuzzyCapacity,
    pub stable: bool,
    /// Capacity excess relative to the threshold, plus the relative
    /// overload of every unstable slice.
    pub relative_violation: f64,
}

impl Assessment {
    pub fn feasible(&self) -> bool {
        self.spread.is_some()
    }
}

pub fn assess(instance: &Instance, open: &[usize]) -> Result<Assessment> {
    let eval = Evaluation::new(instance, open)?;
    let capacity = fuzzy_capacity_of(instance, &eval);
    let objective = fuzzy_objective_of(instance, &eval).ok();
    let stable = objective.is_some();

    let mut violation: f64 = capacity.margins.iter().map(|&(_, m)| (-m).max(0.0)).sum::<f64>()
        / capacity.threshold.max(f64::MIN_POSITIVE);
    for f in &eval.metrics.facilities {
        let mu = instance.service()[f.facility];
        for s in Slice::ALL {
            violation += (f.agg_demand.at(s) / mu.at(s) - 1.0).max(0.0);
        }
    }
    let spread = match objective {
        Some(z) if capacity.feasible => Some(spread_components(z)),
        _ => None,
    };
    Ok(Assessment { spread, objective, capacity, stable, relative_violation: violation })
}

/// Maximin satisfaction of an open set, or the penalty `-(1 + violation)`
/// when the set breaks the capacity constraint or overloads a queue.
pub fn evaluate(instance: &Instance, open: &[usize], ctx: &MaximinContext) -> Result<f64> {
    Ok(maximin_fitness(&assess(instance, open)?, ctx).value)
}

fn maximin_fitness(a: &Assessment, ctx: &MaximinContext) -> Fitness {
    match &a.spread {
        Some(c) => {
            let (m1, m2, m3) = membership_values(c, ctx);
            Fitness::feasible(maximin_level(m1, m2, m3))
        }
        None => Fitness::penalty(a.relative_violation),
    }
}

/// Fitness of the final run: the maximin satisfaction level.
#[derive(Debug, Clone, Copy)]
pub struct MaximinObjective<'a> {
    pub instance: &'a Instance,
    pub context: &'a MaximinContext,
}

impl Objective for MaximinObjective<'_> {
    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn evaluate(&self, open: &[usize]) -> Fitness {
        let a = assess(self.instance, open).expect("nonempty open set");
        maximin_fitness(&a, self.context)
    }
}

/// Fitness of a bound run: one spread goal, minimized or maximized.
#[derive(Debug, Clone, Copy)]
pub struct BoundObjective<'a> {
    pub instance: &'a Instance,
    pub component: Component,
    pub sense: Sense,
}

impl Objective for BoundObjective<'_> {
    fn sense(&self) -> Sense {
        self.sense
    }

    fn evaluate(&self, open: &[usize]) -> Fitness {
        let a = assess(self.instance, open).expect("nonempty open set");
        match &a.spread {
            Some(c) => Fitness::feasible(c.get(self.component)),
            None => Fitness::penalty(a.relative_violation),
        }
    }
}

/// The six bound runs in protocol order.
pub const BOUND_RUNS: [(Component, Sense); 6] = [
    (Component::Z1, Sense::Minimize),
    (Component::Z1, Sense::Maximize),
    (Component::Z2, Sense::Minimize),
    (Component::Z2, Sense::Maximize),
    (Component::Z3, Sense::Minimize),
    (Component::Z3, Sense::Maximize),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRun {
    pub component: Component,
    pub sense: Sense,
    pub report: SolverReport,
}

/// Runs `solver` six times, once per (goal, direction), and collects the
/// bounds from the spread values of the feasible winners.
pub fn estimate_bounds(
    instance: &Instance,
    solver: &Solver,
    seeds: [u64; 6],
) -> Result<(MaximinContext, Vec<BoundRun>)> {
    let mut runs = Vec::with_capacity(6);
    let mut samples = Vec::with_capacity(6);
    for (&(component, sense), seed) in BOUND_RUNS.iter().zip(seeds) {
        let objective = BoundObjective { instance, component, sense };
        let report = solver.run(instance, &objective, seed)?;
        if report.best_fitness.feasible {
            if let Some(c) = assess(instance, report.best.open())?.spread {
                samples.push(c);
            }
        }
        runs.push(BoundRun { component, sense, report });
    }
    let provenance = match solver {
        Solver::Exhaustive { .. } => Provenance::OracleExact,
        _ => Provenance::MetaheuristicEstimated,
    };
    Ok((MaximinContext::from_samples(&samples, provenance), runs))
}
