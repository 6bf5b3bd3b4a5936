//! The fitness interface shared by every solver.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Result of evaluating one open set.
///
/// For a feasible set `value` is the objective itself. For an infeasible set
/// it is the penalty `-(1 + relative violation)`, so a larger value is always
/// a smaller violation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fitness {
    pub feasible: bool,
    pub value: f64,
}

impl Fitness {
    pub fn feasible(value: f64) -> Self {
        Fitness { feasible: true, value }
    }

    pub fn penalty(relative_violation: f64) -> Self {
        Fitness { feasible: false, value: -(1.0 + relative_violation) }
    }

    /// Total order used by the solvers: any feasible set beats any
    /// infeasible one; feasible sets compare by `sense`, infeasible ones by
    /// violation.
    pub fn compare(&self, other: &Fitness, sense: Sense) -> Ordering {
        match (self.feasible, other.feasible) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.value.total_cmp(&other.value),
            (true, true) => match sense {
                Sense::Maximize => self.value.total_cmp(&other.value),
                Sense::Minimize => other.value.total_cmp(&self.value),
            },
        }
    }

    pub fn better_than(&self, other: &Fitness, sense: Sense) -> bool {
        self.compare(other, sense) == Ordering::Greater
    }
}

/// Something a solver can optimize over open sets.
///
/// `evaluate` accepts open sets of any nonempty size: the genetic algorithm
/// scores oversized drafts while shrinking them.
pub trait Objective: Sync {
    fn sense(&self) -> Sense;

    fn evaluate(&self, open: &[usize]) -> Fitness;
}

impl<F> Objective for (Sense, F)
where
    F: Fn(&[usize]) -> Fitness + Sync,
{
    fn sense(&self) -> Sense {
        self.0
    }

    fn evaluate(&self, open: &[usize]) -> Fitness {
        (self.1)(open)
    }
}
