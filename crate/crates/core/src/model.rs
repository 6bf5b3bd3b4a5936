//! Problem data and the queuing/allocation formulas evaluated on crisp slices.
//!
//! Node indices are 0-based throughout the library. Reports and CSV output
//! print them 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyOp, Slice, TriFuzzy};

/// Plain, unvalidated instance record. This is the on-disk JSON layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceData {
    pub n: usize,
    pub m_servers: usize,
    pub mql: f64,
    pub gamma: f64,
    pub logit_sensitivity: f64,
    pub idle_min: TriFuzzy,
    pub demand: Vec<TriFuzzy>,
    pub service: Vec<TriFuzzy>,
    pub distance: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benefit_weight: Option<Vec<Vec<f64>>>,
}

/// A validated problem instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceData", into = "InstanceData")]
pub struct Instance {
    n: usize,
    m_servers: usize,
    mql: f64,
    gamma: f64,
    logit_sensitivity: f64,
    idle_min: TriFuzzy,
    demand: Vec<TriFuzzy>,
    service: Vec<TriFuzzy>,
    // row-major n x n
    distance: Vec<f64>,
    benefit_weight: Option<Vec<f64>>,
}

fn square(name: &str, rows: &[Vec<f64>], n: usize) -> Result<Vec<f64>> {
    if rows.len() != n {
        let detail = if rows.len() < n {
            format!("row {} missing", rows.len() + 1)
        } else {
            format!("unexpected row {}", n + 1)
        };
        return Err(Error::InvalidInstance(format!(
            "{name}: expected {n} rows, found {} ({detail})",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{name} row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

impl TryFrom<InstanceData> for Instance {
    type Error = Error;

    fn try_from(d: InstanceData) -> Result<Self> {
        let n = d.n;
        if n < 2 {
            return Err(Error::InvalidInstance(format!("n must be at least 2, got {n}")));
        }
        if d.m_servers < 1 || d.m_servers >= n {
            return Err(Error::InvalidInstance(format!(
                "m_servers must satisfy 1 <= M < n, got M={} n={n}",
                d.m_servers
            )));
        }
        if !(d.mql > 0.0) || !d.mql.is_finite() {
            return Err(Error::InvalidInstance(format!("mql must be positive, got {}", d.mql)));
        }
        if !(0.0..=1.0).contains(&d.gamma) {
            return Err(Error::InvalidInstance(format!("gamma must lie in [0, 1], got {}", d.gamma)));
        }
        if !(d.logit_sensitivity > 0.0) || !d.logit_sensitivity.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "logit_sensitivity must be positive, got {}",
                d.logit_sensitivity
            )));
        }
        if d.idle_min.lo() < 0.0 || d.idle_min.hi() >= 1.0 {
            return Err(Error::InvalidInstance(format!(
                "idle_min must lie in [0, 1), got {:?}",
                <[f64; 3]>::from(d.idle_min)
            )));
        }
        for (name, v) in [("demand", &d.demand), ("service", &d.service)] {
            if v.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "{name}: expected {n} entries, found {}",
                    v.len()
                )));
            }
        }
        if let Some(i) = d.demand.iter().position(|t| t.lo() < 0.0) {
            return Err(Error::InvalidInstance(format!("demand of node {} is negative", i + 1)));
        }
        if let Some(i) = d.service.iter().position(|t| t.lo() <= 0.0) {
            return Err(Error::InvalidInstance(format!("service rate of node {} is not positive", i + 1)));
        }
        let distance = square("distance", &d.distance, n)?;
        for i in 0..n {
            if distance[i * n + i] != 0.0 {
                return Err(Error::InvalidInstance(format!("distance diagonal at node {} is nonzero", i + 1)));
            }
            for j in (i + 1)..n {
                let (a, b) = (distance[i * n + j], distance[j * n + i]);
                if a != b {
                    return Err(Error::InvalidInstance(format!(
                        "distance is asymmetric at ({}, {}): {a} vs {b}",
                        i + 1,
                        j + 1
                    )));
                }
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::InvalidInstance(format!(
                        "distance ({}, {}) must be positive, got {a}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let benefit_weight = match &d.benefit_weight {
            Some(rows) => {
                let w = square("benefit_weight", rows, n)?;
                if let Some(k) = w.iter().position(|x| !(*x >= 0.0) || !x.is_finite()) {
                    return Err(Error::InvalidInstance(format!(
                        "benefit_weight ({}, {}) must be a nonnegative real",
                        k / n + 1,
                        k % n + 1
                    )));
                }
                Some(w)
            }
            None => None,
        };
        Ok(Instance {
            n,
            m_servers: d.m_servers,
            mql: d.mql,
            gamma: d.gamma,
            logit_sensitivity: d.logit_sensitivity,
            idle_min: d.idle_min,
            demand: d.demand,
            service: d.service,
            distance,
            benefit_weight,
        })
    }
}

impl From<Instance> for InstanceData {
    fn from(x: Instance) -> Self {
        x.to_data()
    }
}

impl Instance {
    pub fn to_data(&self) -> InstanceData {
        let n = self.n;
        let rows = |flat: &[f64]| flat.chunks(n).map(<[f64]>::to_vec).collect::<Vec<_>>();
        InstanceData {
            n,
            m_servers: self.m_servers,
            mql: self.mql,
            gamma: self.gamma,
            logit_sensitivity: self.logit_sensitivity,
            idle_min: self.idle_min,
            demand: self.demand.clone(),
            service: self.service.clone(),
            distance: rows(&self.distance),
            benefit_weight: self.benefit_weight.as_deref().map(rows),
        }
    }

    /// Rebuilds the instance after editing its raw record.
    pub fn modify(&self, f: impl FnOnce(&mut InstanceData)) -> Result<Instance> {
        let mut data = self.to_data();
        f(&mut data);
        Instance::try_from(data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_servers(&self) -> usize {
        self.m_servers
    }

    pub fn mql(&self) -> f64 {
        self.mql
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn logit_sensitivity(&self) -> f64 {
        self.logit_sensitivity
    }

    pub fn idle_min(&self) -> TriFuzzy {
        self.idle_min
    }

    pub fn demand(&self) -> &[TriFuzzy] {
        &self.demand
    }

    pub fn service(&self) -> &[TriFuzzy] {
        &self.service
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distance[i * self.n + j]
    }

    pub fn distance_row(&self, i: usize) -> &[f64] {
        &self.distance[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        match &self.benefit_weight {
            Some(w) => w[i * self.n + j],
            None => 1.0,
        }
    }

    pub fn max_weight(&self) -> f64 {
        match &self.benefit_weight {
            Some(w) => w.iter().copied().fold(0.0, f64::max),
            None => 1.0,
        }
    }

    /// True when every fuzzy input is degenerate (`lo = mid = hi`).
    pub fn is_crisp(&self) -> bool {
        self.idle_min.is_crisp()
            && self.demand.iter().all(TriFuzzy::is_crisp)
            && self.service.iter().all(TriFuzzy::is_crisp)
    }
}

/// A location decision: exactly `m_servers` distinct nodes, kept sorted.
///
/// Serialized as an ascending array of 1-based node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Solution(Vec<usize>);

impl TryFrom<Vec<usize>> for Solution {
    type Error = Error;

    fn try_from(one_based: Vec<usize>) -> Result<Self> {
        if one_based.contains(&0) {
            return Err(Error::InvalidSolution("facility indices are 1-based".into()));
        }
        let mut open: Vec<usize> = one_based.into_iter().map(|j| j - 1).collect();
        open.sort_unstable();
        if open.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSolution("duplicate facility index".into()));
        }
        Ok(Solution(open))
    }
}

impl From<Solution> for Vec<usize> {
    fn from(s: Solution) -> Self {
        s.one_based()
    }
}

impl Solution {
    pub fn new(instance: &Instance, mut open: Vec<usize>) -> Result<Self> {
        open.sort_unstable();
        if open.len() != instance.m_servers() {
            return Err(Error::InvalidSolution(format!(
                "expected {} facilities, got {}",
                instance.m_servers(),
                open.len()
            )));
        }
        if open.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSolution("duplicate facility index".into()));
        }
        if let Some(&j) = open.iter().find(|&&j| j >= instance.n()) {
            return Err(Error::InvalidSolution(format!("facility index {j} out of range")));
        }
        Ok(Solution(open))
    }

    /// Wraps an already sorted, distinct index set without checking its size.
    pub(crate) fn from_sorted(open: Vec<usize>) -> Self {
        debug_assert!(open.windows(2).all(|w| w[0] < w[1]));
        Solution(open)
    }

    pub fn open(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// 1-based indices, the form used in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }
}

impl std::ops::Deref for Solution {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// Customer-to-facility choice probabilities for one open set.
///
/// Stored compactly as `n` rows over the open facilities only; closed
/// facilities have probability zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    open: Vec<usize>,
    n: usize,
    p: Vec<f64>,
}

impl Allocation {
    pub fn open(&self) -> &[usize] {
        &self.open
    }

    /// Probability over open facilities for demand node `i`, aligned with `open()`.
    pub fn row(&self, i: usize) -> &[f64] {
        let k = self.open.len();
        &self.p[i * k..(i + 1) * k]
    }

    /// `p_ij` with `j` a node index; zero for closed nodes.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self.open.iter().position(|&o| o == j) {
            Some(c) => self.row(i)[c],
            None => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Logit choice probabilities `p_ij ∝ exp(-a d_ij)` over the open facilities.
pub fn logit_allocation(instance: &Instance, open: &[usize]) -> Result<Allocation> {
    if open.is_empty() {
        return Err(Error::Domain("logit allocation over an empty open set".into()));
    }
    let a = instance.logit_sensitivity();
    let n = instance.n();
    let k = open.len();
    let mut p = vec![0.0; n * k];
    for i in 0..n {
        let row = instance.distance_row(i);
        let shift = open.iter().map(|&j| row[j]).fold(f64::INFINITY, f64::min);
        let out = &mut p[i * k..(i + 1) * k];
        let mut total = 0.0;
        for (slot, &j) in out.iter_mut().zip(open) {
            *slot = (-a * (row[j] - shift)).exp();
            total += *slot;
        }
        for slot in out.iter_mut() {
            *slot /= total;
        }
    }
    Ok(Allocation { open: open.to_vec(), n, p })
}

/// Aggregated fuzzy arrival rate at each open facility, aligned with `allocation.open()`.
pub fn aggregate_demand(instance: &Instance, allocation: &Allocation) -> Vec<TriFuzzy> {
    let k = allocation.open().len();
    let mut acc = vec![[0.0f64; 3]; k];
    for (i, lam) in instance.demand().iter().enumerate() {
        for (c, &pij) in allocation.row(i).iter().enumerate() {
            acc[c][0] += lam.lo() * pij;
            acc[c][1] += lam.mid() * pij;
            acc[c][2] += lam.hi() * pij;
        }
    }
    // nonnegative weights keep each sum ordered
    acc.into_iter().map(|[lo, mid, hi]| TriFuzzy::sorted(lo, mid, hi)).collect()
}

/// Steady-state M/M/1 quantities, or the marker for an unstable queue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mm1 {
    Stable { p0: f64, lq: f64 },
    Unstable,
}

/// Idle probability and expected waiting-line length of an M/M/1 queue.
pub fn mm1_metrics(lambda: f64, mu: f64) -> Result<Mm1> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("service rate must be positive, got {mu}")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("arrival rate must be nonnegative, got {lambda}")));
    }
    if lambda >= mu {
        return Ok(Mm1::Unstable);
    }
    Ok(Mm1::Stable { p0: 1.0 - lambda / mu, lq: lambda * lambda / (mu * (mu - lambda)) })
}

/// Probability that an arriving customer joins a queue of expected length
/// `lq`: falls linearly from 1 at an empty queue to 0 at `mql`.
pub fn join_probability(lq: f64, mql: f64) -> f64 {
    (1.0 - lq / mql).clamp(0.0, 1.0)
}

/// Crisp queue state of one open facility at one slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceQueue {
    pub idle_prob: f64,
    pub lq: f64,
    pub join: f64,
}

/// Per-facility queue figures for an open set.
#[derive(Debug, Clone, PartialEq)]
pub struct FacilityMetrics {
    pub facility: usize,
    pub agg_demand: TriFuzzy,
    pub occupancy: TriFuzzy,
    /// `None` where the slice is unstable (`λ̄ >= μ`).
    pub slices: [Option<SliceQueue>; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueueMetrics {
    pub facilities: Vec<FacilityMetrics>,
}

impl QueueMetrics {
    pub fn is_stable(&self) -> bool {
        self.facilities.iter().all(|f| f.slices.iter().all(Option::is_some))
    }
}

/// Marker for an open facility whose queue does not reach steady state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unstable {
    pub facility: usize,
    pub slice: Slice,
}

fn slice_idx(s: Slice) -> usize {
    match s {
        Slice::Lo => 0,
        Slice::Mid => 1,
        Slice::Hi => 2,
    }
}

/// Allocation, aggregated demand and queue state computed once per open set.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub allocation: Allocation,
    pub metrics: QueueMetrics,
}

impl Evaluation {
    pub fn new(instance: &Instance, open: &[usize]) -> Result<Self> {
        let allocation = logit_allocation(instance, open)?;
        let agg = aggregate_demand(instance, &allocation);
        let mut facilities = Vec::with_capacity(open.len());
        for (&j, lam) in open.iter().zip(agg) {
            let mu = instance.service()[j];
            let occupancy = lam.combine(mu, FuzzyOp::Div)?;
            let mut slices = [None; 3];
            for s in Slice::ALL {
                if let Mm1::Stable { p0, lq } = mm1_metrics(lam.at(s), mu.at(s))? {
                    slices[slice_idx(s)] =
                        Some(SliceQueue { idle_prob: p0, lq, join: join_probability(lq, instance.mql()) });
                }
            }
            facilities.push(FacilityMetrics { facility: j, agg_demand: lam, occupancy, slices });
        }
        Ok(Evaluation { allocation, metrics: QueueMetrics { facilities } })
    }

    /// Queue-discounted benefit at one slice of the fuzzy data.
    pub fn objective(&self, instance: &Instance, slice: Slice) -> std::result::Result<f64, Unstable> {
        let si = slice_idx(slice);
        // per-facility factor (1 - ρ) + join·ρ
        let mut factor = Vec::with_capacity(self.metrics.facilities.len());
        for f in &self.metrics.facilities {
            let q = f.slices[si].ok_or(Unstable { facility: f.facility, slice })?;
            let rho = 1.0 - q.idle_prob;
            factor.push((1.0 - rho) + q.join * rho);
        }
        let open = self.allocation.open();
        let mut total = 0.0;
        for (i, lam) in instance.demand().iter().enumerate() {
            let li = lam.at(slice);
            for ((&j, &pij), &fj) in open.iter().zip(self.allocation.row(i)).zip(&factor) {
                total += instance.weight(i, j) * li * pij * fj;
            }
        }
        Ok(total)
    }
}

/// Crisp objective of an open set with every fuzzy input taken at `slice`.
///
/// `Ok(Err(Unstable))` marks an open facility with `λ̄ >= μ` at that slice.
pub fn crisp_objective_slice(
    instance: &Instance,
    open: &[usize],
    slice: Slice,
) -> Result<std::result::Result<f64, Unstable>> {
    Ok(Evaluation::new(instance, open)?.objective(instance, slice))
}

/// `λ̄ - μ(1 - β)` when positive, else zero.
pub fn capacity_excess(lambda: f64, mu: f64, beta: f64) -> f64 {
    (lambda - mu * (1.0 - beta)).max(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityCheck {
    pub feasible: bool,
    /// `(facility, excess)` for every violated facility.
    pub violations: Vec<(usize, f64)>,
}

/// Crisp occupancy constraint `λ̄_j <= μ_j (1 - β)` at one slice.
pub fn capacity_feasible_slice(instance: &Instance, open: &[usize], slice: Slice) -> Result<CapacityCheck> {
    let allocation = logit_allocation(instance, open)?;
    let agg = aggregate_demand(instance, &allocation);
    let beta = instance.idle_min().at(slice);
    let violations: Vec<(usize, f64)> = open
        .iter()
        .zip(&agg)
        .filter_map(|(&j, lam)| {
            let mu = instance.service()[j].at(slice);
            let lam = lam.at(slice);
            (lam > mu * (1.0 - beta)).then(|| (j, capacity_excess(lam, mu, beta)))
        })
        .collect();
    Ok(CapacityCheck { feasible: violations.is_empty(), violations })
}
