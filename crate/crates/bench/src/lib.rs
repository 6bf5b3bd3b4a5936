//! Fixtures shared by the criterion benches.

use fuzzyloc_core::maximin::estimate_bounds;
use fuzzyloc_core::protocol::bound_seeds;
use fuzzyloc_core::{generate_instance, AcoConfig, GeneratorParams, Instance, MaximinContext, Solver};

/// Light-load instance with bounds estimated by the default colony.
pub fn fixture(n: usize, m: usize, seed: u64) -> (Instance, MaximinContext) {
    let inst = generate_instance(&GeneratorParams::light_load(n, m, seed)).expect("valid generator parameters");
    let ctx = context(&inst, seed);
    (inst, ctx)
}

pub fn context(inst: &Instance, seed: u64) -> MaximinContext {
    let (ctx, _) = estimate_bounds(inst, &Solver::Aco(AcoConfig::default()), bound_seeds(seed)).expect("bound runs");
    ctx
}
