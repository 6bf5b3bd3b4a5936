//! Random instance generation, the bundled 20-node fixture, and instance files.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fuzzy::TriFuzzy;
use crate::model::{Instance, InstanceData};

const TABLE1_JSON: &str = include_str!("../fixtures/table1.json");

/// SHA-256 of `fixtures/table1.json`.
pub const TABLE1_SHA256: &str = "decb43ecf8b6abbe0f416706c6260fea26f2a17cae1767ac0fdb86558553917e";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n: usize,
    pub m_servers: usize,
    pub demand_lo_range: (u32, u32),
    /// `(mid - lo, hi - lo)`
    pub demand_offsets: (f64, f64),
    pub service_lo_range: (u32, u32),
    pub service_offsets: (f64, f64),
    pub distance_range: (u32, u32),
    pub idle_min: TriFuzzy,
    pub mql: f64,
    pub gamma: f64,
    pub logit_sensitivity: f64,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(n: usize, m_servers: usize, seed: u64) -> Self {
        GeneratorParams {
            n,
            m_servers,
            demand_lo_range: (4, 80),
            demand_offsets: (50.0, 100.0),
            service_lo_range: (144, 190),
            service_offsets: (50.0, 100.0),
            distance_range: (1, 35),
            idle_min: TriFuzzy::new(0.1, 0.15, 0.2).expect("ordered"),
            mql: 25.0,
            gamma: 0.5,
            logit_sensitivity: 0.5,
            seed,
        }
    }

    /// Lower demand (lo in 4..40, offsets 10 and 20) so that most location
    /// sets of small instances are feasible. The default ranges overload
    /// every queue when `n` is small.
    pub fn light_load(n: usize, m_servers: usize, seed: u64) -> Self {
        GeneratorParams { demand_lo_range: (4, 40), demand_offsets: (10.0, 20.0), ..Self::new(n, m_servers, seed) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        if self.n < 2 || self.m_servers < 1 || self.m_servers >= self.n {
            return bad(format!("need 1 <= M < n, got M={} n={}", self.m_servers, self.n));
        }
        for (name, (lo, hi)) in [
            ("demand", self.demand_lo_range),
            ("service", self.service_lo_range),
            ("distance", self.distance_range),
        ] {
            if lo > hi {
                return bad(format!("{name} range [{lo}, {hi}] is empty"));
            }
        }
        if self.service_lo_range.0 == 0 {
            return bad("service rates must be positive".into());
        }
        if self.distance_range.0 == 0 {
            return bad("off-diagonal distances must be positive".into());
        }
        for (name, (a, b)) in [("demand", self.demand_offsets), ("service", self.service_offsets)] {
            if !(a > 0.0 && b > a) {
                return bad(format!("{name} offsets must be positive and increasing, got ({a}, {b})"));
            }
        }
        Ok(())
    }
}

fn draw(rng: &mut impl Rng, (lo, hi): (u32, u32)) -> f64 {
    rng.random_range(RangeInclusive::new(lo, hi)) as f64
}

/// Draws an instance. Each fuzzy rate is a uniform integer base `lo` with
/// `mid = lo + offsets.0` and `hi = lo + offsets.1`; distances are uniform
/// integers on the upper triangle, mirrored.
pub fn generate_instance(params: &GeneratorParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;
    let fuzzy = |rng: &mut ChaCha8Rng, range, (a, b): (f64, f64)| {
        let lo = draw(rng, range);
        TriFuzzy::new(lo, lo + a, lo + b).expect("offsets are increasing")
    };
    let demand = (0..n).map(|_| fuzzy(&mut rng, params.demand_lo_range, params.demand_offsets)).collect();
    let service = (0..n).map(|_| fuzzy(&mut rng, params.service_lo_range, params.service_offsets)).collect();
    let mut distance = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = draw(&mut rng, params.distance_range);
            distance[i][j] = d;
            distance[j][i] = d;
        }
    }
    Instance::try_from(InstanceData {
        n,
        m_servers: params.m_servers,
        mql: params.mql,
        gamma: params.gamma,
        logit_sensitivity: params.logit_sensitivity,
        idle_min: params.idle_min,
        demand,
        service,
        distance,
        benefit_weight: None,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The bundled 20-node instance (M = 5).
pub fn load_table1() -> Result<Instance> {
    let found = sha256_hex(TABLE1_JSON.as_bytes());
    if found != TABLE1_SHA256 {
        return Err(Error::Checksum { expected: TABLE1_SHA256.into(), found });
    }
    parse_instance(TABLE1_JSON)
}

/// Raw bytes of the bundled fixture.
pub fn table1_json() -> &'static str {
    TABLE1_JSON
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let data: InstanceData = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    Instance::try_from(data)
}

fn fmt_row(out: &mut String, values: &[f64]) {
    out.push('[');
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v:?}");
    }
    out.push(']');
}

fn fmt_rows(out: &mut String, name: &str, rows: &[Vec<f64>], last: bool) {
    let _ = writeln!(out, "  \"{name}\": [");
    for (k, r) in rows.iter().enumerate() {
        out.push_str("    ");
        fmt_row(out, r);
        out.push_str(if k + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str(if last { "  ]\n" } else { "  ],\n" });
}

/// Instance file text: one JSON document, one matrix row per line.
pub fn instance_to_json(instance: &Instance) -> String {
    let d = instance.to_data();
    let tri = |v: &[TriFuzzy]| v.iter().map(|t| <[f64; 3]>::from(*t).to_vec()).collect::<Vec<_>>();
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"n\": {},", d.n);
    let _ = writeln!(out, "  \"m_servers\": {},", d.m_servers);
    let _ = writeln!(out, "  \"mql\": {:?},", d.mql);
    let _ = writeln!(out, "  \"gamma\": {:?},", d.gamma);
    let _ = writeln!(out, "  \"logit_sensitivity\": {:?},", d.logit_sensitivity);
    out.push_str("  \"idle_min\": ");
    fmt_row(&mut out, &<[f64; 3]>::from(d.idle_min));
    out.push_str(",\n");
    fmt_rows(&mut out, "demand", &tri(&d.demand), false);
    fmt_rows(&mut out, "service", &tri(&d.service), false);
    fmt_rows(&mut out, "distance", &d.distance, d.benefit_weight.is_none());
    if let Some(w) = &d.benefit_weight {
        fmt_rows(&mut out, "benefit_weight", w, true);
    }
    out.push_str("}\n");
    out
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, instance_to_json(instance))?;
    Ok(())
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}
